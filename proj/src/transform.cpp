#include "mildflow/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "mildflow/errors.hpp"

namespace mildflow {
namespace {

// Planning is not thread-safe in FFTW; execution with the new-array interface
// is. Plans are made once per (dim, n, sign) under a lock and reused.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(dim, n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::size_t size = 1;
        for (int a = 0; a < dim; ++a) size *= static_cast<std::size_t>(n);
        std::vector<Complex> in(size), out(size);
        int dims[3] = {n, n, n};
        fftw_plan plan = fftw_plan_dft(dim, dims, reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void execute(const SpectralGrid& grid, int sign, std::span<const Complex> in, std::span<Complex> out) {
    fftw_plan plan = plan_cache().get(grid.dim(), grid.n(), sign);
    // FFTW does not write through `in` for out-of-place complex transforms.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

std::vector<Complex> to_physical_complex(const ScalarField& f) {
    std::vector<Complex> out(f.size());
    execute(f.grid(), FFTW_BACKWARD, f.coeffs(), out);
    return out;
}

std::vector<double> to_physical(const ScalarField& f) {
    const std::vector<Complex> values = to_physical_complex(f);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
    return out;
}

ScalarField from_physical(const SpectralGrid& grid, std::span<const double> samples) {
    if (samples.size() != grid.size()) {
        throw ValidationError("sample array has " + std::to_string(samples.size()) +
                              " entries, grid expects " + std::to_string(grid.size()));
    }
    std::vector<Complex> in(samples.begin(), samples.end());
    std::vector<Complex> out(grid.size());
    execute(grid, FFTW_FORWARD, in, out);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (Complex& c : out) c *= scale;
    return ScalarField(grid, std::move(out));
}

}  // namespace mildflow
