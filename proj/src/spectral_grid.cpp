#include "mildflow/spectral_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mildflow/errors.hpp"

namespace mildflow {

struct SpectralGrid::Tables {
    std::array<std::vector<double>, 3> k_axis;
    std::vector<double> k_squared;
    std::vector<std::uint8_t> nyquist;
    std::vector<std::uint8_t> dealias;
    std::vector<double> unique_k_squared;
    std::vector<std::uint32_t> shell_index;
};

namespace {

int signed_mode(std::size_t position, int n) {
    const int i = static_cast<int>(position);
    return i < n / 2 ? i : i - n;
}

}  // namespace

SpectralGrid::SpectralGrid(int dim, int n_per_axis, double box_length)
    : dim_(dim), n_(n_per_axis), box_length_(box_length) {
    if (dim != 2 && dim != 3) {
        throw ValidationError("grid dimension must be 2 or 3, got " + std::to_string(dim));
    }
    if (n_per_axis < 2 || n_per_axis % 2 != 0) {
        throw ValidationError("points per axis must be even and positive, got " +
                              std::to_string(n_per_axis));
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
        throw ValidationError("box length must be positive and finite");
    }
    size_ = 1;
    for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n_per_axis);
    cell_volume_ = std::pow(box_length / n_per_axis, dim);

    auto tables = std::make_shared<Tables>();
    const double unit = wavenumber_unit();
    const int keep = (n_per_axis - 1) / 3;
    for (int a = 0; a < dim; ++a) tables->k_axis[a].resize(size_);
    tables->k_squared.resize(size_);
    tables->nyquist.resize(size_);
    tables->dealias.resize(size_);
    for (std::size_t flat = 0; flat < size_; ++flat) {
        const ModeIndex m = mode_of(flat);
        double k2 = 0.0;
        bool nyq = false;
        bool kept = true;
        for (int a = 0; a < dim; ++a) {
            const double k = unit * m[a];
            tables->k_axis[a][flat] = k;
            k2 += k * k;
            nyq = nyq || m[a] == -n_per_axis / 2;
            kept = kept && std::abs(m[a]) <= keep;
        }
        tables->k_squared[flat] = k2;
        tables->nyquist[flat] = nyq ? 1 : 0;
        tables->dealias[flat] = kept ? 1 : 0;
    }

    // |k|^2 is unit^2 times an integer, so shells are identified exactly by
    // the integer |m|^2.
    std::vector<long> m2(size_);
    for (std::size_t flat = 0; flat < size_; ++flat) {
        const ModeIndex m = mode_of(flat);
        long s = 0;
        for (int a = 0; a < dim; ++a) s += static_cast<long>(m[a]) * m[a];
        m2[flat] = s;
    }
    std::vector<long> distinct(m2);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    tables->unique_k_squared.resize(distinct.size());
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        tables->unique_k_squared[i] = unit * unit * static_cast<double>(distinct[i]);
    }
    tables->shell_index.resize(size_);
    for (std::size_t flat = 0; flat < size_; ++flat) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(), m2[flat]);
        tables->shell_index[flat] = static_cast<std::uint32_t>(it - distinct.begin());
    }
    tables_ = std::move(tables);
}

double SpectralGrid::volume() const noexcept { return std::pow(box_length_, dim_); }

double SpectralGrid::wavenumber_unit() const noexcept {
    return 2.0 * std::numbers::pi / box_length_;
}

std::span<const double> SpectralGrid::k_axis(int axis) const {
    if (axis < 0 || axis >= dim_) throw ValidationError("axis out of range");
    return tables_->k_axis[axis];
}

std::span<const double> SpectralGrid::k_squared() const { return tables_->k_squared; }
std::span<const std::uint8_t> SpectralGrid::nyquist() const { return tables_->nyquist; }
std::span<const std::uint8_t> SpectralGrid::dealias_mask() const { return tables_->dealias; }
std::span<const double> SpectralGrid::unique_k_squared() const {
    return tables_->unique_k_squared;
}
std::span<const std::uint32_t> SpectralGrid::shell_index() const { return tables_->shell_index; }

ModeIndex SpectralGrid::mode_of(std::size_t flat) const {
    ModeIndex m{0, 0, 0};
    const auto n = static_cast<std::size_t>(n_);
    for (int a = dim_ - 1; a >= 0; --a) {
        m[a] = signed_mode(flat % n, n_);
        flat /= n;
    }
    return m;
}

std::size_t SpectralGrid::flat_index(const ModeIndex& m) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
        if (m[a] < -n_ / 2 || m[a] >= n_ / 2) {
            throw ValidationError("mode component " + std::to_string(m[a]) +
                                  " outside [-n/2, n/2)");
        }
        const int position = m[a] < 0 ? m[a] + n_ : m[a];
        flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(position);
    }
    return flat;
}

std::size_t SpectralGrid::partner_index(std::size_t flat) const {
    const auto n = static_cast<std::size_t>(n_);
    std::size_t partner = 0;
    std::size_t stride = 1;
    for (int a = dim_ - 1; a >= 0; --a) {
        const std::size_t i = flat % n;
        flat /= n;
        partner += ((n - i) % n) * stride;
        stride *= n;
    }
    return partner;
}

double SpectralGrid::coordinate(std::size_t flat, int axis) const {
    const auto n = static_cast<std::size_t>(n_);
    for (int a = dim_ - 1; a > axis; --a) flat /= n;
    return static_cast<double>(flat % n) * box_length_ / n_;
}

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b, const char* what) {
    if (!(a == b)) throw ValidationError(std::string(what) + ": fields live on different grids");
}

}  // namespace mildflow
