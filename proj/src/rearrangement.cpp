#include "mildflow/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mildflow/errors.hpp"
#include "mildflow/transform.hpp"

namespace mildflow {

RearrangementProfile RearrangementProfile::from_samples(std::span<const double> samples,
                                                        double cell_measure) {
    if (!(cell_measure > 0.0)) throw ValidationError("cell measure must be positive");
    std::vector<double> sorted;
    sorted.reserve(samples.size());
    for (double v : samples) {
        const double a = std::abs(v);
        if (std::isnan(a)) throw NumericalError("rearrangement of NaN sample");
        if (a > 0.0) sorted.push_back(a);
    }
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    RearrangementProfile p;
    for (double v : sorted) {
        if (!p.steps_.empty() && p.steps_.back().value == v) {
            p.steps_.back().measure += cell_measure;
        } else {
            p.steps_.push_back({v, cell_measure});
        }
    }
    p.total_measure_ = static_cast<double>(sorted.size()) * cell_measure;
    return p;
}

RearrangementProfile RearrangementProfile::from_steps(std::vector<RearrangementStep> steps) {
    RearrangementProfile p;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!(steps[i].measure > 0.0) || !(steps[i].value > 0.0)) {
            throw ValidationError("rearrangement steps need positive values and measures");
        }
        if (i > 0 && !(steps[i].value < steps[i - 1].value)) {
            throw ValidationError("rearrangement values must be strictly decreasing");
        }
        p.total_measure_ += steps[i].measure;
    }
    p.steps_ = std::move(steps);
    return p;
}

double RearrangementProfile::operator()(double t) const noexcept {
    double edge = 0.0;
    for (const RearrangementStep& s : steps_) {
        edge += s.measure;
        if (t < edge) return s.value;
    }
    return 0.0;
}

RearrangementProfile decreasing_rearrangement(const ScalarField& f) {
    const std::vector<double> samples = to_physical(f);
    return RearrangementProfile::from_samples(samples, f.grid().cell_volume());
}

RearrangementProfile decreasing_rearrangement_magnitude(const VectorField& u) {
    const SpectralGrid& g = u.grid();
    std::vector<double> magnitude(g.size(), 0.0);
    for (const ScalarField& c : u.components()) {
        const std::vector<double> s = to_physical(c);
        for (std::size_t i = 0; i < s.size(); ++i) magnitude[i] += s[i] * s[i];
    }
    for (double& m : magnitude) m = std::sqrt(m);
    return RearrangementProfile::from_samples(magnitude, g.cell_volume());
}

}  // namespace mildflow
