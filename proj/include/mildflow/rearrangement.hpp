#pragma once

#include <span>
#include <vector>

#include "mildflow/field.hpp"

namespace mildflow {

struct RearrangementStep {
    double value;    ///< f* on this step, > 0
    double measure;  ///< length of the step, > 0
};

/// Piecewise-constant decreasing rearrangement f*.
///
/// f*(t) = value_i for t in [T_{i-1}, T_i) with T_i the cumulative measure;
/// f*(t) = 0 beyond the last step. Values are strictly decreasing; equal
/// samples are merged (exact equality only) and zeros are dropped.
class RearrangementProfile {
public:
    RearrangementProfile() = default;

    /// |samples| sorted descending, each carrying `cell_measure`.
    static RearrangementProfile from_samples(std::span<const double> samples, double cell_measure);
    /// Steps must already be strictly decreasing with positive measures.
    static RearrangementProfile from_steps(std::vector<RearrangementStep> steps);

    std::span<const RearrangementStep> steps() const noexcept { return steps_; }
    double total_measure() const noexcept { return total_measure_; }
    bool empty() const noexcept { return steps_.empty(); }

    double operator()(double t) const noexcept;

private:
    std::vector<RearrangementStep> steps_;
    double total_measure_ = 0.0;
};

RearrangementProfile decreasing_rearrangement(const ScalarField& f);
/// Rearrangement of the pointwise Euclidean magnitude |u(x)|.
RearrangementProfile decreasing_rearrangement_magnitude(const VectorField& u);

}  // namespace mildflow
