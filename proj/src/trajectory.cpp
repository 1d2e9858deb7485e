#include "mildflow/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mildflow/errors.hpp"

namespace mildflow {

TimeGrid TimeGrid::graded(double horizon, int intervals, double gamma) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ValidationError("time horizon must be positive");
    if (intervals < 1) throw ValidationError("time grid needs at least one interval");
    if (!(gamma >= 1.0)) throw ValidationError("grading exponent must be >= 1");
    TimeGrid g;
    g.gamma_ = gamma;
    g.nodes_.resize(static_cast<std::size_t>(intervals) + 1);
    for (int j = 0; j <= intervals; ++j) {
        g.nodes_[static_cast<std::size_t>(j)] =
            horizon * std::pow(static_cast<double>(j) / intervals, gamma);
    }
    g.nodes_.back() = horizon;
    return g;
}

TimeGrid TimeGrid::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 2) throw ValidationError("time grid needs at least two nodes");
    if (nodes.front() != 0.0) throw ValidationError("time grid must start at t = 0");
    for (std::size_t j = 1; j < nodes.size(); ++j) {
        if (!(nodes[j] > nodes[j - 1])) throw ValidationError("time grid nodes must increase strictly");
    }
    TimeGrid g;
    g.nodes_ = std::move(nodes);
    return g;
}

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::heat_flow: return "heat_flow";
        case Provenance::picard_iterate: return "picard_iterate";
        case Provenance::oracle: return "oracle";
        case Provenance::bilinear: return "bilinear";
        case Provenance::other: break;
    }
    return "other";
}

Trajectory::Trajectory(TimeGrid grid, std::vector<VectorField> fields, Provenance provenance)
    : time_(std::move(grid)), fields_(std::move(fields)), provenance_(provenance) {
    if (fields_.size() != time_.size()) {
        throw ValidationError("trajectory needs one field per time node");
    }
    for (const VectorField& f : fields_) require_same_grid(fields_.front().grid(), f.grid(), "trajectory");
}

Trajectory Trajectory::zeros(const TimeGrid& time, const SpectralGrid& space, Provenance provenance) {
    return Trajectory(time, std::vector<VectorField>(time.size(), VectorField(space)), provenance);
}

VectorField Trajectory::sample(double t) const {
    const auto nodes = time_.nodes();
    if (t < nodes.front() || t > nodes.back()) throw ValidationError("sample time outside trajectory");
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    if (it == nodes.end()) return fields_.back();
    const auto j = static_cast<std::size_t>(it - nodes.begin());
    const double w = (t - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
    VectorField out = (1.0 - w) * fields_[j - 1];
    out.axpy(w, fields_[j]);
    return out;
}

Trajectory& Trajectory::axpy(double factor, const Trajectory& other) {
    require_compatible(*this, other, "trajectory arithmetic");
    for (std::size_t j = 0; j < fields_.size(); ++j) fields_[j].axpy(factor, other.fields_[j]);
    return *this;
}

Trajectory& Trajectory::operator*=(double factor) noexcept {
    for (VectorField& f : fields_) f *= factor;
    return *this;
}

Trajectory operator+(Trajectory a, const Trajectory& b) { return a.axpy(1.0, b); }
Trajectory operator-(Trajectory a, const Trajectory& b) { return a.axpy(-1.0, b); }
Trajectory operator*(double factor, Trajectory a) { return a *= factor; }

void require_compatible(const Trajectory& a, const Trajectory& b, const char* what) {
    if (!(a.time_grid() == b.time_grid())) {
        throw ValidationError(std::string(what) + ": trajectories use different time grids");
    }
    require_same_grid(a.spectral_grid(), b.spectral_grid(), what);
}

}  // namespace mildflow
