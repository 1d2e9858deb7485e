#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mildflow/field.hpp"

namespace mildflow {

/// Nodes 0 = t_0 < t_1 < ... < t_M = T on [0, T].
class TimeGrid {
public:
    /// t_j = T (j/M)^gamma; gamma >= 1 clusters nodes near 0.
    static TimeGrid graded(double horizon, int intervals, double gamma = 2.0);
    /// Arbitrary nodes; must start at exactly 0 and increase strictly.
    static TimeGrid from_nodes(std::vector<double> nodes);

    double horizon() const noexcept { return nodes_.back(); }
    std::size_t size() const noexcept { return nodes_.size(); }
    int intervals() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
    double grading() const noexcept { return gamma_; }
    double operator[](std::size_t j) const noexcept { return nodes_[j]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) noexcept {
        return a.nodes_ == b.nodes_;
    }

private:
    std::vector<double> nodes_;
    double gamma_ = 1.0;
};

enum class Provenance { heat_flow, picard_iterate, oracle, bilinear, other };

std::string_view to_string(Provenance p) noexcept;

/// A vector field per time node, all on one spectral grid.
class Trajectory {
public:
    Trajectory(TimeGrid grid, std::vector<VectorField> fields, Provenance provenance = Provenance::other);
    /// Zero field at every node.
    static Trajectory zeros(const TimeGrid& time, const SpectralGrid& space,
                            Provenance provenance = Provenance::other);

    const TimeGrid& time_grid() const noexcept { return time_; }
    const SpectralGrid& spectral_grid() const noexcept { return fields_.front().grid(); }
    std::size_t size() const noexcept { return fields_.size(); }
    Provenance provenance() const noexcept { return provenance_; }
    void set_provenance(Provenance p) noexcept { provenance_ = p; }

    const VectorField& operator[](std::size_t j) const noexcept { return fields_[j]; }
    VectorField& operator[](std::size_t j) noexcept { return fields_[j]; }
    const VectorField& back() const noexcept { return fields_.back(); }

    /// Linear interpolation of spectral coefficients between bracketing nodes.
    VectorField sample(double t) const;

    Trajectory& axpy(double factor, const Trajectory& other);
    Trajectory& operator*=(double factor) noexcept;

private:
    TimeGrid time_;
    std::vector<VectorField> fields_;
    Provenance provenance_;
};

Trajectory operator+(Trajectory a, const Trajectory& b);
Trajectory operator-(Trajectory a, const Trajectory& b);
Trajectory operator*(double factor, Trajectory a);

/// Throws ValidationError unless both trajectories share time and space grids.
void require_compatible(const Trajectory& a, const Trajectory& b, const char* what);

}  // namespace mildflow
