#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mildflow/norms.hpp"
#include "mildflow/trajectory.hpp"

namespace mildflow {

/// P div(u (x) v), dealiased. Zero-mean and divergence-free.
VectorField nonlinear_term(const VectorField& u, const VectorField& v);

/// B(U,V)(t_j) = int_0^{t_j} e^{(t_j - tau) Delta} P div(U (x) V)(tau) dtau at every node.
///
/// The nonlinearity is formed at the nodes and interpolated linearly in tau;
/// the heat factor is integrated exactly against that interpolant, giving the
/// recursion B_j = e^{-|k|^2 h} B_{j-1} + w0 N_{j-1} + w1 N_j per wavenumber.
Trajectory bilinear_trajectory(const Trajectory& U, const Trajectory& V);

/// Value at node `node` (node 0 gives zero).
VectorField bilinear_B(const Trajectory& U, const Trajectory& V, std::size_t node);
/// Value at time t, which must coincide with a node (relative 1e-12).
VectorField bilinear_B(const Trajectory& U, const Trajectory& V, double t);

/// Product-trapezoid weights of one interval for decay rate a = |k|^2:
/// exp(-a h), weight of the left node, weight of the right node.
struct EtdWeights {
    double decay;
    double left;
    double right;
};
EtdWeights etd_weights(double a, double h);

/// Output space of the bilinear bound.
enum class BilinearTarget {
    /// sup t^{alpha/2} ||B||_{H^s_{L^{q~,1}}}
    kato_q_tilde,
    /// sup ||B||_{H^s_{L^{q,1}}} (alpha = 0)
    kato_q,
};

struct BilinearEntry {
    double numerator = 0.0;    ///< Kato norm of B(U,V) in the target space
    double denominator = 0.0;  ///< T^{(1+s-d/q)/2} ||U|| ||V||, inputs with r = q~
    double ratio = 0.0;
    bool degenerate = false;   ///< zero denominator, excluded from the max
};

struct BilinearConstantReport {
    std::vector<BilinearEntry> entries;
    double max_ratio = 0.0;
    std::size_t argmax = 0;
    std::size_t degenerate_count = 0;
};

/// Empirical constant of the bilinear bound over a corpus of trajectory pairs
/// sharing one time grid. The exponent window of the chosen target is
/// validated first. T is the horizon of the trajectories' time grid.
BilinearConstantReport estimate_bilinear_constant(
    std::span<const std::pair<Trajectory, Trajectory>> corpus, const KatoIndex& idx,
    BilinearTarget target);

/// Ratio for one pair given a precomputed B(U,V).
BilinearEntry bilinear_ratio(const Trajectory& U, const Trajectory& V, const Trajectory& B,
                             const KatoIndex& idx, BilinearTarget target);

}  // namespace mildflow
