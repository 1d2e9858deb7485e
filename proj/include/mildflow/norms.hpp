#pragma once

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "mildflow/field.hpp"
#include "mildflow/rearrangement.hpp"
#include "mildflow/trajectory.hpp"

namespace mildflow {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exponent triple of the Sobolev-Lorentz norm ||Lambda^s f||_{L^{q,r}}.
struct NormIndex {
    double q = 2.0;
    double r = 2.0;  ///< kInfinity selects the weak-type sup form
    double s = 0.0;

    /// q > 1, 1 <= r <= inf, 0 <= s < dim/q. Throws ValidationError.
    void validate(int dim) const;
};

/// Index set of the weighted space sup_{0<t<T} t^{alpha/2} ||u(t)||_{H^s_{L^{q~,r}}},
/// alpha = d (1/q - 1/q~).
struct KatoIndex {
    int dim = 2;
    double s = 0.0;
    double q = 3.0;
    double q_tilde = 4.0;
    double r = 3.0;
    double horizon = 1.0;

    double alpha() const noexcept { return dim * (1.0 / q - 1.0 / q_tilde); }
    /// Exponent (1 + s - d/q)/2 carried by T in the bilinear and gate bounds.
    double time_power() const noexcept { return 0.5 * (1.0 + s - dim / q); }
    /// s/d < 1/q~ <= 1/q <= (s+1)/d, q, q~ > 1, r >= 1, T > 0.
    void validate() const;
    /// Same exponents with a different secondary index r.
    KatoIndex with_r(double new_r) const { KatoIndex k = *this; k.r = new_r; return k; }
};

/// Closed-form integral of (t^{1/q} f*(t))^r dt/t over the steps; for
/// r = inf the sup of t^{1/q} f*(t), attained at step right endpoints.
double lorentz_norm(const RearrangementProfile& profile, double q, double r);

/// (sum |f|^q cell_volume)^{1/q} over the physical samples; q = inf gives the max.
double lebesgue_norm_samples(std::span<const double> samples, double cell_volume, double q);
double lebesgue_norm(const ScalarField& f, double q);
/// Euclidean combination of the component norms.
double lebesgue_norm(const VectorField& u, double q);

double lorentz_norm(const ScalarField& f, double q, double r);
double lorentz_norm(const VectorField& u, double q, double r);

/// ||Lambda^s f||_{L^{q,r}}. For r == q the rearrangement is skipped and the
/// equal Lebesgue norm is returned.
double sobolev_lorentz_norm(const ScalarField& f, const NormIndex& idx);
double sobolev_lorentz_norm(const VectorField& u, const NormIndex& idx);

/// Geometric time grid for the heat characterisation of Besov norms.
struct HeatTimeGrid {
    double t_min = 1e-3;
    double t_max = 1.0;
    double ratio = 1.189207115002721;  // 2^{1/4}
    /// Golden-section refinement (in log t) around the best grid node for p = inf.
    bool refine = true;

    /// t_min = (L/(pi n))^2, t_max = L^2.
    static HeatTimeGrid for_grid(const SpectralGrid& grid);
    std::vector<double> nodes() const;
};

/// Heat characterisation of the homogeneous Besov norm B^{s,p}_q:
///   sup_t t^{(alpha-s)/2} ||Lambda^alpha e^{t Delta} f||_{L^q}        (p = inf)
///   (int (t^{(alpha-s)/2} ||...||_{L^q})^p dt/t)^{1/p}                 (p < inf)
/// Requires s < alpha and alpha >= 0.
double besov_norm_heat(const ScalarField& f, double s, double p, double q, double alpha,
                       const HeatTimeGrid& times);
double besov_norm_heat(const VectorField& u, double s, double p, double q, double alpha,
                       const HeatTimeGrid& times);
double besov_norm_heat(const VectorField& u, double s, double p, double q, double alpha);

struct WeightedSup {
    double value = 0.0;
    double argmax = 0.0;
};

/// max of fn over the nodes; with `refine`, a golden-section search in log t
/// on the two intervals around the best node. The returned value is the
/// largest of all evaluations, so it never falls below the plain node max.
WeightedSup sup_over_log_grid(const std::function<double(double)>& fn,
                              std::span<const double> nodes, bool refine);

/// sup over (0, times.t_max] of t^{alpha/2} ||e^{t Delta} u0||_{H^s_{L^{q,r}}}.
WeightedSup weighted_heat_sup(const VectorField& u0, const NormIndex& idx, double alpha,
                              const HeatTimeGrid& times);

struct KatoReport {
    double value = 0.0;         ///< max over nodes t > 0
    double argmax_time = 0.0;
    std::array<double, 3> tail_times{};   ///< three smallest positive nodes
    std::array<double, 3> tail_values{};  ///< weighted norm at those nodes
    std::vector<double> weighted;         ///< weighted norm per node (node 0 -> 0)
};

/// sup over positive nodes of t^{alpha/2} ||u(t)||_{H^s_{L^{q~,r}}}.
KatoReport kato_weighted_sup(const Trajectory& traj, const KatoIndex& idx);

}  // namespace mildflow
