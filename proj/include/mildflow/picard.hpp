#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mildflow/duhamel.hpp"
#include "mildflow/norms.hpp"
#include "mildflow/trajectory.hpp"

namespace mildflow {

struct SolverConfig {
    KatoIndex kato;
    double tol = 1e-10;
    int max_iter = 50;
    TimeGrid timegrid = TimeGrid::graded(1.0, 64, 2.0);
    double delta_gate = 0.05;
    /// Golden-section refinement of the gate's sup in t.
    bool refine_gate = true;
    /// An iterate whose residual exceeds this multiple of ||y|| stops the run.
    double divergence_factor = 1e8;

    /// tol > 0, max_iter >= 1, delta > 0, Kato index valid and its horizon
    /// equal to the time grid's.
    void validate() const;
};

struct GateReport {
    double lhs = 0.0;
    double delta = 0.0;
    bool passes = false;
    double time_factor = 1.0;  ///< T^{(1+s-d/q)/2}; 1 in the critical case
    double sup_value = 0.0;    ///< sup part of the left-hand side
    double argmax_time = 0.0;
    /// Largest node T' <= T whose own gate passes, if any.
    std::optional<double> shrink_T;
};

struct SolveReport {
    explicit SolveReport(Trajectory sol) : solution(std::move(sol)) {}

    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history;  ///< ||x_{n+1} - x_n||_K, r = q~
    double contraction_ratio = 0.0;        ///< exp(slope) of the log-linear residual fit
    double contraction_r2 = 1.0;
    double y_norm = 0.0;                   ///< ||y||_K, r = q~
    double kato_norm = 0.0;                ///< ||u||_K, r = q~
    double kato_norm_r1 = 0.0;             ///< ||u||_K, r = 1
    double linf_norm = 0.0;                ///< max_t ||u(t)||_{H^s_{L^{q,r}}}
    double eta_hat = 0.0;                  ///< max_n ||B(x_n,x_n)||_K / ||x_n||_K^2
    GateReport gate;
    std::optional<GateReport> besov_gate;  ///< only when the existence window holds
    Trajectory solution;
};

/// Node j holds e^{t_j Delta} u0. u0 must be divergence-free with zero mean.
Trajectory heat_trajectory(const VectorField& u0, const TimeGrid& grid);

/// x_0 = y, x_{n+1} = y - B(x_n, x_n) until ||x_{n+1} - x_n||_K <= tol ||y||_K.
SolveReport picard_iterate(const VectorField& u0, const SolverConfig& cfg);

/// T^{(1+s-d/q)/2} sup_{0<t<=T} t^{alpha/2} ||e^{t Delta} u0||_{H^s_{q~}} against delta,
/// with T the horizon of cfg.timegrid.
GateReport smallness_gate(const VectorField& u0, const SolverConfig& cfg);

/// T^{(1+s-d/q)/2} ||u0||_{B^{s-alpha,inf}_{q~}} against delta. The exponent
/// window (1/q + s/d)/2 < 1/q~ < min(1/2 + s/(2d), 1/q) is checked first. In
/// the critical case s = d/q - 1 the T factor is 1.
GateReport besov_smallness_gate(const VectorField& u0, const SolverConfig& cfg, double s, double q,
                                double q_tilde);

/// Integrating-factor RK4 for du/dt = Delta u - P div(u (x) u) with a fixed
/// step T/steps, sub-stepped so that every node of `grid` is hit exactly.
Trajectory oracle_integrate(const VectorField& u0, const TimeGrid& grid, int steps);
/// Output on the uniform grid of `steps` intervals over [0, T].
Trajectory oracle_integrate(const VectorField& u0, double T, int steps);

/// delta = 1/(4 C) from an empirical bilinear constant C > 0.
double calibrate_delta(double bilinear_constant);

/// Log-linear least-squares fit of a positive sequence: {ratio, R^2}.
struct GeometricFit {
    double ratio = 0.0;
    double r2 = 1.0;
};
GeometricFit fit_geometric(const std::vector<double>& values);

}  // namespace mildflow
