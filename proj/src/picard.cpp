#include "mildflow/picard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "mildflow/errors.hpp"
#include "mildflow/operators.hpp"
#include "mildflow/windows.hpp"

namespace mildflow {

void SolverConfig::validate() const {
    kato.validate();
    if (!(tol > 0.0)) throw ValidationError("solver tolerance must be positive");
    if (max_iter < 1) throw ValidationError("max_iter must be at least 1");
    if (!(delta_gate > 0.0)) throw ValidationError("gate delta must be positive");
    if (timegrid.size() < 2) throw ValidationError("solver needs a time grid");
    if (std::abs(timegrid.horizon() - kato.horizon) > 1e-12 * kato.horizon) {
        throw ValidationError("Kato horizon differs from the time grid horizon");
    }
}

Trajectory heat_trajectory(const VectorField& u0, const TimeGrid& grid) {
    if (!is_divergence_free(u0)) throw ValidationError("initial datum is not divergence-free");
    for (const ScalarField& c : u0.components()) {
        if (!c.has_zero_mean()) throw ValidationError("initial datum must have zero mean");
    }
    std::vector<VectorField> nodes;
    nodes.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        VectorField v = grid[j] == 0.0 ? u0 : heat_propagate(u0, grid[j]);
        v.set_divergence_free(true);
        nodes.push_back(std::move(v));
    }
    return Trajectory(grid, std::move(nodes), Provenance::heat_flow);
}

GeometricFit fit_geometric(const std::vector<double>& values) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > 0.0 && std::isfinite(values[i])) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(std::log(values[i]));
        }
    }
    GeometricFit fit;
    if (xs.size() < 2) return fit;
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    fit.ratio = std::exp(slope);
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

namespace {

KatoIndex contraction_index(const SolverConfig& cfg) {
    KatoIndex k = cfg.kato;
    k.r = k.q_tilde;
    k.horizon = cfg.timegrid.horizon();
    return k;
}

/// t^{alpha/2} ||e^{t Delta} u0||_{H^s_{q~}}
double gate_weight(const VectorField& u0, const KatoIndex& k, double t) {
    const NormIndex ni{k.q_tilde, k.q_tilde, k.s};
    if (t == 0.0) return k.alpha() > 0.0 ? 0.0 : sobolev_lorentz_norm(u0, ni);
    return std::pow(t, 0.5 * k.alpha()) * sobolev_lorentz_norm(heat_propagate(u0, t), ni);
}

GateReport evaluate_gate(const VectorField& u0, const SolverConfig& cfg,
                         std::vector<double>* node_values) {
    const KatoIndex& k = cfg.kato;
    const TimeGrid& tg = cfg.timegrid;
    GateReport g;
    g.delta = cfg.delta_gate;
    g.time_factor = std::pow(tg.horizon(), k.time_power());

    std::vector<double> values(tg.size(), 0.0);
    for (std::size_t j = 0; j < tg.size(); ++j) values[j] = gate_weight(u0, k, tg[j]);

    std::size_t jbest = 0;
    for (std::size_t j = 1; j < values.size(); ++j) {
        if (values[j] > values[jbest]) jbest = j;
    }
    g.sup_value = values[jbest];
    g.argmax_time = tg[jbest];
    if (cfg.refine_gate && jbest > 0 && g.sup_value > 0.0) {
        // refine on the positive nodes bracketing the best one
        const std::size_t lo = std::max<std::size_t>(1, jbest - 1);
        const std::size_t hi = std::min(jbest + 1, tg.size() - 1);
        std::vector<double> bracket;
        for (std::size_t j = lo; j <= hi; ++j) bracket.push_back(tg[j]);
        const WeightedSup ws = sup_over_log_grid(
            [&](double t) { return gate_weight(u0, k, t); }, bracket, true);
        if (ws.value > g.sup_value) {
            g.sup_value = ws.value;
            g.argmax_time = ws.argmax;
        }
    }
    g.lhs = g.time_factor * g.sup_value;
    g.passes = g.lhs <= g.delta;
    if (node_values) *node_values = std::move(values);
    return g;
}

}  // namespace

GateReport smallness_gate(const VectorField& u0, const SolverConfig& cfg) {
    cfg.validate();
    std::vector<double> values;
    GateReport g = evaluate_gate(u0, cfg, &values);
    if (g.passes) {
        g.shrink_T = cfg.timegrid.horizon();
        return g;
    }
    const TimeGrid& tg = cfg.timegrid;
    const double power = cfg.kato.time_power();
    std::vector<double> prefix(values.size());
    double run = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        run = std::max(run, values[j]);
        prefix[j] = run;
    }
    int attempts = 0;
    for (std::size_t j = tg.size() - 1; j >= 1 && attempts < 12; --j) {
        if (std::pow(tg[j], power) * prefix[j] > cfg.delta_gate) continue;
        ++attempts;
        SolverConfig sub = cfg;
        sub.timegrid = TimeGrid::graded(tg[j], tg.intervals(), std::max(1.0, tg.grading()));
        sub.kato.horizon = tg[j];
        if (evaluate_gate(u0, sub, nullptr).passes) {
            g.shrink_T = tg[j];
            break;
        }
    }
    return g;
}

GateReport besov_smallness_gate(const VectorField& u0, const SolverConfig& cfg, double s, double q,
                                double q_tilde) {
    const int d = u0.grid().dim();
    check_existence_window(d, s, q, q_tilde);
    KatoIndex k = cfg.kato;
    k.dim = d;
    k.s = s;
    k.q = q;
    k.q_tilde = q_tilde;
    GateReport g;
    g.delta = cfg.delta_gate;
    g.time_factor = is_critical_index(d, s, q) ? 1.0 : std::pow(cfg.timegrid.horizon(), k.time_power());
    HeatTimeGrid times = HeatTimeGrid::for_grid(u0.grid());
    times.refine = cfg.refine_gate;
    g.sup_value = besov_norm_heat(u0, s - k.alpha(), kInfinity, q_tilde, s, times);
    g.lhs = g.time_factor * g.sup_value;
    g.passes = g.lhs <= g.delta;
    return g;
}

SolveReport picard_iterate(const VectorField& u0, const SolverConfig& cfg) {
    cfg.validate();
    const KatoIndex kin = contraction_index(cfg);
    Trajectory y = heat_trajectory(u0, cfg.timegrid);
    SolveReport rep(y);
    rep.y_norm = kato_weighted_sup(y, kin).value;

    Trajectory x = y;
    for (int n = 1; n <= cfg.max_iter; ++n) {
        const Trajectory b = bilinear_trajectory(x, x);
        const double nx = kato_weighted_sup(x, kin).value;
        if (nx > 0.0) rep.eta_hat = std::max(rep.eta_hat, kato_weighted_sup(b, kin).value / (nx * nx));
        Trajectory next = y - b;
        next.set_provenance(Provenance::picard_iterate);
        const double res = kato_weighted_sup(next - x, kin).value;
        if (!std::isfinite(res)) throw NumericalError("Picard iterate is not finite");
        rep.residual_history.push_back(res);
        rep.iterations = n;
        x = std::move(next);
        if (res <= cfg.tol * rep.y_norm) {
            rep.converged = true;
            break;
        }
        if (res > cfg.divergence_factor * rep.y_norm) break;
    }
    for (std::size_t j = 0; j < x.size(); ++j) x[j].set_divergence_free(true);
    x.set_provenance(Provenance::picard_iterate);

    const GeometricFit fit = fit_geometric(rep.residual_history);
    rep.contraction_ratio = fit.ratio;
    rep.contraction_r2 = fit.r2;
    rep.kato_norm = kato_weighted_sup(x, kin).value;
    rep.kato_norm_r1 = kato_weighted_sup(x, kin.with_r(1.0)).value;
    const NormIndex linf{cfg.kato.q, cfg.kato.r, cfg.kato.s};
    for (std::size_t j = 0; j < x.size(); ++j) {
        rep.linf_norm = std::max(rep.linf_norm, sobolev_lorentz_norm(x[j], linf));
    }
    rep.gate = smallness_gate(u0, cfg);
    try {
        check_existence_window(cfg.kato.dim, cfg.kato.s, cfg.kato.q, cfg.kato.q_tilde);
        rep.besov_gate = besov_smallness_gate(u0, cfg, cfg.kato.s, cfg.kato.q, cfg.kato.q_tilde);
    } catch (const ValidationError&) {
        rep.besov_gate.reset();
    }
    rep.solution = std::move(x);
    return rep;
}

namespace {

class IntegratingFactor {
public:
    explicit IntegratingFactor(const SpectralGrid& grid) : grid_(grid) {}

    void set_step(double h) {
        if (h == h_) return;
        h_ = h;
        const auto shells = grid_.unique_k_squared();
        full_.resize(shells.size());
        half_.resize(shells.size());
        for (std::size_t s = 0; s < shells.size(); ++s) {
            full_[s] = std::exp(-shells[s] * h);
            half_[s] = std::exp(-shells[s] * 0.5 * h);
        }
    }
    VectorField full(const VectorField& u) const { return apply(u, full_); }
    VectorField half(const VectorField& u) const { return apply(u, half_); }

private:
    VectorField apply(VectorField u, const std::vector<double>& f) const {
        const auto shell = grid_.shell_index();
        for (int c = 0; c < u.dim(); ++c) {
            auto co = u[c].coeffs();
            for (std::size_t i = 0; i < co.size(); ++i) co[i] *= f[shell[i]];
        }
        return u;
    }

    SpectralGrid grid_;
    double h_ = -1.0;
    std::vector<double> full_, half_;
};

VectorField rhs(const VectorField& u) { return -1.0 * nonlinear_term(u, u); }

VectorField ifrk4_step(const VectorField& u, double h, IntegratingFactor& ef) {
    ef.set_step(h);
    const VectorField a = rhs(u);
    VectorField tmp = u;
    tmp.axpy(0.5 * h, a);
    const VectorField b = rhs(ef.half(tmp));
    tmp = ef.half(u);
    tmp.axpy(0.5 * h, b);
    const VectorField c = rhs(tmp);
    tmp = ef.full(u);
    tmp.axpy(h, ef.half(c));
    const VectorField d = rhs(tmp);

    VectorField inc = ef.full(a);
    VectorField bc = b;
    bc += c;
    inc.axpy(2.0, ef.half(bc));
    inc += d;
    VectorField out = ef.full(u);
    out.axpy(h / 6.0, inc);
    out.set_divergence_free(true);
    return out;
}

}  // namespace

Trajectory oracle_integrate(const VectorField& u0, const TimeGrid& grid, int steps) {
    if (steps < 1) throw ValidationError("oracle needs at least one step");
    if (!is_divergence_free(u0)) throw ValidationError("initial datum is not divergence-free");
    const double T = grid.horizon();
    const double h_nominal = T / steps;
    const double start = std::max(spectral_l2_norm(u0), 1e-300);

    IntegratingFactor ef(u0.grid());
    std::vector<VectorField> out;
    out.reserve(grid.size());
    VectorField u = u0;
    u.set_divergence_free(true);
    out.push_back(u);
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double span = grid[j] - grid[j - 1];
        const int sub = std::max(1, static_cast<int>(std::ceil(span / h_nominal - 1e-9)));
        const double h = span / sub;
        for (int i = 0; i < sub; ++i) {
            u = ifrk4_step(u, h, ef);
            const double nrm = spectral_l2_norm(u);
            if (!std::isfinite(nrm) || nrm > 1e6 * start) {
                throw NumericalError("oracle integration unstable; increase the step count");
            }
        }
        out.push_back(u);
    }
    return Trajectory(grid, std::move(out), Provenance::oracle);
}

Trajectory oracle_integrate(const VectorField& u0, double T, int steps) {
    return oracle_integrate(u0, TimeGrid::graded(T, steps, 1.0), steps);
}

double calibrate_delta(double bilinear_constant) {
    if (!(bilinear_constant > 0.0)) throw ValidationError("bilinear constant must be positive");
    return 1.0 / (4.0 * bilinear_constant);
}

}  // namespace mildflow
