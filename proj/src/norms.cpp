#include "mildflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mildflow/errors.hpp"
#include "mildflow/operators.hpp"
#include "mildflow/transform.hpp"

namespace mildflow {

namespace {

void require_lorentz_exponents(double q, double r) {
    if (!(q > 1.0)) throw ValidationError("Lorentz exponent q must exceed 1");
    if (!(r >= 1.0)) throw ValidationError("Lorentz exponent r must be at least 1");
}

double euclidean(std::span<const double> parts) {
    double acc = 0.0;
    for (double p : parts) acc += p * p;
    return std::sqrt(acc);
}

template <typename Fn>
double combine_components(const VectorField& u, Fn&& fn) {
    std::vector<double> parts;
    parts.reserve(static_cast<std::size_t>(u.dim()));
    for (const ScalarField& c : u.components()) parts.push_back(fn(c));
    return euclidean(parts);
}

}  // namespace

void NormIndex::validate(int dim) const {
    require_lorentz_exponents(q, r);
    if (!(s >= 0.0)) throw ValidationError("regularity s must be nonnegative");
    if (!(s < dim / q)) {
        std::ostringstream msg;
        msg << "Sobolev-Lorentz index needs s < d/q (s=" << s << ", d/q=" << dim / q << ")";
        throw ValidationError(msg.str());
    }
}

void KatoIndex::validate() const {
    if (dim != 2 && dim != 3) throw ValidationError("dimension must be 2 or 3");
    if (!(q > 1.0) || !(q_tilde > 1.0)) throw ValidationError("q and q~ must exceed 1");
    if (!(r >= 1.0)) throw ValidationError("r must be at least 1");
    if (!(horizon > 0.0)) throw ValidationError("horizon T must be positive");
    if (!(s >= 0.0)) throw ValidationError("regularity s must be nonnegative");
    const double d = dim;
    if (!(s / d < 1.0 / q_tilde)) throw ValidationError("Kato index violates s/d < 1/q~");
    if (!(1.0 / q_tilde <= 1.0 / q)) throw ValidationError("Kato index violates 1/q~ <= 1/q");
    if (!(1.0 / q <= (s + 1.0) / d)) throw ValidationError("Kato index violates 1/q <= (s+1)/d");
}

double lorentz_norm(const RearrangementProfile& profile, double q, double r) {
    require_lorentz_exponents(q, r);
    double edge = 0.0;
    if (std::isinf(r)) {
        double best = 0.0;
        for (const RearrangementStep& st : profile.steps()) {
            edge += st.measure;
            best = std::max(best, st.value * std::pow(edge, 1.0 / q));
        }
        return best;
    }
    const double e = r / q;
    double acc = 0.0;
    double prev = 0.0;
    for (const RearrangementStep& st : profile.steps()) {
        edge += st.measure;
        const double cur = std::pow(edge, e);
        acc += std::pow(st.value, r) * (cur - prev);
        prev = cur;
    }
    return std::pow(acc / e, 1.0 / r);
}

double lebesgue_norm_samples(std::span<const double> samples, double cell_volume, double q) {
    if (!(q >= 1.0)) throw ValidationError("Lebesgue exponent must be at least 1");
    if (std::isinf(q)) {
        double best = 0.0;
        for (double v : samples) best = std::max(best, std::abs(v));
        return best;
    }
    double acc = 0.0;
    for (double v : samples) acc += std::pow(std::abs(v), q);
    return std::pow(acc * cell_volume, 1.0 / q);
}

double lebesgue_norm(const ScalarField& f, double q) {
    const std::vector<double> x = to_physical(f);
    return lebesgue_norm_samples(x, f.grid().cell_volume(), q);
}

double lebesgue_norm(const VectorField& u, double q) {
    return combine_components(u, [q](const ScalarField& c) { return lebesgue_norm(c, q); });
}

double lorentz_norm(const ScalarField& f, double q, double r) {
    if (r == q) {
        require_lorentz_exponents(q, r);
        return lebesgue_norm(f, q);
    }
    return lorentz_norm(decreasing_rearrangement(f), q, r);
}

double lorentz_norm(const VectorField& u, double q, double r) {
    return combine_components(u, [q, r](const ScalarField& c) { return lorentz_norm(c, q, r); });
}

double sobolev_lorentz_norm(const ScalarField& f, const NormIndex& idx) {
    idx.validate(f.grid().dim());
    if (idx.s == 0.0) return lorentz_norm(f, idx.q, idx.r);
    return lorentz_norm(fractional_laplacian(f, idx.s), idx.q, idx.r);
}

double sobolev_lorentz_norm(const VectorField& u, const NormIndex& idx) {
    return combine_components(u, [&idx](const ScalarField& c) { return sobolev_lorentz_norm(c, idx); });
}

HeatTimeGrid HeatTimeGrid::for_grid(const SpectralGrid& grid) {
    HeatTimeGrid g;
    const double L = grid.box_length();
    g.t_min = std::pow(L / (std::numbers::pi * grid.n()), 2);
    g.t_max = L * L;
    return g;
}

std::vector<double> HeatTimeGrid::nodes() const {
    if (!(t_min > 0.0) || !(t_max >= t_min) || !(ratio > 1.0)) {
        throw ValidationError("heat time grid needs 0 < t_min <= t_max and ratio > 1");
    }
    std::vector<double> out;
    for (int j = 0;; ++j) {
        const double t = t_min * std::pow(ratio, j);
        if (t >= t_max * (1.0 - 1e-12)) break;
        out.push_back(t);
    }
    out.push_back(t_max);
    return out;
}

WeightedSup sup_over_log_grid(const std::function<double(double)>& fn,
                              std::span<const double> nodes, bool refine) {
    WeightedSup best;
    if (nodes.empty()) return best;
    std::size_t jbest = 0;
    best.value = -1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double v = fn(nodes[j]);
        if (std::isnan(v)) throw NumericalError("NaN in weighted norm evaluation");
        if (v > best.value) {
            best = {v, nodes[j]};
            jbest = j;
        }
    }
    if (!refine || nodes.size() < 2 || best.value <= 0.0) return best;

    double a = std::log(nodes[jbest == 0 ? 0 : jbest - 1]);
    double b = std::log(nodes[std::min(jbest + 1, nodes.size() - 1)]);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = fn(std::exp(x1));
    double f2 = fn(std::exp(x2));
    auto keep = [&best](double x, double v) {
        if (v > best.value) best = {v, std::exp(x)};
    };
    keep(x1, f1);
    keep(x2, f2);
    for (int it = 0; it < 40 && b - a > 1e-10; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = fn(std::exp(x2));
            keep(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = fn(std::exp(x1));
            keep(x1, f1);
        }
    }
    return best;
}

double besov_norm_heat(const ScalarField& f, double s, double p, double q, double alpha,
                       const HeatTimeGrid& times) {
    if (!(s < alpha)) throw ValidationError("Besov heat norm needs s < alpha");
    if (!(alpha >= 0.0)) throw ValidationError("Besov heat norm needs alpha >= 0");
    if (!(p >= 1.0)) throw ValidationError("Besov exponent p must be at least 1");
    if (!(q >= 1.0)) throw ValidationError("Besov exponent q must be at least 1");

    const ScalarField g = alpha == 0.0 ? f : fractional_laplacian(f, alpha);
    if (g.max_abs_coeff() == 0.0) return 0.0;
    const double w = 0.5 * (alpha - s);
    auto integrand = [&](double t) { return std::pow(t, w) * lebesgue_norm(heat_propagate(g, t), q); };

    const std::vector<double> nodes = times.nodes();
    if (std::isinf(p)) return sup_over_log_grid(integrand, nodes, times.refine).value;

    double acc = 0.0;
    double prev = std::pow(integrand(nodes[0]), p);
    for (std::size_t j = 1; j < nodes.size(); ++j) {
        const double cur = std::pow(integrand(nodes[j]), p);
        acc += 0.5 * (prev + cur) * std::log(nodes[j] / nodes[j - 1]);
        prev = cur;
    }
    return std::pow(acc, 1.0 / p);
}

double besov_norm_heat(const VectorField& u, double s, double p, double q, double alpha,
                       const HeatTimeGrid& times) {
    return combine_components(
        u, [&](const ScalarField& c) { return besov_norm_heat(c, s, p, q, alpha, times); });
}

double besov_norm_heat(const VectorField& u, double s, double p, double q, double alpha) {
    return besov_norm_heat(u, s, p, q, alpha, HeatTimeGrid::for_grid(u.grid()));
}

WeightedSup weighted_heat_sup(const VectorField& u0, const NormIndex& idx, double alpha,
                              const HeatTimeGrid& times) {
    idx.validate(u0.grid().dim());
    if (u0.max_abs_coeff() == 0.0) return {0.0, times.t_max};
    auto fn = [&](double t) {
        return std::pow(t, 0.5 * alpha) * sobolev_lorentz_norm(heat_propagate(u0, t), idx);
    };
    const std::vector<double> nodes = times.nodes();
    return sup_over_log_grid(fn, nodes, times.refine);
}

KatoReport kato_weighted_sup(const Trajectory& traj, const KatoIndex& idx) {
    if (traj.size() == 0) throw ValidationError("Kato norm of an empty trajectory");
    const NormIndex ni{idx.q_tilde, idx.r, idx.s};
    const double alpha = idx.alpha();
    KatoReport rep;
    rep.weighted.assign(traj.size(), 0.0);
    std::vector<std::size_t> positive;
    for (std::size_t j = 0; j < traj.size(); ++j) {
        const double t = traj.time_grid()[j];
        if (!(t > 0.0)) continue;
        positive.push_back(j);
        const double v = std::pow(t, 0.5 * alpha) * sobolev_lorentz_norm(traj[j], ni);
        if (!std::isfinite(v)) throw NumericalError("non-finite weighted norm in trajectory");
        rep.weighted[j] = v;
        if (v > rep.value) {
            rep.value = v;
            rep.argmax_time = t;
        }
    }
    for (std::size_t i = 0; i < 3 && i < positive.size(); ++i) {
        rep.tail_times[i] = traj.time_grid()[positive[i]];
        rep.tail_values[i] = rep.weighted[positive[i]];
    }
    return rep;
}

}  // namespace mildflow
