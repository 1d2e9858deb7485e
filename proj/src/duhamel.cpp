#include "mildflow/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "mildflow/errors.hpp"
#include "mildflow/operators.hpp"
#include "mildflow/windows.hpp"

namespace mildflow {

VectorField nonlinear_term(const VectorField& u, const VectorField& v) {
    require_same_grid(u.grid(), v.grid(), "nonlinear_term");
    return leray_project(divergence_tensor(tensor_product(u, v)));
}

EtdWeights etd_weights(double a, double h) {
    const double z = a * h;
    double phi1;
    double phi2;
    if (z < 0.1) {
        // phi1 = sum (-z)^k/(k+1)!, phi2 = sum (-z)^k/(k+2)!
        phi1 = 0.0;
        phi2 = 0.0;
        double term1 = 1.0;  // (-z)^k/(k+1)!
        double term2 = 0.5;  // (-z)^k/(k+2)!
        for (int k = 0; k < 16; ++k) {
            phi1 += term1;
            phi2 += term2;
            term1 *= -z / (k + 2);
            term2 *= -z / (k + 3);
        }
    } else {
        const double em = std::exp(-z);
        phi1 = (1.0 - em) / z;
        phi2 = (em - 1.0 + z) / (z * z);
    }
    return {std::exp(-z), h * (phi1 - phi2), h * phi2};
}

namespace {

struct IntervalTable {
    std::vector<double> decay, left, right;  // per shell
};

}  // namespace

Trajectory bilinear_trajectory(const Trajectory& U, const Trajectory& V) {
    require_compatible(U, V, "bilinear_trajectory");
    const TimeGrid& tg = U.time_grid();
    const SpectralGrid& grid = U.spectral_grid();
    const auto shells = grid.unique_k_squared();
    const auto shell_of = grid.shell_index();
    const int d = grid.dim();

    std::vector<VectorField> out;
    out.reserve(tg.size());
    out.emplace_back(grid);  // empty integral

    VectorField prev_n = nonlinear_term(U[0], V[0]);
    IntervalTable tab;
    tab.decay.resize(shells.size());
    tab.left.resize(shells.size());
    tab.right.resize(shells.size());
    for (std::size_t j = 1; j < tg.size(); ++j) {
        const double h = tg[j] - tg[j - 1];
        for (std::size_t s = 0; s < shells.size(); ++s) {
            const EtdWeights w = etd_weights(shells[s], h);
            tab.decay[s] = w.decay;
            tab.left[s] = w.left;
            tab.right[s] = w.right;
        }
        VectorField cur_n = nonlinear_term(U[j], V[j]);
        VectorField next(grid);
        for (int c = 0; c < d; ++c) {
            auto dst = next[c].coeffs();
            const auto b = out.back()[c].coeffs();
            const auto n0 = prev_n[c].coeffs();
            const auto n1 = cur_n[c].coeffs();
            for (std::size_t i = 0; i < dst.size(); ++i) {
                const std::uint32_t s = shell_of[i];
                dst[i] = tab.decay[s] * b[i] + tab.left[s] * n0[i] + tab.right[s] * n1[i];
            }
        }
        next.set_divergence_free(true);
        out.push_back(std::move(next));
        prev_n = std::move(cur_n);
    }
    return Trajectory(tg, std::move(out), Provenance::bilinear);
}

VectorField bilinear_B(const Trajectory& U, const Trajectory& V, std::size_t node) {
    if (node >= U.size()) throw ValidationError("bilinear_B: node index out of range");
    if (node == 0) {
        require_compatible(U, V, "bilinear_B");
        return VectorField(U.spectral_grid());
    }
    std::vector<double> nodes(U.time_grid().nodes().begin(),
                              U.time_grid().nodes().begin() + static_cast<std::ptrdiff_t>(node) + 1);
    const TimeGrid prefix = TimeGrid::from_nodes(nodes);
    std::vector<VectorField> uf;
    std::vector<VectorField> vf;
    for (std::size_t j = 0; j <= node; ++j) {
        uf.push_back(U[j]);
        vf.push_back(V[j]);
    }
    return bilinear_trajectory(Trajectory(prefix, std::move(uf)), Trajectory(prefix, std::move(vf))).back();
}

VectorField bilinear_B(const Trajectory& U, const Trajectory& V, double t) {
    const auto nodes = U.time_grid().nodes();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (std::abs(nodes[j] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return bilinear_B(U, V, j);
    }
    throw ValidationError("bilinear_B: t is not a node of the time grid");
}

BilinearEntry bilinear_ratio(const Trajectory& U, const Trajectory& V, const Trajectory& B,
                             const KatoIndex& idx, BilinearTarget target) {
    const double T = U.time_grid().horizon();
    KatoIndex in = idx;
    in.r = idx.q_tilde;
    in.horizon = T;
    KatoIndex outi = idx;
    outi.r = 1.0;
    outi.horizon = T;
    if (target == BilinearTarget::kato_q) outi.q_tilde = idx.q;

    BilinearEntry e;
    e.numerator = kato_weighted_sup(B, outi).value;
    const double nu = kato_weighted_sup(U, in).value;
    const double nv = &U == &V ? nu : kato_weighted_sup(V, in).value;
    e.denominator = std::pow(T, idx.time_power()) * nu * nv;
    if (!(e.denominator > 0.0)) {
        e.degenerate = true;
        e.ratio = 0.0;
    } else {
        e.ratio = e.numerator / e.denominator;
    }
    return e;
}

BilinearConstantReport estimate_bilinear_constant(
    std::span<const std::pair<Trajectory, Trajectory>> corpus, const KatoIndex& idx,
    BilinearTarget target) {
    if (corpus.empty()) throw ValidationError("estimate_bilinear_constant: empty corpus");
    if (target == BilinearTarget::kato_q) {
        check_existence_window(idx.dim, idx.s, idx.q, idx.q_tilde);
    } else {
        check_bilinear_window(idx.dim, idx.s, idx.q, idx.q_tilde);
    }
    BilinearConstantReport rep;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& [U, V] = corpus[i];
        const Trajectory B = bilinear_trajectory(U, V);
        BilinearEntry e = bilinear_ratio(U, V, B, idx, target);
        if (e.degenerate) {
            ++rep.degenerate_count;
        } else if (e.ratio > rep.max_ratio) {
            rep.max_ratio = e.ratio;
            rep.argmax = i;
        }
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace mildflow
