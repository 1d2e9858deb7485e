#include "mildflow/operators.hpp"

#include <cmath>
#include <string>

#include "mildflow/errors.hpp"
#include "mildflow/transform.hpp"

namespace mildflow {
namespace {

void require_zero_mean(const ScalarField& f, const char* op) {
    if (!f.has_zero_mean()) {
        throw ValidationError(std::string(op) +
                              ": homogeneous operator is undefined on a nonzero zero mode");
    }
}

void require_axis(const SpectralGrid& g, int axis) {
    if (axis < 0 || axis >= g.dim()) {
        throw ValidationError("axis " + std::to_string(axis) + " out of range");
    }
}

}  // namespace

ScalarField fractional_laplacian(const ScalarField& f, double s) {
    if (!std::isfinite(s)) throw ValidationError("fractional_laplacian: order must be finite");
    if (s == 0.0) return f;
    if (s < 0.0) require_zero_mean(f, "fractional_laplacian");
    const SpectralGrid& g = f.grid();
    const auto k2 = g.k_squared();
    ScalarField out(g);
    for (std::size_t i = 1; i < g.size(); ++i) out[i] = std::pow(k2[i], 0.5 * s) * f[i];
    return out;
}

VectorField fractional_laplacian(const VectorField& u, double s) {
    std::vector<ScalarField> c;
    for (const ScalarField& ui : u.components()) c.push_back(fractional_laplacian(ui, s));
    return VectorField(std::move(c), u.divergence_free());
}

ScalarField heat_propagate(const ScalarField& f, double t) {
    if (!(t >= 0.0)) throw ValidationError("heat_propagate: time must be nonnegative");
    if (t == 0.0) return f;
    const SpectralGrid& g = f.grid();
    const auto shells = g.unique_k_squared();
    const auto shell = g.shell_index();
    std::vector<double> factor(shells.size());
    for (std::size_t s = 0; s < shells.size(); ++s) factor[s] = std::exp(-shells[s] * t);
    ScalarField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = factor[shell[i]] * f[i];
    return out;
}

VectorField heat_propagate(const VectorField& u, double t) {
    std::vector<ScalarField> c;
    for (const ScalarField& ui : u.components()) c.push_back(heat_propagate(ui, t));
    return VectorField(std::move(c), u.divergence_free());
}

ScalarField riesz_transform(const ScalarField& f, int axis) {
    const SpectralGrid& g = f.grid();
    require_axis(g, axis);
    require_zero_mean(f, "riesz_transform");
    const auto k = g.k_axis(axis);
    const auto k2 = g.k_squared();
    const auto nyq = g.nyquist();
    ScalarField out(g);
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (nyq[i]) continue;
        out[i] = Complex(0.0, k[i] / std::sqrt(k2[i])) * f[i];
    }
    return out;
}

VectorField leray_project(const VectorField& u) {
    const SpectralGrid& g = u.grid();
    const int d = u.dim();
    const auto k2 = g.k_squared();
    const auto nyq = g.nyquist();
    std::array<std::span<const double>, 3> k{};
    for (int a = 0; a < d; ++a) k[a] = g.k_axis(a);

    VectorField out(g);
    for (int j = 0; j < d; ++j) out[j][0] = u[j][0];
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (nyq[i]) continue;
        Complex k_dot_u{0.0, 0.0};
        for (int a = 0; a < d; ++a) k_dot_u += k[a][i] * u[a][i];
        const Complex scaled = k_dot_u / k2[i];
        for (int j = 0; j < d; ++j) out[j][i] = u[j][i] - k[j][i] * scaled;
    }
    out.set_divergence_free(true);
    return out;
}

ScalarField partial_derivative(const ScalarField& f, int axis) {
    const SpectralGrid& g = f.grid();
    require_axis(g, axis);
    const auto k = g.k_axis(axis);
    const auto nyq = g.nyquist();
    ScalarField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (nyq[i]) continue;
        out[i] = Complex(0.0, k[i]) * f[i];
    }
    return out;
}

VectorField gradient(const ScalarField& phi) {
    std::vector<ScalarField> c;
    for (int a = 0; a < phi.grid().dim(); ++a) c.push_back(partial_derivative(phi, a));
    return VectorField(std::move(c), false);
}

ScalarField divergence(const VectorField& u) {
    ScalarField out(u.grid());
    for (int a = 0; a < u.dim(); ++a) out += partial_derivative(u[a], a);
    return out;
}

double max_divergence(const VectorField& u) {
    const SpectralGrid& g = u.grid();
    std::array<std::span<const double>, 3> k{};
    for (int a = 0; a < u.dim(); ++a) k[a] = g.k_axis(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Complex div{0.0, 0.0};
        for (int a = 0; a < u.dim(); ++a) div += Complex(0.0, k[a][i]) * u[a][i];
        worst = std::max(worst, std::abs(div));
    }
    return worst;
}

bool is_divergence_free(const VectorField& u, double rel_tol) {
    return max_divergence(u) <= rel_tol * u.max_abs_coeff();
}

ScalarField dealias(const ScalarField& f) {
    const auto mask = f.grid().dealias_mask();
    ScalarField out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (mask[i]) out[i] = f[i];
    }
    return out;
}

TensorField tensor_product(const VectorField& u, const VectorField& v) {
    require_same_grid(u.grid(), v.grid(), "tensor_product");
    const SpectralGrid& g = u.grid();
    const int d = u.dim();
    std::vector<std::vector<double>> up, vp;
    for (int i = 0; i < d; ++i) {
        up.push_back(to_physical(dealias(u[i])));
        vp.push_back(to_physical(dealias(v[i])));
    }
    TensorField out(g);
    std::vector<double> product(g.size());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (std::size_t x = 0; x < g.size(); ++x) product[x] = up[i][x] * vp[j][x];
            out(i, j) = dealias(from_physical(g, product));
        }
    }
    return out;
}

VectorField divergence_tensor(const TensorField& F) {
    const SpectralGrid& g = F.grid();
    std::vector<ScalarField> c;
    for (int i = 0; i < F.dim(); ++i) {
        ScalarField row(g);
        for (int j = 0; j < F.dim(); ++j) row += partial_derivative(F(i, j), j);
        c.push_back(std::move(row));
    }
    return VectorField(std::move(c), false);
}

}  // namespace mildflow
