#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "mildflow/errors.hpp"
#include "mildflow/field_io.hpp"
#include "mildflow/operators.hpp"
#include "mildflow/transform.hpp"
#include "support.hpp"

using namespace mildflow;
using namespace testing_support;

TEST_CASE("grid geometry") {
    const SpectralGrid g(2, 16, 3.0);
    CHECK(g.size() == 256);
    CHECK(g.cell_volume() * 256 == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(g.mode_of(g.flat_index({-8, 7, 0})) == ModeIndex{-8, 7, 0});
    CHECK(g.nyquist()[g.flat_index({-8, 3, 0})] == 1);
    CHECK(g.nyquist()[g.flat_index({7, 3, 0})] == 0);
    CHECK(g.k_axis(0)[g.flat_index({2, 0, 0})] == doctest::Approx(2.0 * kTwoPi / 3.0));
    CHECK_THROWS_AS(SpectralGrid(4, 16, 1.0), ValidationError);
    CHECK_THROWS_AS(SpectralGrid(2, 15, 1.0), ValidationError);
    CHECK_THROWS_AS(SpectralGrid(2, 16, -1.0), ValidationError);

    const SpectralGrid g3(3, 8, kTwoPi);
    CHECK(g3.cell_volume() * 512 == doctest::Approx(std::pow(kTwoPi, 3)).epsilon(1e-14));
}

TEST_CASE("transform: constant maps to the zero mode") {
    const SpectralGrid g(2, 16, kTwoPi);
    const ScalarField f = from_physical(g, std::vector<double>(g.size(), 2.5));
    CHECK(f.zero_mode().real() == doctest::Approx(2.5).epsilon(1e-15));
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(std::abs(f[i]) < 1e-15);
}

TEST_CASE("transform: one sine gives two half-unit coefficients") {
    const double L = 3.0;
    const SpectralGrid g(2, 32, L);
    const auto x = sample_function(g, [&](const std::array<double, 3>& p) { return std::sin(kTwoPi * p[0] / L); });
    const ScalarField f = from_physical(g, x);
    const std::size_t plus = g.flat_index({1, 0, 0});
    const std::size_t minus = g.flat_index({-1, 0, 0});
    int nonzero = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f[i]) > 1e-13) ++nonzero;
    }
    CHECK(nonzero == 2);
    CHECK(std::abs(f[plus]) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(f[minus]) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("transform: round trip and shape errors") {
    UniformStream rng(11);
    for (int dim : {2, 3}) {
        const SpectralGrid g(dim, dim == 2 ? 32 : 8, 1.7);
        const std::vector<double> x = random_samples(g.size(), rng);
        const std::vector<double> back = to_physical(from_physical(g, x));
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            err = std::max(err, std::abs(back[i] - x[i]));
            scale = std::max(scale, std::abs(x[i]));
        }
        CHECK(err / scale < 1e-12);
        CHECK_THROWS_AS(from_physical(g, std::vector<double>(g.size() + 1)), ValidationError);
    }
}

TEST_CASE("fractional laplacian") {
    const SpectralGrid g(2, 16, kTwoPi);
    UniformStream rng(3);
    const ScalarField f = random_scalar(g, rng);
    CHECK(rel_coeff_diff(fractional_laplacian(f, 0.0), f) == 0.0);

    ScalarField mode(g);
    put_mode(mode, {2, 0, 0}, Complex(0.3, -0.1));
    const ScalarField d = fractional_laplacian(mode, 1.0);
    CHECK(std::abs(d[g.flat_index({2, 0, 0})] - Complex(0.6, -0.2)) < 1e-15);

    for (double s : {0.5, 1.3, 2.0}) {
        CHECK(rel_coeff_diff(fractional_laplacian(fractional_laplacian(f, s), -s), f) < 1e-12);
    }

    ScalarField with_mean = f;
    with_mean.set_zero_mode(1.0);
    CHECK_THROWS_AS(fractional_laplacian(with_mean, -0.5), ValidationError);
    CHECK(fractional_laplacian(with_mean, 0.5).zero_mode() == Complex(0.0));
}

TEST_CASE("heat propagator") {
    const SpectralGrid g(2, 16, kTwoPi);
    UniformStream rng(5);
    const VectorField u = random_vector(g, rng, false);
    CHECK(rel_coeff_diff(heat_propagate(u, 0.0), u) == 0.0);

    ScalarField mode(g);
    put_mode(mode, {1, 0, 0}, Complex(1.0, 0.0));
    CHECK(heat_propagate(mode, 0.5)[g.flat_index({1, 0, 0})].real() ==
          doctest::Approx(0.6065306597126334).epsilon(1e-15));

    const VectorField sh = shear(g);
    CHECK(heat_propagate(sh, 0.3).divergence_free());
    CHECK(heat_propagate(u, 0.3)[0].zero_mode() == u[0].zero_mode());
    CHECK_THROWS_AS(heat_propagate(u, -1e-3), ValidationError);
}

TEST_CASE("heat flow of a Gaussian matches the periodised closed form") {
    const double L = kTwoPi;
    const SpectralGrid g(2, 128, L);
    const double sigma = 0.5;
    const double t = 0.2;
    auto gaussian = [&](double var, double amp) {
        return sample_function(g, [&](const std::array<double, 3>& x) {
            double acc = 0.0;
            for (int i = -2; i <= 2; ++i) {
                for (int j = -2; j <= 2; ++j) {
                    const double dx = x[0] - L / 2 + i * L;
                    const double dy = x[1] - L / 2 + j * L;
                    acc += std::exp(-(dx * dx + dy * dy) / (2.0 * var));
                }
            }
            return amp * acc;
        });
    };
    const ScalarField f0 = from_physical(g, gaussian(sigma * sigma, 1.0));
    const double var_t = sigma * sigma + 2.0 * t;
    const ScalarField exact = from_physical(g, gaussian(var_t, sigma * sigma / var_t));
    const ScalarField evolved = heat_propagate(f0, t);
    const double err = spectral_l2_norm(evolved - exact);
    CHECK(err <= 1e-6);
}

TEST_CASE("riesz transforms") {
    const SpectralGrid g(2, 16, kTwoPi);
    ScalarField e(g);
    e[g.flat_index({1, 0, 0})] = 1.0;
    CHECK(std::abs(riesz_transform(e, 0)[g.flat_index({1, 0, 0})] - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(riesz_transform(e, 1)[g.flat_index({1, 0, 0})]) < 1e-15);

    UniformStream rng(8);
    const ScalarField f = random_scalar(g, rng);
    ScalarField sum(g);
    for (int j = 0; j < 2; ++j) sum += riesz_transform(riesz_transform(f, j), j);
    // Nyquist rows are zeroed by the transforms, so compare off them
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nyquist()[i]) continue;
        err = std::max(err, std::abs(sum[i] + f[i]));
    }
    CHECK(err / f.max_abs_coeff() < 1e-12);

    const ScalarField r1 = riesz_transform(f, 0);
    const auto z = to_physical_complex(r1);
    double imag = 0.0, real = 0.0;
    for (const Complex& c : z) {
        imag = std::max(imag, std::abs(c.imag()));
        real = std::max(real, std::abs(c.real()));
    }
    CHECK(imag / real < 1e-12);

    ScalarField with_mean = f;
    with_mean.set_zero_mode(0.2);
    CHECK_THROWS_AS(riesz_transform(with_mean, 0), ValidationError);
    CHECK_THROWS_AS(riesz_transform(f, 2), ValidationError);
}

TEST_CASE("leray projection") {
    const SpectralGrid g(2, 16, kTwoPi);
    UniformStream rng(21);
    const ScalarField phi = random_scalar(g, rng);
    const VectorField grad = gradient(phi);
    CHECK(leray_project(grad).max_abs_coeff() < 1e-12 * grad.max_abs_coeff());

    const VectorField sh = shear(g);
    CHECK(rel_coeff_diff(leray_project(sh), sh) < 1e-12);

    VectorField u(g);
    u[0][g.flat_index({1, 1, 0})] = 1.0;
    const VectorField pu = leray_project(u);
    CHECK(std::abs(pu[0][g.flat_index({1, 1, 0})] - 0.5) < 1e-15);
    CHECK(std::abs(pu[1][g.flat_index({1, 1, 0})] + 0.5) < 1e-15);
    CHECK(pu.divergence_free());

    VectorField with_mean = random_vector(g, rng, false);
    CHECK(leray_project(with_mean)[1].zero_mode() == with_mean[1].zero_mode());
}

TEST_CASE("tensor product") {
    const SpectralGrid g(2, 32, kTwoPi);
    const VectorField sh = shear(g);
    const TensorField zero = tensor_product(sh, VectorField(g));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(zero(i, j).max_abs_coeff() == 0.0);
    }

    const TensorField F = tensor_product(sh, sh);
    CHECK(std::abs(F(0, 0).zero_mode() - 0.5) < 1e-14);
    CHECK(std::abs(F(0, 0)[g.flat_index({0, 2, 0})] + 0.25) < 1e-14);
    CHECK(std::abs(F(0, 0)[g.flat_index({0, -2, 0})] + 0.25) < 1e-14);
    ScalarField expected(g);
    expected.set_zero_mode(0.5);
    put_mode(expected, {0, 2, 0}, -0.25);
    CHECK(max_abs_diff(F(0, 0), expected) < 1e-14);
    CHECK(F(0, 1).max_abs_coeff() < 1e-15);
    CHECK(F(1, 0).max_abs_coeff() < 1e-15);
    CHECK(F(1, 1).max_abs_coeff() < 1e-15);

    UniformStream rng(4);
    const VectorField u = random_vector(g, rng);
    const VectorField v = random_vector(g, rng);
    const TensorField uv = tensor_product(u, v);
    const TensorField vu = tensor_product(v, u);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(rel_coeff_diff(uv(i, j), vu(j, i)) < 1e-12);
    }
    const SpectralGrid other(2, 16, kTwoPi);
    CHECK_THROWS_AS(tensor_product(u, VectorField(other)), ValidationError);
}

TEST_CASE("tensor divergence") {
    const SpectralGrid g(2, 16, kTwoPi);
    TensorField c(g);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) c(i, j).set_zero_mode(1.5 + i - j);
    }
    CHECK(divergence_tensor(c).max_abs_coeff() == 0.0);

    const VectorField sh = shear(g);
    CHECK(divergence_tensor(tensor_product(sh, sh)).max_abs_coeff() < 1e-14);

    TensorField one(g);
    one(0, 1)[g.flat_index({0, 1, 0})] = 1.0;
    const VectorField d = divergence_tensor(one);
    CHECK(std::abs(d[0][g.flat_index({0, 1, 0})] - Complex(0.0, 1.0)) < 1e-15);
    CHECK(d[1].max_abs_coeff() == 0.0);
}

TEST_CASE("property: operator identities on random fields") {
    UniformStream rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = trial % 4 == 3 ? 3 : 2;
        const SpectralGrid g(dim, dim == 2 ? 16 : 8, 1.0 + rng.next() * 6.0);
        const VectorField u = random_vector(g, rng);
        const VectorField pu = leray_project(u);
        CHECK(rel_coeff_diff(leray_project(pu), pu) < 1e-12);
        CHECK(max_divergence(pu) <= 1e-10 * pu.max_abs_coeff());

        const double t1 = rng.next() * 0.1, t2 = rng.next() * 0.1;
        CHECK(rel_coeff_diff(heat_propagate(heat_propagate(u, t1), t2), heat_propagate(u, t1 + t2)) < 1e-12);
        CHECK(spectral_l2_norm(heat_propagate(u, t1)) <= spectral_l2_norm(u));

        const double s1 = rng.symmetric() * 1.5, s2 = rng.symmetric() * 1.5;
        const ScalarField f = u[0];
        CHECK(rel_coeff_diff(fractional_laplacian(fractional_laplacian(f, s1), s2),
                             fractional_laplacian(f, s1 + s2)) < 1e-12);

        auto hermitian = [](const ScalarField& x) { return hermitian_defect(x) <= 1e-12 * x.max_abs_coeff(); };
        for (const ScalarField& c : pu.components()) CHECK(hermitian(c));
        CHECK(hermitian(fractional_laplacian(f, s1)));
        CHECK(hermitian(riesz_transform(f, 0)));
        const TensorField F = tensor_product(u, pu);
        CHECK(hermitian(F(0, 1)));
        CHECK(hermitian(divergence_tensor(F)[0]));
    }
}

TEST_CASE("spectral dump round trip") {
    const SpectralGrid g(3, 8, 2.0);
    UniformStream rng(9);
    const VectorField u = leray_project(random_vector(g, rng));
    std::stringstream ss;
    write_spectral_dump(ss, u);
    const VectorField back = read_spectral_dump(ss);
    CHECK(back.grid() == g);
    CHECK(back.divergence_free());
    CHECK(rel_coeff_diff(back, u) == 0.0);

    std::stringstream bad("# mildflow-spectral v1\ngrid 2 8\n");
    CHECK_THROWS_AS(read_spectral_dump(bad), ValidationError);
    CHECK_THROWS_AS(load_spectral_dump("/nonexistent/dir/file.txt"), IoError);
}
