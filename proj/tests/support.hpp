#pragma once

// Hand-rolled generators for the property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "mildflow/corpus.hpp"
#include "mildflow/field.hpp"
#include "mildflow/operators.hpp"
#include "mildflow/transform.hpp"

namespace testing_support {

using namespace mildflow;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::vector<double> random_samples(std::size_t n, UniformStream& rng) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.symmetric();
    return x;
}

/// Real field with every lattice mode populated (Nyquist rows included).
inline ScalarField random_scalar(const SpectralGrid& g, UniformStream& rng, bool zero_mean = true) {
    ScalarField f = from_physical(g, random_samples(g.size(), rng));
    if (zero_mean) f.set_zero_mode(0.0);
    return f;
}

inline VectorField random_vector(const SpectralGrid& g, UniformStream& rng, bool zero_mean = true) {
    VectorField u(g);
    for (int c = 0; c < g.dim(); ++c) u[c] = random_scalar(g, rng, zero_mean);
    u.set_divergence_free(false);
    return u;
}

/// Smooth divergence-free field: random coefficients on |m| <= band.
inline VectorField smooth_solenoidal(const SpectralGrid& g, std::uint64_t seed, int band = 4,
                                     double amplitude = 1.0) {
    CorpusSpec spec;
    spec.family = CorpusFamily::random_band_limited;
    spec.band_min = 1;
    spec.band_max = band;
    spec.seed = seed;
    spec.amplitude = amplitude;
    return generate_corpus(spec, g).front();
}

/// Sets coefficient c at mode m and its conjugate at -m.
inline void put_mode(ScalarField& f, const ModeIndex& m, Complex c) {
    const SpectralGrid& g = f.grid();
    const std::size_t i = g.flat_index(m);
    f[i] = c;
    f[g.partner_index(i)] = std::conj(c);
}

/// (sin x2, 0[, 0]) on a 2 pi box.
inline VectorField shear(const SpectralGrid& g, double amplitude = 1.0) {
    VectorField u(g);
    put_mode(u[0], {0, 1, 0}, Complex(0.0, -0.5 * amplitude));
    u.set_divergence_free(true);
    return u;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Max coefficient difference relative to the larger field.
inline double rel_coeff_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
    const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
    return scale == 0.0 ? m : m / scale;
}

inline double rel_coeff_diff(const ScalarField& a, const ScalarField& b) {
    const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
    const double m = max_abs_diff(a, b);
    return scale == 0.0 ? m : m / scale;
}

}  // namespace testing_support
