#include "mildflow/corpus.hpp"

#include <cmath>
#include <numbers>

#include "mildflow/errors.hpp"
#include "mildflow/operators.hpp"
#include "mildflow/transform.hpp"

namespace mildflow {

std::string_view to_string(CorpusFamily f) noexcept {
    switch (f) {
        case CorpusFamily::single_mode: return "single_mode";
        case CorpusFamily::gaussian_bump: return "gaussian_bump";
        case CorpusFamily::random_band_limited: return "random_band_limited";
        case CorpusFamily::truncated_power_law: return "truncated_power_law";
    }
    return "unknown";
}

CorpusFamily parse_family(std::string_view name) {
    for (CorpusFamily f : {CorpusFamily::single_mode, CorpusFamily::gaussian_bump,
                           CorpusFamily::random_band_limited, CorpusFamily::truncated_power_law}) {
        if (to_string(f) == name) return f;
    }
    throw ValidationError("unknown corpus family '" + std::string(name) + "'");
}

namespace {

void clear_mean(VectorField& u) {
    for (int c = 0; c < u.dim(); ++c) u[c].set_zero_mode(0.0);
}

VectorField single_mode(const CorpusSpec& spec, const SpectralGrid& grid) {
    const int d = grid.dim();
    const ModeIndex& m = spec.mode;
    if (d == 2 && m[2] != 0) throw ValidationError("single_mode: third index must be 0 in 2D");
    const double len = std::sqrt(double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2]);
    if (len == 0.0) throw ValidationError("single_mode: mode index must be nonzero");
    ModeIndex w = (m[0] != 0 || m[1] != 0) ? ModeIndex{-m[1], m[0], 0} : ModeIndex{m[2], 0, 0};
    const int half = grid.n() / 2;
    for (int a = 0; a < d; ++a) {
        if (std::abs(w[a]) >= half) throw ValidationError("single_mode: mode beyond the grid band");
    }
    ModeIndex neg{-w[0], -w[1], -w[2]};
    const std::size_t ip = grid.flat_index(w);
    const std::size_t in = grid.flat_index(neg);
    VectorField u(grid);
    for (int c = 0; c < d; ++c) {
        const double e = spec.amplitude * m[c] / len;
        if (e == 0.0) continue;
        u[c][ip] = Complex(0.0, -0.5 * e);
        u[c][in] = Complex(0.0, 0.5 * e);
    }
    u.set_divergence_free(true);
    return u;
}

VectorField random_band(const CorpusSpec& spec, const SpectralGrid& grid, UniformStream& rng) {
    const int d = grid.dim();
    const int B = spec.band_max;
    if (spec.band_min < 1 || B < spec.band_min) {
        throw ValidationError("random_band_limited: need 1 <= band_min <= band_max");
    }
    if (B >= grid.n() / 2) throw ValidationError("random_band_limited: band exceeds grid resolution");

    VectorField raw(grid);
    std::vector<std::size_t> touched;
    ModeIndex m{0, 0, 0};
    const int hi2 = d == 3 ? B : 0;
    for (m[0] = -B; m[0] <= B; ++m[0]) {
        for (m[1] = -B; m[1] <= B; ++m[1]) {
            for (m[2] = -hi2; m[2] <= hi2; ++m[2]) {
                const int r2 = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
                if (r2 < spec.band_min * spec.band_min || r2 > B * B) continue;
                const std::size_t i = grid.flat_index(m);
                touched.push_back(i);
                for (int c = 0; c < d; ++c) {
                    const double re = rng.symmetric();
                    const double im = rng.symmetric();
                    raw[c][i] = Complex(re, im);
                }
            }
        }
    }
    VectorField sym(grid);
    for (std::size_t i : touched) {
        const std::size_t j = grid.partner_index(i);
        for (int c = 0; c < d; ++c) sym[c][i] = 0.5 * (raw[c][i] + std::conj(raw[c][j]));
    }
    VectorField u = leray_project(sym);
    clear_mean(u);
    const double rms = spectral_l2_norm(u) / std::sqrt(grid.volume());
    if (!(rms > 0.0)) throw ValidationError("random_band_limited: band yields a zero field");
    u *= spec.amplitude / rms;
    u.set_divergence_free(true);
    return u;
}

VectorField gaussian_bump(const CorpusSpec& spec, const SpectralGrid& grid, UniformStream& rng,
                          bool centred) {
    if (!(spec.width > 0.0)) throw ValidationError("gaussian_bump: width must be positive");
    const int d = grid.dim();
    const double L = grid.box_length();
    const double w = spec.width * L;
    std::array<double, 3> centre{0.5 * L, 0.5 * L, 0.5 * L};
    if (!centred) {
        for (int a = 0; a < d; ++a) centre[a] = rng.next() * L;
    }
    std::array<double, 3> dir{0.0, 0.0, 0.0};
    double norm = 0.0;
    while (norm < 1e-3) {
        norm = 0.0;
        for (int a = 0; a < d; ++a) {
            dir[a] = rng.symmetric();
            norm += dir[a] * dir[a];
        }
        norm = std::sqrt(norm);
    }
    const std::vector<double> psi = sample_function(grid, [&](const std::array<double, 3>& x) {
        double acc = 0.0;
        const int i2 = d == 3 ? 1 : 0;
        for (int i = -1; i <= 1; ++i) {
            for (int j = -1; j <= 1; ++j) {
                for (int k = -i2; k <= i2; ++k) {
                    const double dx = x[0] - centre[0] + i * L;
                    const double dy = x[1] - centre[1] + j * L;
                    const double dz = d == 3 ? x[2] - centre[2] + k * L : 0.0;
                    acc += std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * w * w));
                }
            }
        }
        return acc;
    });
    const ScalarField f = from_physical(grid, psi);
    VectorField raw(grid);
    for (int a = 0; a < d; ++a) raw[a] = (dir[a] / norm) * f;
    VectorField u = leray_project(raw);
    clear_mean(u);
    u *= spec.amplitude;
    return u;
}

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[static_cast<std::size_t>(i)] = z;
        w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

// Mean of rho^{-a} over the cube [-c, c]^d: split into 2d cones over the
// faces, each contributing c/(d - a) times the face integral of rho^{-a}.
double singular_cell_average(int d, double c, double a) {
    std::vector<double> x, w;
    gauss_legendre(24, x, w);
    double face = 0.0;
    if (d == 2) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double y = c * x[i];
            face += w[i] * c * std::pow(c * c + y * y, -0.5 * a);
        }
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double y = c * x[i];
                const double z = c * x[j];
                face += w[i] * w[j] * c * c * std::pow(c * c + y * y + z * z, -0.5 * a);
            }
        }
    }
    const double integral = 2.0 * d * c / (d - a) * face;
    return integral / std::pow(2.0 * c, d);
}

}  // namespace

ScalarField power_law_profile(const SpectralGrid& grid, double a) {
    const int d = grid.dim();
    if (!(a > 0.0) || !(a < d)) throw ValidationError("power-law exponent must lie in (0, dim)");
    const double L = grid.box_length();
    const double R = 0.25 * L;
    const double h = L / grid.n();
    const double centre_value = singular_cell_average(d, 0.5 * h, a);
    const std::vector<double> samples = sample_function(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) r2 += (x[k] - 0.5 * L) * (x[k] - 0.5 * L);
        const double r = std::sqrt(r2);
        if (r >= R) return 0.0;
        if (r < 0.5 * h) return centre_value;
        const double cut = 1.0 - (r / R) * (r / R);
        return std::pow(r, -a) * cut * cut * cut;
    });
    ScalarField f = from_physical(grid, samples);
    f.set_zero_mode(0.0);
    return f;
}

std::vector<VectorField> generate_corpus(const CorpusSpec& spec, const SpectralGrid& grid) {
    if (spec.count < 1) throw ValidationError("corpus count must be at least 1");
    std::vector<VectorField> out;
    UniformStream rng(spec.seed);
    switch (spec.family) {
        case CorpusFamily::single_mode:
            out.push_back(single_mode(spec, grid));
            break;
        case CorpusFamily::random_band_limited:
            for (int i = 0; i < spec.count; ++i) out.push_back(random_band(spec, grid, rng));
            break;
        case CorpusFamily::gaussian_bump:
            for (int i = 0; i < spec.count; ++i) out.push_back(gaussian_bump(spec, grid, rng, i == 0));
            break;
        case CorpusFamily::truncated_power_law: {
            VectorField raw(grid);
            raw[0] = power_law_profile(grid, spec.exponent);
            VectorField u = leray_project(raw);
            clear_mean(u);
            u *= spec.amplitude;
            out.push_back(std::move(u));
            break;
        }
    }
    return out;
}

}  // namespace mildflow
