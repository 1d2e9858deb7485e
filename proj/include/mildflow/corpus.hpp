#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mildflow/field.hpp"

namespace mildflow {

enum class CorpusFamily { single_mode, gaussian_bump, random_band_limited, truncated_power_law };

std::string_view to_string(CorpusFamily f) noexcept;
/// Throws ValidationError for unknown names.
CorpusFamily parse_family(std::string_view name);

struct CorpusSpec {
    CorpusFamily family = CorpusFamily::random_band_limited;
    ModeIndex mode{1, 0, 0};   ///< single_mode lattice index
    double width = 0.1;        ///< gaussian_bump standard deviation, in units of L
    int band_min = 1;          ///< random_band_limited: band_min <= |m| <= band_max
    int band_max = 4;
    double exponent = 2.0 / 3.0;  ///< truncated_power_law: |x - x0|^{-exponent}
    double amplitude = 1.0;
    int count = 1;
    std::uint64_t seed = 1;
};

/// Deterministic in (spec, grid). Every field is real, zero-mean and
/// divergence-free.
///
/// single_mode: amplitude * (m/|m|) sin(k'.x), k' the lattice vector of m
///   rotated by 90 degrees in the (x1, x2) plane, so m = (1,0) gives (sin x2, 0)
///   on a 2 pi box. One field regardless of count.
/// gaussian_bump: Leray projection of a periodised Gaussian times a random
///   unit direction; the first bump is centred, later ones at random centres.
/// random_band_limited: uniform random coefficients on the modes of the band,
///   drawn in a fixed lexicographic order (so the field does not depend on the
///   resolution), projected and scaled to RMS amplitude.
/// truncated_power_law: Leray projection of power_law_profile times e_1.
std::vector<VectorField> generate_corpus(const CorpusSpec& spec, const SpectralGrid& grid);

/// |x - x0|^{-a} (1 - (|x - x0|/R)^2)^3_+ with x0 the box centre, R = L/4; the
/// grid cell holding x0 takes the exact cell average of |x - x0|^{-a}. The
/// mean is removed. Requires 0 < a < dim.
ScalarField power_law_profile(const SpectralGrid& grid, double a);

/// Uniform [0,1) doubles from a 64-bit Mersenne twister, platform independent
/// (std::uniform_real_distribution is not).
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double symmetric() { return 2.0 * next() - 1.0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace mildflow
