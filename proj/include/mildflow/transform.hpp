#pragma once

#include <span>
#include <vector>

#include "mildflow/field.hpp"

namespace mildflow {

/// Samples f(x) at the n^dim grid points (row-major, axis 0 slowest).
/// The imaginary residue of the inverse transform is discarded.
std::vector<double> to_physical(const ScalarField& f);

/// Full complex inverse transform; for Hermitian input the imaginary part is
/// rounding noise.
std::vector<Complex> to_physical_complex(const ScalarField& f);

/// Fourier-series coefficients of real samples: c_k = N^{-1} sum_x f(x) e^{-ik.x}.
/// Throws ValidationError when samples.size() != grid.size().
ScalarField from_physical(const SpectralGrid& grid, std::span<const double> samples);

/// Builds samples by evaluating fn(x) at every grid point; x has grid.dim()
/// meaningful entries.
template <typename Fn>
std::vector<double> sample_function(const SpectralGrid& grid, Fn&& fn) {
    std::vector<double> out(grid.size());
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        for (int a = 0; a < grid.dim(); ++a) x[a] = grid.coordinate(flat, a);
        out[flat] = fn(x);
    }
    return out;
}

}  // namespace mildflow
