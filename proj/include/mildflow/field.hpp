#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mildflow/spectral_grid.hpp"

namespace mildflow {

using Complex = std::complex<double>;

/// Real scalar field held as Fourier-series coefficients:
/// f(x) = sum_k c_k exp(i k.x), so a constant field c has zero mode c.
/// Real fields satisfy c_{-k} = conj(c_k).
class ScalarField {
public:
    explicit ScalarField(SpectralGrid grid);
    ScalarField(SpectralGrid grid, std::vector<Complex> coeffs);

    const SpectralGrid& grid() const noexcept { return grid_; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::span<Complex> coeffs() noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    Complex zero_mode() const noexcept { return coeffs_[0]; }
    void set_zero_mode(Complex value) noexcept { coeffs_[0] = value; }

    Complex operator[](std::size_t flat) const noexcept { return coeffs_[flat]; }
    Complex& operator[](std::size_t flat) noexcept { return coeffs_[flat]; }

    double max_abs_coeff() const noexcept;
    /// True when the zero mode is negligible against the other coefficients.
    bool has_zero_mean(double rel_tol = 1e-12) const noexcept;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double factor) noexcept;
    /// this += factor * other
    ScalarField& axpy(double factor, const ScalarField& other);

private:
    SpectralGrid grid_;
    std::vector<Complex> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);

/// dim scalar components on one grid. The divergence_free flag records that
/// the field came out of the Leray projection (or an operator preserving it).
class VectorField {
public:
    explicit VectorField(const SpectralGrid& grid);
    explicit VectorField(std::vector<ScalarField> components, bool divergence_free = false);

    const SpectralGrid& grid() const noexcept { return components_.front().grid(); }
    int dim() const noexcept { return static_cast<int>(components_.size()); }

    const ScalarField& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
    ScalarField& operator[](int i) { return components_[static_cast<std::size_t>(i)]; }
    std::span<const ScalarField> components() const noexcept { return components_; }

    bool divergence_free() const noexcept { return divergence_free_; }
    void set_divergence_free(bool flag) noexcept { divergence_free_ = flag; }

    double max_abs_coeff() const noexcept;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double factor) noexcept;
    VectorField& axpy(double factor, const VectorField& other);

private:
    std::vector<ScalarField> components_;
    bool divergence_free_ = false;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double factor, VectorField a);

/// dim x dim components F_ij, row-major.
class TensorField {
public:
    explicit TensorField(const SpectralGrid& grid);

    const SpectralGrid& grid() const noexcept { return components_.front().grid(); }
    int dim() const noexcept { return dim_; }

    const ScalarField& operator()(int i, int j) const;
    ScalarField& operator()(int i, int j);

private:
    int dim_;
    std::vector<ScalarField> components_;
};

/// L2 norm over the box via Parseval: sqrt(V * sum |c_k|^2).
double spectral_l2_norm(const ScalarField& f);
double spectral_l2_norm(const VectorField& u);
/// ||a - b||_2 / ||b||_2, or ||a - b||_2 when b vanishes.
double relative_l2_distance(const VectorField& a, const VectorField& b);
double relative_l2_distance(const ScalarField& a, const ScalarField& b);
/// Largest |c_k - conj(c_{-k})| over the lattice.
double hermitian_defect(const ScalarField& f);

}  // namespace mildflow
