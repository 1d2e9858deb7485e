#pragma once

#include "mildflow/field.hpp"

namespace mildflow {

// Constant-coefficient spectral multipliers. All take immutable inputs and
// return fresh fields; outputs of real inputs stay Hermitian.
//
// Zero mode: positive orders send it to 0, negative orders and the Riesz
// transforms reject a non-negligible zero mode (ValidationError). Operators
// whose symbol is odd or direction-dependent (Riesz, derivatives, Leray)
// zero the Nyquist rows.

/// coeff(k) -> |k|^s coeff(k).
ScalarField fractional_laplacian(const ScalarField& f, double s);
VectorField fractional_laplacian(const VectorField& u, double s);

/// coeff(k) -> exp(-|k|^2 t) coeff(k); t >= 0.
ScalarField heat_propagate(const ScalarField& f, double t);
VectorField heat_propagate(const VectorField& u, double t);

/// coeff(k) -> (i k_j / |k|) coeff(k).
ScalarField riesz_transform(const ScalarField& f, int axis);

/// Per wavenumber, u_j -> sum_k (delta_jk - k_j k_k / |k|^2) u_k. The zero
/// mode is left unchanged; the output carries divergence_free = true.
VectorField leray_project(const VectorField& u);

/// coeff(k) -> i k_j coeff(k).
ScalarField partial_derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& phi);
ScalarField divergence(const VectorField& u);
/// max_k |sum_j i k_j u_j(k)|.
double max_divergence(const VectorField& u);
/// max_divergence(u) <= rel_tol * max|u(k)|.
bool is_divergence_free(const VectorField& u, double rel_tol = 1e-10);

/// Zeroes every mode outside the 2/3-rule band.
ScalarField dealias(const ScalarField& f);

/// (u (x) v)_ij = u_i v_j, formed pointwise in physical space from the
/// 2/3-truncated inputs and truncated again before returning.
TensorField tensor_product(const VectorField& u, const VectorField& v);

/// (div F)_i = sum_j d_j F_ij.
VectorField divergence_tensor(const TensorField& F);

}  // namespace mildflow
