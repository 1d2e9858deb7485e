#include "mildflow/field.hpp"

#include <algorithm>
#include <cmath>

#include "mildflow/errors.hpp"

namespace mildflow {

ScalarField::ScalarField(SpectralGrid grid)
    : grid_(std::move(grid)), coeffs_(grid_.size(), Complex{0.0, 0.0}) {}

ScalarField::ScalarField(SpectralGrid grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size()) {
        throw ValidationError("coefficient array does not match grid size");
    }
}

double ScalarField::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool ScalarField::has_zero_mean(double rel_tol) const noexcept {
    double rest = 0.0;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) rest = std::max(rest, std::abs(coeffs_[i]));
    const double zero = std::abs(coeffs_[0]);
    return zero == 0.0 || zero <= rel_tol * rest;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) { return axpy(1.0, other); }
ScalarField& ScalarField::operator-=(const ScalarField& other) { return axpy(-1.0, other); }

ScalarField& ScalarField::operator*=(double factor) noexcept {
    for (Complex& c : coeffs_) c *= factor;
    return *this;
}

ScalarField& ScalarField::axpy(double factor, const ScalarField& other) {
    require_same_grid(grid_, other.grid_, "scalar field arithmetic");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += factor * other.coeffs_[i];
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

VectorField::VectorField(const SpectralGrid& grid) {
    components_.reserve(static_cast<std::size_t>(grid.dim()));
    for (int i = 0; i < grid.dim(); ++i) components_.emplace_back(grid);
    divergence_free_ = true;
}

VectorField::VectorField(std::vector<ScalarField> components, bool divergence_free)
    : components_(std::move(components)), divergence_free_(divergence_free) {
    if (components_.empty()) throw ValidationError("vector field needs components");
    const SpectralGrid& g = components_.front().grid();
    if (static_cast<int>(components_.size()) != g.dim()) {
        throw ValidationError("vector field must have one component per axis");
    }
    for (const ScalarField& c : components_) require_same_grid(g, c.grid(), "vector field");
}

double VectorField::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const ScalarField& c : components_) m = std::max(m, c.max_abs_coeff());
    return m;
}

VectorField& VectorField::operator+=(const VectorField& other) { return axpy(1.0, other); }
VectorField& VectorField::operator-=(const VectorField& other) { return axpy(-1.0, other); }

VectorField& VectorField::operator*=(double factor) noexcept {
    for (ScalarField& c : components_) c *= factor;
    return *this;
}

VectorField& VectorField::axpy(double factor, const VectorField& other) {
    if (other.dim() != dim()) throw ValidationError("vector fields differ in dimension");
    for (std::size_t i = 0; i < components_.size(); ++i) {
        components_[i].axpy(factor, other.components_[i]);
    }
    divergence_free_ = divergence_free_ && other.divergence_free_;
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double factor, VectorField a) { return a *= factor; }

TensorField::TensorField(const SpectralGrid& grid) : dim_(grid.dim()) {
    components_.reserve(static_cast<std::size_t>(dim_ * dim_));
    for (int i = 0; i < dim_ * dim_; ++i) components_.emplace_back(grid);
}

const ScalarField& TensorField::operator()(int i, int j) const {
    return components_[static_cast<std::size_t>(i * dim_ + j)];
}

ScalarField& TensorField::operator()(int i, int j) {
    return components_[static_cast<std::size_t>(i * dim_ + j)];
}

double spectral_l2_norm(const ScalarField& f) {
    double sum = 0.0;
    for (const Complex& c : f.coeffs()) sum += std::norm(c);
    return std::sqrt(f.grid().volume() * sum);
}

double spectral_l2_norm(const VectorField& u) {
    double sum = 0.0;
    for (const ScalarField& c : u.components()) {
        const double n = spectral_l2_norm(c);
        sum += n * n;
    }
    return std::sqrt(sum);
}

double relative_l2_distance(const ScalarField& a, const ScalarField& b) {
    const double diff = spectral_l2_norm(a - b);
    const double ref = spectral_l2_norm(b);
    return ref > 0.0 ? diff / ref : diff;
}

double relative_l2_distance(const VectorField& a, const VectorField& b) {
    const double diff = spectral_l2_norm(a - b);
    const double ref = spectral_l2_norm(b);
    return ref > 0.0 ? diff / ref : diff;
}

double hermitian_defect(const ScalarField& f) {
    const SpectralGrid& g = f.grid();
    double defect = 0.0;
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        const std::size_t p = g.partner_index(flat);
        defect = std::max(defect, std::abs(f[flat] - std::conj(f[p])));
    }
    return defect;
}

}  // namespace mildflow
