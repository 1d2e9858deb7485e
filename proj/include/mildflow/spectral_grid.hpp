#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace mildflow {

/// Signed lattice multi-index m; unused trailing axes are zero.
using ModeIndex = std::array<int, 3>;

/// Periodic box [0, L)^dim sampled by n points per axis.
///
/// Spectral coefficients are stored on the full lattice in row-major order
/// (axis 0 slowest), matching the layout of the n^dim physical samples.
/// Storage position i along an axis carries the signed mode
/// m = i for i < n/2 and m = i - n otherwise, so m ranges over [-n/2, n/2).
/// Rows with some m_j = -n/2 are the Nyquist rows.
///
/// The wavenumber of a mode is k = (2 pi / L) m. Lookup tables (k_j, |k|^2,
/// Nyquist flags, dealiasing mask) are built once and shared between copies.
class SpectralGrid {
public:
    SpectralGrid(int dim, int n_per_axis, double box_length);

    int dim() const noexcept { return dim_; }
    int n() const noexcept { return n_; }
    double box_length() const noexcept { return box_length_; }
    std::size_t size() const noexcept { return size_; }
    double cell_volume() const noexcept { return cell_volume_; }
    double volume() const noexcept;
    double wavenumber_unit() const noexcept;

    std::span<const double> k_axis(int axis) const;
    std::span<const double> k_squared() const;
    std::span<const std::uint8_t> nyquist() const;
    /// 1 where the 2/3 rule keeps the mode (|m_j| <= K with 3K < n on every axis).
    std::span<const std::uint8_t> dealias_mask() const;

    /// Distinct |k|^2 values and, per flat index, the position of its value in
    /// that list. Lets per-wavenumber weights be computed once per shell.
    std::span<const double> unique_k_squared() const;
    std::span<const std::uint32_t> shell_index() const;

    ModeIndex mode_of(std::size_t flat) const;
    /// Flat position of a signed mode; each m_j must lie in [-n/2, n/2).
    std::size_t flat_index(const ModeIndex& m) const;
    /// Flat position of -m (mod n), the Hermitian partner.
    std::size_t partner_index(std::size_t flat) const;

    /// Physical coordinate of sample `flat` along `axis`.
    double coordinate(std::size_t flat, int axis) const;

    friend bool operator==(const SpectralGrid& a, const SpectralGrid& b) noexcept {
        return a.dim_ == b.dim_ && a.n_ == b.n_ && a.box_length_ == b.box_length_;
    }

private:
    struct Tables;

    int dim_;
    int n_;
    double box_length_;
    std::size_t size_;
    double cell_volume_;
    std::shared_ptr<const Tables> tables_;
};

/// Throws ValidationError when the grids differ.
void require_same_grid(const SpectralGrid& a, const SpectralGrid& b, const char* what);

}  // namespace mildflow
