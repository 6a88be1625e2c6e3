// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_GRID_HPP
#define CHEMNS_GRID_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace chemns {

using Complex = std::complex<double>;

/// Uniform periodic collocation grid on the box [0,L_0) x ... x [0,L_{dim-1})
/// together with its discrete Fourier machinery: integer frequencies,
/// physical wavenumbers k_i = 2*pi*m_i/L_i, the 2/3-rule dealiasing mask and
/// cached transform plans.
///
/// Transforms are normalized so that forward() returns mode amplitudes:
/// a pure harmonic cos(k.x) has coefficients 1/2 at +-k. inverse() is the
/// plain synthesis sum, so inverse(forward(f)) == f up to roundoff.
///
/// Immutable after construction and shareable across threads; the transform
/// entry points are const and re-entrant.
class SpectralGrid {
  public:
    /// sizes: per-axis point counts (even, >= 8, 2 or 3 axes);
    /// lengths: per-axis periods (> 0). Throws ConfigError on violation.
    SpectralGrid(std::vector<int> sizes, std::vector<double> lengths);
    ~SpectralGrid();

    SpectralGrid(const SpectralGrid&) = delete;
    SpectralGrid& operator=(const SpectralGrid&) = delete;

    int dim() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& lengths() const { return lengths_; }
    std::int64_t total() const { return total_; }

    double spacing(int axis) const { return lengths_[axis] / sizes_[axis]; }
    double min_spacing() const;
    /// Quadrature weight of one node, prod_i h_i.
    double cell_volume() const { return cell_volume_; }
    /// Box volume, prod_i L_i.
    double volume() const { return volume_; }

    /// Signed integer frequency m in [-N/2, N/2) for a storage index in [0,N).
    int freq_index(int axis, int index) const {
        return index < sizes_[axis] / 2 ? index : index - sizes_[axis];
    }
    /// Physical wavenumber 2*pi*m/L along one axis.
    double wavenumber(int axis, int index) const {
        return two_pi_over_l_[axis] * freq_index(axis, index);
    }

    /// |k|^2 of the mode at a flat spectral index.
    double k_squared(std::int64_t flat) const;
    /// Per-axis wavenumbers of the mode at a flat spectral index.
    void wavevector(std::int64_t flat, double* k) const;

    /// 2/3-rule mask: 1 where |m_i| <= N_i/3 on every axis, else 0.
    const std::vector<std::uint8_t>& dealias_mask() const { return dealias_mask_; }

    /// True when the mode at a flat index carries the Nyquist frequency
    /// m = -N/2 on the given axis (odd derivative multipliers zero it).
    bool is_nyquist(int axis, std::int64_t flat) const;

    /// Physical coordinate of a node along one axis.
    double coordinate(int axis, int index) const { return spacing(axis) * index; }

    /// Analysis transform: real nodal values -> normalized mode amplitudes.
    /// Both arrays have total() entries. Throws ConfigError on size mismatch
    /// in the vector overloads.
    void forward(const double* phys, Complex* spec) const;
    /// Synthesis transform: mode amplitudes -> real nodal values. The input
    /// is expected Hermitian-symmetric (as produced from real data); the
    /// imaginary residual of the synthesis is discarded.
    void inverse(const Complex* spec, double* phys) const;

    std::vector<Complex> forward(const std::vector<double>& phys) const;
    std::vector<double> inverse(const std::vector<Complex>& spec) const;

    /// Decomposes a flat index into per-axis storage indices.
    void unflatten(std::int64_t flat, int* idx) const;

    bool same_layout(const SpectralGrid& other) const {
        return sizes_ == other.sizes_ && lengths_ == other.lengths_;
    }

  private:
    std::vector<int> sizes_;
    std::vector<double> lengths_;
    std::vector<double> two_pi_over_l_;
    std::int64_t total_ = 0;
    double cell_volume_ = 1.0;
    double volume_ = 1.0;
    std::vector<std::uint8_t> dealias_mask_;
    std::vector<std::int64_t> strides_;

    struct Plans;
    std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Convenience factory: make_grid({64,64}, {2*pi,2*pi}).
GridPtr make_grid(std::vector<int> sizes, std::vector<double> lengths);
/// Cube/square of N points per axis with period length L on every axis.
GridPtr make_grid(int dim, int n, double length);

}  // namespace chemns

#endif  // CHEMNS_GRID_HPP
