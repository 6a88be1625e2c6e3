// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_ORACLE_HPP
#define CHEMNS_ORACLE_HPP

#include "chemns/field.hpp"

namespace chemns {

/// Brute-force references for tests. Nothing here touches the fast
/// transform path: the dense oracle materializes its own DFT matrix, the
/// finite-difference derivative works on nodal values, and the exact heat
/// solutions are evaluated in closed form, so agreement with spectral-core
/// is a genuine cross-check.
class DenseSpectralOracle {
  public:
    /// Refuses grids with more than 16 points on any axis (the matrix is
    /// dense, memory is quadratic in the node count).
    explicit DenseSpectralOracle(GridPtr grid);

    /// (-Delta)^s f by conjugating the multiplier diagonal with the dense
    /// unitary DFT matrix.
    Field dense_frac_laplacian(const Field& f, double s) const;

    /// max |(U* U - I)_{ij}|; the construction keeps this at roundoff.
    double unitarity_defect() const;

    const SpectralGrid& grid() const { return *grid_; }

  private:
    GridPtr grid_;
    std::vector<Complex> dft_;  // row k, column j: exp(-i k.x_j) / sqrt(N)
};

/// 4th-order centered finite difference along one axis on the periodic
/// grid; derivative_order is 1 or 2.
Field fd_derivative(const Field& f, int axis, int derivative_order = 1);

/// Closed-form heat evolution of a single harmonic
/// amplitude * cos(k.x + phase), where k has integer mode numbers scaled by
/// 2 pi / L: at time t the amplitude is multiplied by exp(-|k|^{2s} t).
Field exact_heat_mode(GridPtr grid, const std::vector<int>& mode, double amplitude, double phase,
                      double s, double t);

/// Isotropic Gaussian bump amplitude * exp(-|x - center|^2 / width^2),
/// periodized by summing lattice images.
struct GaussianSpec {
    std::vector<double> center;
    double width = 1.0;
    double amplitude = 1.0;
};

/// Exact heat (s = 1 only) evolution of a sum of Gaussians under
/// diffusivity kappa, evaluated from the whole-space kernel with
/// (2*images+1)^dim periodic images. Throws std::domain_error for s != 1.
Field exact_heat_gaussians(GridPtr grid, const std::vector<GaussianSpec>& bumps, double s,
                           double kappa, double t, int images = 2);

}  // namespace chemns

#endif  // CHEMNS_ORACLE_HPP
