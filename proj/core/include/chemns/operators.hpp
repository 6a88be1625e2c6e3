// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_OPERATORS_HPP
#define CHEMNS_OPERATORS_HPP

#include "chemns/field.hpp"

namespace chemns {

/// Fourier-multiplier operators. Differentiation uses the multiplier i*k_a
/// with the Nyquist frequency on the differentiated axis treated as zero
/// (its odd derivative has no consistent sign on the real grid). The Leray
/// projector uses the same effective wavevector so that div(leray(v)) = 0
/// holds mode by mode, not just on Nyquist-free fields.

/// (-Delta)^s f via the multiplier |k|^{2s}. Zero mode maps to exactly 0.
/// Throws std::domain_error for s < 0.
Field frac_laplacian(const Field& f, double s);

/// Delta f, the negative of frac_laplacian(f, 1).
Field laplacian(const Field& f);

/// Partial derivative along one axis (multiplier i*k_axis, Nyquist zeroed).
Field derivative(const Field& f, int axis);

VectorField gradient(const Field& f);

Field divergence(const VectorField& v);

/// L2-orthogonal projection onto divergence-free fields,
/// u_hat - k (k . u_hat) / |k|^2 with the effective wavevector.
/// The zero mode (and any mode whose effective k vanishes) passes through.
VectorField leray_project(const VectorField& v);

/// 2/3-rule truncation. Idempotent; never increases spectral energy.
Field dealias(const Field& f);
VectorField dealias(const VectorField& v);
void dealias_in_place(std::vector<Complex>& coeffs, const SpectralGrid& grid);

/// Mean-zero psi with Delta psi = f - mean(f).
Field invert_laplacian_mean_zero(const Field& f);

/// Semigroup of kappa*(-Delta)^sigma: multiplies each mode by
/// exp(-kappa*|k|^{2*sigma}*t).
Field apply_mode_decay(const Field& f, double kappa, double sigma, double t);

}  // namespace chemns

#endif  // CHEMNS_OPERATORS_HPP
