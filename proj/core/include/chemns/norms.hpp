// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_NORMS_HPP
#define CHEMNS_NORMS_HPP

#include "chemns/field.hpp"

namespace chemns {

/// L^p norm by rectangle-rule quadrature on the collocation grid
/// (spectrally accurate for smooth periodic integrands); p = infinity is the
/// grid maximum of |f|. Throws std::domain_error for p < 1.
double lp_norm(const Field& f, double p);

/// Vector version: pointwise Euclidean magnitude |v(x)|, then L^p.
double lp_norm(const VectorField& v, double p);

/// L^p norm of the gradient: |grad f| pointwise, then L^p. For a vector
/// field the pointwise Frobenius magnitude of the Jacobian is used.
double gradient_lp_norm(const Field& f, double p);
double gradient_lp_norm(const VectorField& v, double p);

/// Homogeneous Sobolev norm (vol * sum_{k != 0} |k|^{2s} |f_hat_k|^2)^{1/2}.
/// The zero mode is excluded, so negative s is finite. hs_norm(f, 0) equals
/// the L2 norm of the mean-free part.
double hs_norm(const Field& f, double s);
double hs_norm(const VectorField& v, double s);

/// Inhomogeneous counterpart, (hs_norm^2 + L2 norm^2)^{1/2}.
double hs_inhom_norm(const Field& f, double s);
double hs_inhom_norm(const VectorField& v, double s);

enum class GnFeasibility { Feasible, Infeasible, Degenerate };

struct GnResult {
    GnFeasibility status = GnFeasibility::Infeasible;
    double theta = 0.0;  // meaningful only when status == Feasible
};

/// Interpolation exponent of ||L^sigma f||_{L^p} <= C ||L^a f||_{L^m}^theta
/// * ||L^s f||_{L^r}^{1-theta}: the unique theta solving
///   1/p - sigma/dim = theta*(1/m - a/dim) + (1-theta)*(1/r - s/dim).
/// Degenerate when the two interpolation endpoints coincide; Infeasible when
/// the solution falls outside [0, 1]. p, m, r must be >= 1 (infinity
/// allowed); throws std::domain_error otherwise.
GnResult gn_theta(double sigma, double p, double a, double m, double s, double r, int dim);

}  // namespace chemns

#endif  // CHEMNS_NORMS_HPP
