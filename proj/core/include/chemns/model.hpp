// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_MODEL_HPP
#define CHEMNS_MODEL_HPP

#include <memory>
#include <string>
#include <vector>

#include "chemns/field.hpp"

namespace chemns {

/// Twice-differentiable scalar function of the chemical concentration,
/// either a closed-form built-in or a natural cubic spline through tabulated
/// points. Built-ins are defined on all of R; a table is defined only on
/// [x_front, x_back] and evaluation outside throws EvaluationError naming the
/// offending range.
class ScalarFunc {
  public:
    enum class Kind { Constant, Linear, Saturating, Table };

    static ScalarFunc constant(double value);
    /// s -> slope * s.
    static ScalarFunc linear(double slope);
    /// s -> scale * s / (1 + s).
    static ScalarFunc saturating(double scale);
    /// Natural cubic spline through strictly increasing abscissae (>= 3).
    static ScalarFunc table(std::vector<double> x, std::vector<double> y);

    double value(double s) const;
    double deriv(double s) const;
    double deriv2(double s) const;

    Kind kind() const { return kind_; }
    double coefficient() const { return coeff_; }
    const std::vector<double>& knots_x() const { return x_; }
    const std::vector<double>& knots_y() const { return y_; }

  private:
    ScalarFunc() = default;
    void check_domain(double s) const;

    Kind kind_ = Kind::Constant;
    double coeff_ = 0.0;
    std::vector<double> x_, y_, m_;  // spline knots and second derivatives
};

/// Physical parameters of the coupled system: fractional fluid dissipation
/// exponent, chemotactic sensitivity chi(c), consumption rate f(c), the
/// gravitational/potential forcing grad phi, and the scalar diffusivities.
struct ModelParams {
    double alpha = 1.0;
    double kappa_n = 1.0;
    double kappa_c = 1.0;
    ScalarFunc chi = ScalarFunc::constant(1.0);
    ScalarFunc f = ScalarFunc::linear(1.0);
    /// Null means grad phi = 0.
    std::shared_ptr<const VectorField> grad_phi;
};

/// Admissibility of the model data: alpha > 1/2, diffusivities > 0,
/// f(0) = 0 and f >= 0 on [0, c_max] (sampled at 10^4 points), grad_phi
/// finite. Throws ConfigError naming the violated requirement.
void validate_hypotheses(const ModelParams& params, double c_max);

/// sup over [0, c_max] of |f| + |f'| + |chi| + |chi'| + |chi''|, the
/// kinetics bound entering the CFL drift velocity and the bootstrap
/// quantity. Sampled at 10^4 + 1 uniform points.
double kinetics_bound(const ModelParams& params, double c_max);

/// Instantaneous solution tuple. Pressure is derived on demand, not stored.
struct State {
    Field n;
    Field c;
    VectorField u;
    double t = 0.0;

    explicit State(GridPtr grid) : n(grid), c(grid), u(grid) {}
    const SpectralGrid& grid() const { return n.grid(); }
    GridPtr grid_ptr() const { return n.grid_ptr(); }
};

/// Tolerances for the runtime invariant monitors.
struct InvariantTolerances {
    /// Allowed relative undershoot of n and of the range of c.
    double positivity = 1e-8;
    /// ||div u||_2 <= divergence * ||u||_{H1 homogeneous}.
    double divergence = 1e-10;
    /// Per-step slack on the nonincrease of ||c||_inf and ||c||_2,
    /// relative to the initial magnitude of c.
    double monotonicity_slack = 1e-10;
    /// Reported mass-conservation drift threshold, relative.
    double mass_drift = 1e-11;
};

/// Non-diffusive right-hand side of the cell-density equation,
/// -div(u n) - div(chi(c) n grad c). Both terms are spectral divergences of
/// dealiased pointwise products, so the spatial mean is exactly zero; this
/// is what makes the discrete mass of n conserved to roundoff.
Field rhs_n(const State& state, const ModelParams& params);

/// Non-diffusive right-hand side of the chemical equation,
/// -div(u c) - n f(c). Only the transport part is mean-free.
Field rhs_c(const State& state, const ModelParams& params);

/// Leray-projected momentum forcing, P(-div(u (x) u) - n grad phi), with the
/// advection in divergence form (equivalent under div u = 0). The zero mode
/// passes through projection, so bulk momentum evolves by -mean(n grad phi).
VectorField rhs_u(const State& state, const ModelParams& params);

/// Mean-zero pressure from Delta P = -grad u : grad u - div(n grad phi).
Field recover_pressure(const State& state, const ModelParams& params);

}  // namespace chemns

#endif  // CHEMNS_MODEL_HPP
