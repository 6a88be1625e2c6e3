// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/model.hpp"

#include <cmath>
#include <sstream>

#include "chemns/errors.hpp"
#include "chemns/operators.hpp"

namespace chemns {

namespace {
constexpr int kSampleCount = 10000;
}

ScalarFunc ScalarFunc::constant(double value) {
    ScalarFunc f;
    f.kind_ = Kind::Constant;
    f.coeff_ = value;
    return f;
}

ScalarFunc ScalarFunc::linear(double slope) {
    ScalarFunc f;
    f.kind_ = Kind::Linear;
    f.coeff_ = slope;
    return f;
}

ScalarFunc ScalarFunc::saturating(double scale) {
    ScalarFunc f;
    f.kind_ = Kind::Saturating;
    f.coeff_ = scale;
    return f;
}

ScalarFunc ScalarFunc::table(std::vector<double> x, std::vector<double> y) {
    if (x.size() < 3 || x.size() != y.size())
        throw ConfigError("scalar function table needs >= 3 matching (x, y) pairs");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw ConfigError("scalar function table abscissae must be strictly increasing");
    ScalarFunc f;
    f.kind_ = Kind::Table;
    f.x_ = std::move(x);
    f.y_ = std::move(y);

    // Natural cubic spline: solve the tridiagonal system for the second
    // derivatives at the knots (zero at both ends).
    const std::size_t k = f.x_.size();
    f.m_.assign(k, 0.0);
    std::vector<double> diag(k, 0.0), rhs(k, 0.0), upper(k, 0.0);
    diag[0] = diag[k - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const double hl = f.x_[i] - f.x_[i - 1];
        const double hr = f.x_[i + 1] - f.x_[i];
        diag[i] = (hl + hr) / 3.0;
        upper[i] = hr / 6.0;
        rhs[i] = (f.y_[i + 1] - f.y_[i]) / hr - (f.y_[i] - f.y_[i - 1]) / hl;
    }
    // Thomas sweep; the lower diagonal at row i is hl/6.
    for (std::size_t i = 2; i + 1 < k; ++i) {
        const double hl = f.x_[i] - f.x_[i - 1];
        const double w = (hl / 6.0) / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = k - 2; i >= 1; --i) {
        f.m_[i] = (rhs[i] - upper[i] * f.m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
    return f;
}

void ScalarFunc::check_domain(double s) const {
    if (kind_ != Kind::Table) return;
    const double lo = x_.front(), hi = x_.back();
    const double slack = 1e-12 * std::max(1.0, hi - lo);
    if (s < lo - slack || s > hi + slack) {
        std::ostringstream msg;
        msg << "scalar function evaluated at " << s << " outside tabulated domain [" << lo << ", "
            << hi << "]";
        throw EvaluationError(msg.str());
    }
}

double ScalarFunc::value(double s) const {
    switch (kind_) {
        case Kind::Constant:
            return coeff_;
        case Kind::Linear:
            return coeff_ * s;
        case Kind::Saturating:
            return coeff_ * s / (1.0 + s);
        case Kind::Table:
            break;
    }
    check_domain(s);
    const std::size_t k = x_.size();
    std::size_t i = 0;
    while (i + 2 < k && s > x_[i + 1]) ++i;
    const double h = x_[i + 1] - x_[i];
    const double dl = x_[i + 1] - s, dr = s - x_[i];
    return m_[i] * dl * dl * dl / (6.0 * h) + m_[i + 1] * dr * dr * dr / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * dl + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * dr;
}

double ScalarFunc::deriv(double s) const {
    switch (kind_) {
        case Kind::Constant:
            return 0.0;
        case Kind::Linear:
            return coeff_;
        case Kind::Saturating: {
            const double d = 1.0 + s;
            return coeff_ / (d * d);
        }
        case Kind::Table:
            break;
    }
    check_domain(s);
    const std::size_t k = x_.size();
    std::size_t i = 0;
    while (i + 2 < k && s > x_[i + 1]) ++i;
    const double h = x_[i + 1] - x_[i];
    const double dl = x_[i + 1] - s, dr = s - x_[i];
    return -m_[i] * dl * dl / (2.0 * h) + m_[i + 1] * dr * dr / (2.0 * h) +
           (y_[i + 1] - y_[i]) / h - (m_[i + 1] - m_[i]) * h / 6.0;
}

double ScalarFunc::deriv2(double s) const {
    switch (kind_) {
        case Kind::Constant:
        case Kind::Linear:
            return 0.0;
        case Kind::Saturating: {
            const double d = 1.0 + s;
            return -2.0 * coeff_ / (d * d * d);
        }
        case Kind::Table:
            break;
    }
    check_domain(s);
    const std::size_t k = x_.size();
    std::size_t i = 0;
    while (i + 2 < k && s > x_[i + 1]) ++i;
    const double h = x_[i + 1] - x_[i];
    return m_[i] * (x_[i + 1] - s) / h + m_[i + 1] * (s - x_[i]) / h;
}

void validate_hypotheses(const ModelParams& params, double c_max) {
    if (!(params.alpha > 0.5))
        throw ConfigError("alpha must exceed 0.5 (fractional dissipation admissibility)");
    if (!(params.kappa_n > 0.0) || !(params.kappa_c > 0.0))
        throw ConfigError("diffusivities kappa_n and kappa_c must be positive");
    if (!(c_max >= 0.0) || !std::isfinite(c_max))
        throw ConfigError("c_max must be finite and nonnegative");

    double scale = 1.0;
    for (int i = 0; i <= kSampleCount; ++i) {
        const double s = c_max * i / kSampleCount;
        scale = std::max(scale, std::abs(params.f.value(s)));
    }
    if (std::abs(params.f.value(0.0)) > 1e-12 * scale)
        throw ConfigError("consumption rate must vanish at zero concentration, f(0) = 0");
    for (int i = 0; i <= kSampleCount; ++i) {
        const double s = c_max * i / kSampleCount;
        if (params.f.value(s) < -1e-12 * scale) {
            std::ostringstream msg;
            msg << "consumption rate must be nonnegative on [0, " << c_max << "], f(" << s
                << ") = " << params.f.value(s);
            throw ConfigError(msg.str());
        }
    }

    if (params.grad_phi) {
        for (int a = 0; a < params.grad_phi->components(); ++a)
            for (double v : (*params.grad_phi)[a].values())
                if (!std::isfinite(v)) throw ConfigError("grad_phi must be finite");
    }
}

double kinetics_bound(const ModelParams& params, double c_max) {
    double best = 0.0;
    for (int i = 0; i <= kSampleCount; ++i) {
        const double s = c_max * i / kSampleCount;
        const double v = std::abs(params.f.value(s)) + std::abs(params.f.deriv(s)) +
                         std::abs(params.chi.value(s)) + std::abs(params.chi.deriv(s)) +
                         std::abs(params.chi.deriv2(s));
        best = std::max(best, v);
    }
    return best;
}

Field rhs_n(const State& state, const ModelParams& params) {
    const SpectralGrid& g = state.grid();
    const std::int64_t total = g.total();
    const auto& nv = state.n.values();
    const auto& cv = state.c.values();

    // chi(c) * n evaluated once; reused across flux components.
    std::vector<double> chin(total);
    for (std::int64_t i = 0; i < total; ++i) chin[i] = params.chi.value(cv[i]) * nv[i];

    const VectorField gradc = gradient(state.c);
    VectorField flux(state.grid_ptr());
    for (int a = 0; a < g.dim(); ++a) {
        auto& fa = flux[a].mutable_values();
        const auto& ua = state.u[a].values();
        const auto& gca = gradc[a].values();
        for (std::int64_t i = 0; i < total; ++i) fa[i] = ua[i] * nv[i] + chin[i] * gca[i];
    }
    Field out = divergence(dealias(flux));
    out *= -1.0;
    return out;
}

Field rhs_c(const State& state, const ModelParams& params) {
    const SpectralGrid& g = state.grid();
    const std::int64_t total = g.total();
    const auto& nv = state.n.values();
    const auto& cv = state.c.values();

    VectorField flux(state.grid_ptr());
    for (int a = 0; a < g.dim(); ++a) {
        auto& fa = flux[a].mutable_values();
        const auto& ua = state.u[a].values();
        for (std::int64_t i = 0; i < total; ++i) fa[i] = ua[i] * cv[i];
    }
    Field out = divergence(dealias(flux));
    out *= -1.0;

    Field consumption(state.grid_ptr());
    auto& cons = consumption.mutable_values();
    for (std::int64_t i = 0; i < total; ++i) cons[i] = nv[i] * params.f.value(cv[i]);
    out -= dealias(consumption);
    return out;
}

VectorField rhs_u(const State& state, const ModelParams& params) {
    const SpectralGrid& g = state.grid();
    const std::int64_t total = g.total();
    const int d = g.dim();

    VectorField out(state.grid_ptr());
    Field product(state.grid_ptr());
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            auto& pv = product.mutable_values();
            const auto& ub = state.u[b].values();
            const auto& ua = state.u[a].values();
            for (std::int64_t i = 0; i < total; ++i) pv[i] = ub[i] * ua[i];
            out[a] -= derivative(dealias(product), b);
        }
        if (params.grad_phi) {
            auto& pv = product.mutable_values();
            const auto& nv = state.n.values();
            const auto& ga = (*params.grad_phi)[a].values();
            for (std::int64_t i = 0; i < total; ++i) pv[i] = nv[i] * ga[i];
            out[a] -= dealias(product);
        }
    }
    return leray_project(out);
}

Field recover_pressure(const State& state, const ModelParams& params) {
    const SpectralGrid& g = state.grid();
    const std::int64_t total = g.total();
    const int d = g.dim();

    // grad u : grad u = sum_ab (d_a u_b)(d_b u_a), assembled pointwise.
    std::vector<Field> deriv_ab;
    deriv_ab.reserve(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) deriv_ab.push_back(derivative(state.u[b], a));

    Field rhs(state.grid_ptr());
    {
        auto& rv = rhs.mutable_values();
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const auto& dab = deriv_ab[a * d + b].values();
                const auto& dba = deriv_ab[b * d + a].values();
                for (std::int64_t i = 0; i < total; ++i) rv[i] -= dab[i] * dba[i];
            }
    }
    rhs = dealias(rhs);

    if (params.grad_phi) {
        Field product(state.grid_ptr());
        for (int a = 0; a < d; ++a) {
            auto& pv = product.mutable_values();
            const auto& nv = state.n.values();
            const auto& ga = (*params.grad_phi)[a].values();
            for (std::int64_t i = 0; i < total; ++i) pv[i] = nv[i] * ga[i];
            rhs -= derivative(dealias(product), a);
        }
    }
    return invert_laplacian_mean_zero(rhs);
}

}  // namespace chemns
