// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "chemns/operators.hpp"

namespace chemns {

namespace {

// L^p of a nodal magnitude array (already nonnegative).
double lp_of_magnitudes(const std::vector<double>& mag, double p, double cell_volume) {
    if (std::isinf(p)) {
        double best = 0.0;
        for (double v : mag) best = std::max(best, v);
        return best;
    }
    double acc = 0.0;
    if (p == 1.0) {
        for (double v : mag) acc += v;
    } else if (p == 2.0) {
        for (double v : mag) acc += v * v;
    } else {
        for (double v : mag) acc += std::pow(v, p);
    }
    acc *= cell_volume;
    return (p == 1.0) ? acc : (p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p));
}

void require_p(double p) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
}

double spectral_weight(double k2, double s) {
    if (s == 0.0) return 1.0;
    if (s == 1.0) return k2;
    return std::pow(k2, s);
}

}  // namespace

double lp_norm(const Field& f, double p) {
    require_p(p);
    const auto& v = f.values();
    std::vector<double> mag(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::abs(v[i]);
    return lp_of_magnitudes(mag, p, f.grid().cell_volume());
}

double lp_norm(const VectorField& v, double p) {
    require_p(p);
    const std::int64_t n = v.grid().total();
    std::vector<double> mag(n);
    for (std::int64_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int c = 0; c < v.components(); ++c) s += v[c][i] * v[c][i];
        mag[i] = std::sqrt(s);
    }
    return lp_of_magnitudes(mag, p, v.grid().cell_volume());
}

double gradient_lp_norm(const Field& f, double p) {
    return lp_norm(gradient(f), p);
}

double gradient_lp_norm(const VectorField& v, double p) {
    require_p(p);
    const std::int64_t n = v.grid().total();
    std::vector<double> sq(n, 0.0);
    for (int c = 0; c < v.components(); ++c) {
        const VectorField g = gradient(v[c]);
        for (int a = 0; a < g.components(); ++a)
            for (std::int64_t i = 0; i < n; ++i) sq[i] += g[a][i] * g[a][i];
    }
    for (std::int64_t i = 0; i < n; ++i) sq[i] = std::sqrt(sq[i]);
    return lp_of_magnitudes(sq, p, v.grid().cell_volume());
}

double hs_norm(const Field& f, double s) {
    const SpectralGrid& g = f.grid();
    const std::vector<Complex>& spec = f.spectrum();
    double acc = 0.0;
    for (std::int64_t i = 0; i < g.total(); ++i) {
        const double k2 = g.k_squared(i);
        if (k2 == 0.0) continue;
        acc += spectral_weight(k2, s) * std::norm(spec[i]);
    }
    return std::sqrt(acc * g.volume());
}

double hs_norm(const VectorField& v, double s) {
    double acc = 0.0;
    for (int c = 0; c < v.components(); ++c) {
        const double h = hs_norm(v[c], s);
        acc += h * h;
    }
    return std::sqrt(acc);
}

double hs_inhom_norm(const Field& f, double s) {
    const double h = hs_norm(f, s), l2 = lp_norm(f, 2.0);
    return std::sqrt(h * h + l2 * l2);
}

double hs_inhom_norm(const VectorField& v, double s) {
    const double h = hs_norm(v, s), l2 = lp_norm(v, 2.0);
    return std::sqrt(h * h + l2 * l2);
}

GnResult gn_theta(double sigma, double p, double a, double m, double s, double r, int dim) {
    if (!(p >= 1.0) || !(m >= 1.0) || !(r >= 1.0))
        throw std::domain_error("gn_theta: integrability exponents must be >= 1");
    if (dim < 1) throw std::domain_error("gn_theta: dimension must be positive");
    const double inv = 1.0 / dim;
    const double lhs = (std::isinf(p) ? 0.0 : 1.0 / p) - sigma * inv;
    const double e1 = (std::isinf(m) ? 0.0 : 1.0 / m) - a * inv;
    const double e2 = (std::isinf(r) ? 0.0 : 1.0 / r) - s * inv;
    GnResult res;
    if (std::abs(e1 - e2) <= 1e-13 * (1.0 + std::abs(e1) + std::abs(e2))) {
        res.status = GnFeasibility::Degenerate;
        return res;
    }
    const double theta = (lhs - e2) / (e1 - e2);
    if (theta < -1e-12 || theta > 1.0 + 1e-12) {
        res.status = GnFeasibility::Infeasible;
        return res;
    }
    res.status = GnFeasibility::Feasible;
    res.theta = std::min(1.0, std::max(0.0, theta));
    return res;
}

}  // namespace chemns
