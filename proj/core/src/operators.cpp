// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace chemns {

namespace {

// Wavevector with Nyquist components zeroed; shared by differentiation and
// the Leray projector so that their notions of divergence coincide.
void effective_wavevector(const SpectralGrid& g, std::int64_t flat, double* k) {
    g.wavevector(flat, k);
    for (int a = 0; a < g.dim(); ++a)
        if (g.is_nyquist(a, flat)) k[a] = 0.0;
}

}  // namespace

Field frac_laplacian(const Field& f, double s) {
    if (s < 0.0) throw std::domain_error("frac_laplacian: exponent must be >= 0");
    const SpectralGrid& g = f.grid();
    std::vector<Complex> spec = f.spectrum();
    for (std::int64_t i = 0; i < g.total(); ++i) {
        const double k2 = g.k_squared(i);
        const double mult = (k2 == 0.0) ? 0.0 : (s == 1.0 ? k2 : std::pow(k2, s));
        spec[i] *= mult;
    }
    Field out(f.grid_ptr());
    out.assign_spectrum(std::move(spec));
    return out;
}

Field laplacian(const Field& f) {
    Field out = frac_laplacian(f, 1.0);
    out *= -1.0;
    return out;
}

Field derivative(const Field& f, int axis) {
    const SpectralGrid& g = f.grid();
    std::vector<Complex> spec = f.spectrum();
    double k[3];
    for (std::int64_t i = 0; i < g.total(); ++i) {
        effective_wavevector(g, i, k);
        spec[i] *= Complex(0.0, k[axis]);
    }
    Field out(f.grid_ptr());
    out.assign_spectrum(std::move(spec));
    return out;
}

VectorField gradient(const Field& f) {
    const SpectralGrid& g = f.grid();
    VectorField out(f.grid_ptr());
    const std::vector<Complex>& spec = f.spectrum();
    double k[3];
    for (int a = 0; a < g.dim(); ++a) {
        std::vector<Complex> comp(spec);
        for (std::int64_t i = 0; i < g.total(); ++i) {
            effective_wavevector(g, i, k);
            comp[i] *= Complex(0.0, k[a]);
        }
        out[a].assign_spectrum(std::move(comp));
    }
    return out;
}

Field divergence(const VectorField& v) {
    const SpectralGrid& g = v.grid();
    std::vector<Complex> acc(g.total(), Complex(0.0, 0.0));
    double k[3];
    for (int a = 0; a < g.dim(); ++a) {
        const std::vector<Complex>& comp = v[a].spectrum();
        for (std::int64_t i = 0; i < g.total(); ++i) {
            effective_wavevector(g, i, k);
            acc[i] += Complex(0.0, k[a]) * comp[i];
        }
    }
    Field out(v.grid_ptr());
    out.assign_spectrum(std::move(acc));
    return out;
}

VectorField leray_project(const VectorField& v) {
    const SpectralGrid& g = v.grid();
    const int d = g.dim();
    std::vector<std::vector<Complex>> spec(d);
    for (int a = 0; a < d; ++a) spec[a] = v[a].spectrum();
    double k[3];
    for (std::int64_t i = 0; i < g.total(); ++i) {
        effective_wavevector(g, i, k);
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += k[a] * k[a];
        if (k2 == 0.0) continue;
        Complex kdotu(0.0, 0.0);
        for (int a = 0; a < d; ++a) kdotu += k[a] * spec[a][i];
        kdotu /= k2;
        for (int a = 0; a < d; ++a) spec[a][i] -= k[a] * kdotu;
    }
    VectorField out(v.grid_ptr());
    for (int a = 0; a < d; ++a) out[a].assign_spectrum(std::move(spec[a]));
    return out;
}

void dealias_in_place(std::vector<Complex>& coeffs, const SpectralGrid& grid) {
    const auto& mask = grid.dealias_mask();
    for (std::int64_t i = 0; i < grid.total(); ++i)
        if (!mask[i]) coeffs[i] = Complex(0.0, 0.0);
}

Field dealias(const Field& f) {
    std::vector<Complex> spec = f.spectrum();
    dealias_in_place(spec, f.grid());
    Field out(f.grid_ptr());
    out.assign_spectrum(std::move(spec));
    return out;
}

VectorField dealias(const VectorField& v) {
    VectorField out(v.grid_ptr());
    for (int a = 0; a < v.components(); ++a) out[a] = dealias(v[a]);
    return out;
}

Field invert_laplacian_mean_zero(const Field& f) {
    const SpectralGrid& g = f.grid();
    std::vector<Complex> spec = f.spectrum();
    for (std::int64_t i = 0; i < g.total(); ++i) {
        const double k2 = g.k_squared(i);
        spec[i] = (k2 == 0.0) ? Complex(0.0, 0.0) : spec[i] / (-k2);
    }
    Field out(f.grid_ptr());
    out.assign_spectrum(std::move(spec));
    return out;
}

Field apply_mode_decay(const Field& f, double kappa, double sigma, double t) {
    const SpectralGrid& g = f.grid();
    std::vector<Complex> spec = f.spectrum();
    for (std::int64_t i = 0; i < g.total(); ++i) {
        const double k2 = g.k_squared(i);
        const double k2s = (k2 == 0.0) ? 0.0 : (sigma == 1.0 ? k2 : std::pow(k2, sigma));
        spec[i] *= std::exp(-kappa * k2s * t);
    }
    Field out(f.grid_ptr());
    out.assign_spectrum(std::move(spec));
    return out;
}

}  // namespace chemns
