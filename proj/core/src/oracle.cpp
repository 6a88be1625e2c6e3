// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chemns/errors.hpp"

namespace chemns {

namespace {

// |k|^2 recomputed from scratch so the oracle shares only the grid shape
// with the fast path, not its wavenumber machinery.
double mode_k_squared(const SpectralGrid& g, const int* idx) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        const int n = g.sizes()[a];
        const int m = idx[a] < n / 2 ? idx[a] : idx[a] - n;
        const double k = 2.0 * std::numbers::pi * m / g.lengths()[a];
        k2 += k * k;
    }
    return k2;
}

}  // namespace

DenseSpectralOracle::DenseSpectralOracle(GridPtr grid) : grid_(std::move(grid)) {
    for (int n : grid_->sizes())
        if (n > 16)
            throw ConfigError("dense oracle refuses grids larger than 16 points per axis");
    const std::int64_t total = grid_->total();
    dft_.resize(total * total);
    const double norm = 1.0 / std::sqrt(static_cast<double>(total));
    int kidx[3], jidx[3];
    for (std::int64_t k = 0; k < total; ++k) {
        grid_->unflatten(k, kidx);
        for (std::int64_t j = 0; j < total; ++j) {
            grid_->unflatten(j, jidx);
            // Phase k.x as an exact rational multiple of 2 pi.
            double frac = 0.0;
            for (int a = 0; a < grid_->dim(); ++a) {
                const int n = grid_->sizes()[a];
                const int m = kidx[a] < n / 2 ? kidx[a] : kidx[a] - n;
                frac += static_cast<double>(m * jidx[a]) / n;
            }
            frac -= std::floor(frac);
            const double angle = -2.0 * std::numbers::pi * frac;
            dft_[k * total + j] = norm * Complex(std::cos(angle), std::sin(angle));
        }
    }
}

Field DenseSpectralOracle::dense_frac_laplacian(const Field& f, double s) const {
    if (s < 0.0) throw std::domain_error("dense_frac_laplacian: exponent must be >= 0");
    if (!f.grid().same_layout(*grid_))
        throw ConfigError("dense oracle: field grid does not match oracle grid");
    const std::int64_t total = grid_->total();
    const auto& v = f.values();

    std::vector<Complex> hat(total, Complex(0.0, 0.0));
    for (std::int64_t k = 0; k < total; ++k) {
        Complex acc(0.0, 0.0);
        const Complex* row = &dft_[k * total];
        for (std::int64_t j = 0; j < total; ++j) acc += row[j] * v[j];
        hat[k] = acc;
    }

    int idx[3];
    for (std::int64_t k = 0; k < total; ++k) {
        grid_->unflatten(k, idx);
        const double k2 = mode_k_squared(*grid_, idx);
        hat[k] *= (k2 == 0.0) ? 0.0 : std::pow(k2, s);
    }

    Field out(f.grid_ptr());
    auto& ov = out.mutable_values();
    for (std::int64_t j = 0; j < total; ++j) {
        Complex acc(0.0, 0.0);
        for (std::int64_t k = 0; k < total; ++k) acc += std::conj(dft_[k * total + j]) * hat[k];
        ov[j] = acc.real();
    }
    return out;
}

double DenseSpectralOracle::unitarity_defect() const {
    const std::int64_t total = grid_->total();
    double worst = 0.0;
    for (std::int64_t i = 0; i < total; ++i) {
        for (std::int64_t j = 0; j < total; ++j) {
            Complex acc(0.0, 0.0);
            for (std::int64_t k = 0; k < total; ++k)
                acc += std::conj(dft_[k * total + i]) * dft_[k * total + j];
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

Field fd_derivative(const Field& f, int axis, int derivative_order) {
    const SpectralGrid& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw std::domain_error("fd_derivative: axis out of range");
    if (derivative_order != 1 && derivative_order != 2)
        throw std::domain_error("fd_derivative: derivative order must be 1 or 2");

    const int n = g.sizes()[axis];
    const double h = g.spacing(axis);
    std::int64_t stride = 1;
    for (int a = g.dim() - 1; a > axis; --a) stride *= g.sizes()[a];

    const auto& v = f.values();
    Field out(f.grid_ptr());
    auto& ov = out.mutable_values();
    for (std::int64_t flat = 0; flat < g.total(); ++flat) {
        const int idx = static_cast<int>((flat / stride) % n);
        const std::int64_t base = flat - static_cast<std::int64_t>(idx) * stride;
        auto at = [&](int off) {
            const int wrapped = ((idx + off) % n + n) % n;
            return v[base + static_cast<std::int64_t>(wrapped) * stride];
        };
        if (derivative_order == 1) {
            ov[flat] = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
        } else {
            ov[flat] =
                (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * h * h);
        }
    }
    return out;
}

Field exact_heat_mode(GridPtr grid, const std::vector<int>& mode, double amplitude, double phase,
                      double s, double t) {
    const SpectralGrid& g = *grid;
    if (static_cast<int>(mode.size()) != g.dim())
        throw ConfigError("exact_heat_mode: mode dimension mismatch");
    double k2 = 0.0;
    std::vector<double> k(g.dim());
    for (int a = 0; a < g.dim(); ++a) {
        k[a] = 2.0 * std::numbers::pi * mode[a] / g.lengths()[a];
        k2 += k[a] * k[a];
    }
    const double factor = (k2 == 0.0) ? 1.0 : std::exp(-std::pow(k2, s) * t);

    Field out(grid);
    auto& ov = out.mutable_values();
    int idx[3];
    for (std::int64_t flat = 0; flat < g.total(); ++flat) {
        g.unflatten(flat, idx);
        double arg = phase;
        for (int a = 0; a < g.dim(); ++a) arg += k[a] * g.coordinate(a, idx[a]);
        ov[flat] = amplitude * factor * std::cos(arg);
    }
    return out;
}

Field exact_heat_gaussians(GridPtr grid, const std::vector<GaussianSpec>& bumps, double s,
                           double kappa, double t, int images) {
    if (s != 1.0)
        throw std::domain_error("exact heat of Gaussians is closed form only for s = 1");
    const SpectralGrid& g = *grid;
    const int d = g.dim();
    Field out(grid);
    auto& ov = out.mutable_values();
    int idx[3];
    int shift[3];
    for (const GaussianSpec& bump : bumps) {
        if (static_cast<int>(bump.center.size()) != d)
            throw ConfigError("exact_heat_gaussians: center dimension mismatch");
        const double w2 = bump.width * bump.width + 4.0 * kappa * t;
        const double amp = bump.amplitude *
                           std::pow(bump.width * bump.width / w2, 0.5 * d);
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            g.unflatten(flat, idx);
            double acc = 0.0;
            const int span = 2 * images + 1;
            const int count = d == 2 ? span * span : span * span * span;
            for (int im = 0; im < count; ++im) {
                int rest = im;
                for (int a = 0; a < d; ++a) {
                    shift[a] = rest % span - images;
                    rest /= span;
                }
                double r2 = 0.0;
                for (int a = 0; a < d; ++a) {
                    const double dx =
                        g.coordinate(a, idx[a]) - bump.center[a] - shift[a] * g.lengths()[a];
                    r2 += dx * dx;
                }
                acc += std::exp(-r2 / w2);
            }
            ov[flat] += amp * acc;
        }
    }
    return out;
}

}  // namespace chemns
