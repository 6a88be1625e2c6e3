// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "chemns/errors.hpp"

namespace chemns {

namespace {
// FFTW's planner is not re-entrant; plan creation/destruction is serialized.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct SpectralGrid::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

SpectralGrid::SpectralGrid(std::vector<int> sizes, std::vector<double> lengths)
    : sizes_(std::move(sizes)), lengths_(std::move(lengths)) {
    const int dim = static_cast<int>(sizes_.size());
    if (dim != 2 && dim != 3)
        throw ConfigError("grid dimension must be 2 or 3, got " + std::to_string(dim));
    if (lengths_.size() != sizes_.size())
        throw ConfigError("grid sizes and box lengths must have matching dimension");
    total_ = 1;
    for (int a = 0; a < dim; ++a) {
        if (sizes_[a] < 8 || sizes_[a] % 2 != 0)
            throw ConfigError("grid size must be even and >= 8, got " +
                              std::to_string(sizes_[a]) + " on axis " + std::to_string(a));
        if (!(lengths_[a] > 0.0))
            throw ConfigError("box length must be positive on axis " + std::to_string(a));
        total_ *= sizes_[a];
        cell_volume_ *= lengths_[a] / sizes_[a];
        volume_ *= lengths_[a];
        two_pi_over_l_.push_back(2.0 * std::numbers::pi / lengths_[a]);
    }

    strides_.assign(dim, 1);
    for (int a = dim - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * sizes_[a + 1];

    dealias_mask_.assign(total_, 1);
    for (std::int64_t flat = 0; flat < total_; ++flat) {
        for (int a = 0; a < dim; ++a) {
            const int idx = static_cast<int>((flat / strides_[a]) % sizes_[a]);
            const int m = freq_index(a, idx);
            if (3 * std::abs(m) > sizes_[a]) {
                dealias_mask_[flat] = 0;
                break;
            }
        }
    }

    plans_ = std::make_unique<Plans>();
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        std::vector<Complex> scratch(total_);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        // FFTW_ESTIMATE keeps plan selection deterministic; FFTW_UNALIGNED
        // lets the plans execute on any caller buffer.
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (dim == 2) {
            plans_->fwd = fftw_plan_dft_2d(sizes_[0], sizes_[1], buf, buf, FFTW_FORWARD, flags);
            plans_->bwd = fftw_plan_dft_2d(sizes_[0], sizes_[1], buf, buf, FFTW_BACKWARD, flags);
        } else {
            plans_->fwd =
                fftw_plan_dft_3d(sizes_[0], sizes_[1], sizes_[2], buf, buf, FFTW_FORWARD, flags);
            plans_->bwd =
                fftw_plan_dft_3d(sizes_[0], sizes_[1], sizes_[2], buf, buf, FFTW_BACKWARD, flags);
        }
    }
    if (!plans_->fwd || !plans_->bwd) throw ConfigError("failed to create FFT plans");
}

SpectralGrid::~SpectralGrid() = default;

double SpectralGrid::min_spacing() const {
    double h = spacing(0);
    for (int a = 1; a < dim(); ++a) h = std::min(h, spacing(a));
    return h;
}

double SpectralGrid::k_squared(std::int64_t flat) const {
    double k2 = 0.0;
    for (int a = 0; a < dim(); ++a) {
        const int idx = static_cast<int>((flat / strides_[a]) % sizes_[a]);
        const double k = wavenumber(a, idx);
        k2 += k * k;
    }
    return k2;
}

void SpectralGrid::wavevector(std::int64_t flat, double* k) const {
    for (int a = 0; a < dim(); ++a) {
        const int idx = static_cast<int>((flat / strides_[a]) % sizes_[a]);
        k[a] = wavenumber(a, idx);
    }
}

bool SpectralGrid::is_nyquist(int axis, std::int64_t flat) const {
    const int idx = static_cast<int>((flat / strides_[axis]) % sizes_[axis]);
    return idx == sizes_[axis] / 2;
}

void SpectralGrid::unflatten(std::int64_t flat, int* idx) const {
    for (int a = 0; a < dim(); ++a)
        idx[a] = static_cast<int>((flat / strides_[a]) % sizes_[a]);
}

void SpectralGrid::forward(const double* phys, Complex* spec) const {
    for (std::int64_t i = 0; i < total_; ++i) spec[i] = Complex(phys[i], 0.0);
    auto* buf = reinterpret_cast<fftw_complex*>(spec);
    fftw_execute_dft(plans_->fwd, buf, buf);
    const double scale = 1.0 / static_cast<double>(total_);
    for (std::int64_t i = 0; i < total_; ++i) spec[i] *= scale;
}

void SpectralGrid::inverse(const Complex* spec, double* phys) const {
    std::vector<Complex> scratch(spec, spec + total_);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_execute_dft(plans_->bwd, buf, buf);
    for (std::int64_t i = 0; i < total_; ++i) phys[i] = scratch[i].real();
}

std::vector<Complex> SpectralGrid::forward(const std::vector<double>& phys) const {
    if (static_cast<std::int64_t>(phys.size()) != total_)
        throw ConfigError("forward transform: value array size does not match grid");
    std::vector<Complex> spec(total_);
    forward(phys.data(), spec.data());
    return spec;
}

std::vector<double> SpectralGrid::inverse(const std::vector<Complex>& spec) const {
    if (static_cast<std::int64_t>(spec.size()) != total_)
        throw ConfigError("inverse transform: coefficient array size does not match grid");
    std::vector<double> phys(total_);
    inverse(spec.data(), phys.data());
    return phys;
}

GridPtr make_grid(std::vector<int> sizes, std::vector<double> lengths) {
    return std::make_shared<const SpectralGrid>(std::move(sizes), std::move(lengths));
}

GridPtr make_grid(int dim, int n, double length) {
    return make_grid(std::vector<int>(dim, n), std::vector<double>(dim, length));
}

}  // namespace chemns
