// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/field.hpp"

#include <cmath>

#include "chemns/errors.hpp"

namespace chemns {

Field::Field(GridPtr grid) : grid_(std::move(grid)), phys_(grid_->total(), 0.0) {}

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), phys_(std::move(values)) {
    if (static_cast<std::int64_t>(phys_.size()) != grid_->total())
        throw ConfigError("field value array size does not match grid");
}

const std::vector<Complex>& Field::spectrum() const {
    if (!spectral_valid_) {
        spec_ = grid_->forward(phys_);
        spectral_valid_ = true;
    }
    return spec_;
}

void Field::assign_spectrum(std::vector<Complex> spec) {
    if (static_cast<std::int64_t>(spec.size()) != grid_->total())
        throw ConfigError("spectrum size does not match grid");
    spec_ = std::move(spec);
    phys_ = grid_->inverse(spec_);
    spectral_valid_ = true;
}

double Field::mean() const {
    // Plain summation over the uniform nodes; identical to the k = 0 amplitude.
    double acc = 0.0;
    for (double v : phys_) acc += v;
    return acc / static_cast<double>(phys_.size());
}

void Field::fill(double v) {
    spectral_valid_ = false;
    for (auto& x : phys_) x = v;
}

void Field::operator+=(const Field& other) {
    spectral_valid_ = false;
    for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] += other.phys_[i];
}

void Field::operator-=(const Field& other) {
    spectral_valid_ = false;
    for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] -= other.phys_[i];
}

void Field::operator*=(double s) {
    spectral_valid_ = false;
    for (auto& x : phys_) x *= s;
}

VectorField::VectorField(GridPtr grid) : grid_(grid) {
    comps_.reserve(grid_->dim());
    for (int c = 0; c < grid_->dim(); ++c) comps_.emplace_back(grid_);
}

void VectorField::fill(double v) {
    for (auto& f : comps_) f.fill(v);
}

void VectorField::operator+=(const VectorField& other) {
    for (int c = 0; c < components(); ++c) comps_[c] += other.comps_[c];
}

void VectorField::operator-=(const VectorField& other) {
    for (int c = 0; c < components(); ++c) comps_[c] -= other.comps_[c];
}

void VectorField::operator*=(double s) {
    for (auto& f : comps_) f *= s;
}

double VectorField::max_pointwise_norm() const {
    double best = 0.0;
    const std::int64_t n = grid_->total();
    for (std::int64_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& f : comps_) s += f[i] * f[i];
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

}  // namespace chemns
