// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_FIELD_HPP
#define CHEMNS_FIELD_HPP

#include <vector>

#include "chemns/grid.hpp"

namespace chemns {

/// Real scalar field on a SpectralGrid. Physical nodal values are the
/// authoritative representation; the spectral view is a lazily computed
/// cache that is invalidated whenever the physical data is exposed mutably.
class Field {
  public:
    explicit Field(GridPtr grid);
    Field(GridPtr grid, std::vector<double> values);

    Field(const Field&) = default;
    Field(Field&&) noexcept = default;
    Field& operator=(const Field&) = default;
    Field& operator=(Field&&) noexcept = default;

    const SpectralGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    std::int64_t size() const { return grid_->total(); }

    const std::vector<double>& values() const { return phys_; }
    /// Mutable access invalidates the spectral cache.
    std::vector<double>& mutable_values() {
        spectral_valid_ = false;
        return phys_;
    }

    double operator[](std::int64_t i) const { return phys_[i]; }

    /// Mode amplitudes of the current physical data (computed on first use,
    /// then reused until the physical data is touched).
    const std::vector<Complex>& spectrum() const;

    /// Replaces the contents by synthesizing the given amplitudes. The new
    /// spectrum is retained as a valid cache.
    void assign_spectrum(std::vector<Complex> spec);

    /// Mean value, (1/|Omega|) * integral, equal to the k = 0 amplitude.
    double mean() const;

    void fill(double v);
    void operator+=(const Field& other);
    void operator-=(const Field& other);
    void operator*=(double s);

  private:
    GridPtr grid_;
    std::vector<double> phys_;
    mutable std::vector<Complex> spec_;
    mutable bool spectral_valid_ = false;
};

/// dim()-component vector field; components share one grid.
class VectorField {
  public:
    explicit VectorField(GridPtr grid);

    const SpectralGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    int components() const { return static_cast<int>(comps_.size()); }

    Field& operator[](int c) { return comps_[c]; }
    const Field& operator[](int c) const { return comps_[c]; }

    void fill(double v);
    void operator+=(const VectorField& other);
    void operator-=(const VectorField& other);
    void operator*=(double s);

    /// Pointwise maximum of the Euclidean norm |u(x)| over the nodes.
    double max_pointwise_norm() const;

  private:
    GridPtr grid_;
    std::vector<Field> comps_;
};

}  // namespace chemns

#endif  // CHEMNS_FIELD_HPP
