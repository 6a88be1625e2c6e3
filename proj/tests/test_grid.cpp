// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "chemns/errors.hpp"
#include "chemns/field.hpp"
#include "chemns/grid.hpp"
#include "doctest.h"

using namespace chemns;

namespace {
constexpr double kTwoPi = 6.283185307179586;

Field cosine_mode(GridPtr grid, const std::vector<int>& mode, double amp, double phase) {
    Field f(grid);
    auto& v = f.mutable_values();
    int idx[3];
    for (std::int64_t i = 0; i < grid->total(); ++i) {
        grid->unflatten(i, idx);
        double arg = phase;
        for (int a = 0; a < grid->dim(); ++a)
            arg += 2.0 * std::numbers::pi * mode[a] / grid->lengths()[a] *
                   grid->coordinate(a, idx[a]);
        v[i] = amp * std::cos(arg);
    }
    return f;
}
}  // namespace

TEST_SUITE("grid") {

TEST_CASE("constructor validates shape") {
    CHECK_THROWS_AS(make_grid({7, 8}, {kTwoPi, kTwoPi}), ConfigError);   // odd
    CHECK_THROWS_AS(make_grid({8, 6}, {kTwoPi, kTwoPi}), ConfigError);   // too small
    CHECK_THROWS_AS(make_grid({8}, {kTwoPi}), ConfigError);              // dim 1
    CHECK_THROWS_AS(make_grid({8, 8, 8, 8}, {1, 1, 1, 1}), ConfigError); // dim 4
    CHECK_THROWS_AS(make_grid({8, 8}, {0.0, kTwoPi}), ConfigError);      // length 0
    CHECK_THROWS_AS(make_grid({8, 8}, {kTwoPi}), ConfigError);           // mismatched specs
    CHECK_NOTHROW(make_grid({8, 10}, {1.0, 2.0}));
    CHECK_NOTHROW(make_grid(3, 8, kTwoPi));
}

TEST_CASE("accessors and layout") {
    GridPtr g = make_grid({8, 16}, {1.0, 4.0});
    CHECK(g->dim() == 2);
    CHECK(g->total() == 128);
    CHECK(g->sizes()[0] == 8);
    CHECK(g->sizes()[1] == 16);
    CHECK(g->spacing(0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g->spacing(1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g->min_spacing() == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g->cell_volume() == doctest::Approx(0.125 * 0.25).epsilon(1e-15));

    // Row-major, last axis fastest: flat = ix * 16 + iy.
    int idx[2];
    g->unflatten(5 * 16 + 11, idx);
    CHECK(idx[0] == 5);
    CHECK(idx[1] == 11);
    CHECK(g->coordinate(1, 3) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("wavenumber convention and nyquist") {
    GridPtr g = make_grid({8, 8}, {kTwoPi, kTwoPi});
    // index m for idx < N/2, idx - N otherwise
    CHECK(g->wavenumber(0, 0) == 0);
    CHECK(g->wavenumber(0, 3) == 3);
    CHECK(g->wavenumber(0, 4) == -4);  // nyquist
    CHECK(g->wavenumber(0, 7) == -1);
    CHECK(g->is_nyquist(0, 4));
    CHECK(!g->is_nyquist(0, 3));

    // wavevector = 2 pi m / L; with L = 2 pi the entries equal m.
    int idx[2] = {2, 7};
    double k[2];
    g->wavevector(idx, k);
    CHECK(k[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(k[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("forward transform of a pure cosine puts a/2 at +-k") {
    GridPtr g = make_grid({16, 16}, {kTwoPi, kTwoPi});
    const double amp = 1.75;
    Field f = cosine_mode(g, {3, 2}, amp, 0.0);
    const auto& spec = f.spectrum();

    int idx[2];
    double worst_other = 0.0;
    Complex at_plus(0, 0), at_minus(0, 0);
    for (std::int64_t i = 0; i < g->total(); ++i) {
        g->unflatten(i, idx);
        const int m0 = g->wavenumber(0, idx[0]);
        const int m1 = g->wavenumber(1, idx[1]);
        if (m0 == 3 && m1 == 2)
            at_plus = spec[i];
        else if (m0 == -3 && m1 == -2)
            at_minus = spec[i];
        else
            worst_other = std::max(worst_other, std::abs(spec[i]));
    }
    CHECK(std::abs(at_plus - Complex(amp / 2, 0)) < 1e-13);
    CHECK(std::abs(at_minus - Complex(amp / 2, 0)) < 1e-13);
    CHECK(worst_other < 1e-13);
}

TEST_CASE("transform round trip and parseval") {
    GridPtr g = make_grid({16, 8}, {kTwoPi, 3.0});
    Field f(g);
    auto& v = f.mutable_values();
    // Deterministic quasi-random nodal data.
    for (std::int64_t i = 0; i < g->total(); ++i)
        v[i] = std::sin(0.37 * static_cast<double>(i) + 0.2) +
               0.3 * std::cos(1.7 * static_cast<double>(i));

    Field back(g);
    back.assign_spectrum(f.spectrum());
    double worst = 0.0;
    for (std::int64_t i = 0; i < g->total(); ++i)
        worst = std::max(worst, std::abs(back[i] - f[i]));
    CHECK(worst < 1e-13);

    // Parseval with forward normalization 1/N: sum f^2 / N == sum |fhat|^2.
    double phys = 0.0;
    for (std::int64_t i = 0; i < g->total(); ++i) phys += f[i] * f[i];
    phys /= static_cast<double>(g->total());
    double spec = 0.0;
    for (const Complex& a : f.spectrum()) spec += std::norm(a);
    CHECK(phys == doctest::Approx(spec).epsilon(1e-13));
}

TEST_CASE("same_layout") {
    GridPtr a = make_grid({8, 8}, {1.0, 2.0});
    GridPtr b = make_grid({8, 8}, {1.0, 2.0});
    GridPtr c = make_grid({8, 8}, {1.0, 2.5});
    GridPtr d = make_grid({8, 10}, {1.0, 2.0});
    CHECK(a->same_layout(*b));
    CHECK(!a->same_layout(*c));
    CHECK(!a->same_layout(*d));
}

}  // TEST_SUITE grid

TEST_SUITE("field") {

TEST_CASE("mean equals the zero-mode amplitude, exactly for cached spectra") {
    GridPtr g = make_grid({8, 8}, {kTwoPi, kTwoPi});
    Field f(g);
    f.fill(2.5);
    CHECK(f.mean() == doctest::Approx(2.5).epsilon(1e-15));

    // A spectrum with the zero mode set to exactly 0 keeps mean() at 0.0
    // bit-exactly, because assign_spectrum retains the cache.
    std::vector<Complex> spec(g->total(), Complex(0, 0));
    int idx[2];
    for (std::int64_t i = 0; i < g->total(); ++i) {
        g->unflatten(i, idx);
        if (g->wavenumber(0, idx[0]) == 1 && g->wavenumber(1, idx[1]) == 0)
            spec[i] = Complex(0.5, 0);
        if (g->wavenumber(0, idx[0]) == -1 && g->wavenumber(1, idx[1]) == 0)
            spec[i] = Complex(0.5, 0);
    }
    Field h(g);
    h.assign_spectrum(spec);
    CHECK(h.mean() == 0.0);  // exact: read from the cache, not re-transformed
}

TEST_CASE("mutable access invalidates the spectral cache") {
    GridPtr g = make_grid({8, 8}, {kTwoPi, kTwoPi});
    Field f(g);
    f.fill(1.0);
    CHECK(std::abs(f.spectrum()[0] - Complex(1.0, 0)) < 1e-14);
    f.mutable_values()[0] += 64.0;  // raises the mean by 1
    CHECK(std::abs(f.spectrum()[0] - Complex(2.0, 0)) < 1e-13);
}

TEST_CASE("arithmetic") {
    GridPtr g = make_grid({8, 8}, {kTwoPi, kTwoPi});
    Field a(g), b(g);
    a.fill(2.0);
    b.fill(0.5);
    a += b;
    a *= 2.0;
    a -= b;
    CHECK(a[17] == doctest::Approx(4.5).epsilon(1e-15));

    VectorField u(g);
    CHECK(u.components() == 2);
    u[0].fill(3.0);
    u[1].fill(-4.0);
    CHECK(u.max_pointwise_norm() == doctest::Approx(5.0).epsilon(1e-15));
    u *= 2.0;
    CHECK(u.max_pointwise_norm() == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("size mismatches are rejected") {
    GridPtr g = make_grid({8, 8}, {kTwoPi, kTwoPi});
    CHECK_THROWS_AS(Field(g, std::vector<double>(63, 0.0)), ConfigError);
    Field f(g);
    CHECK_THROWS_AS(f.assign_spectrum(std::vector<Complex>(10)), ConfigError);
}

}  // TEST_SUITE field
