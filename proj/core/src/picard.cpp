// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/picard.hpp"

#include <cmath>

#include "chemns/errors.hpp"
#include "chemns/norms.hpp"
#include "chemns/operators.hpp"

namespace chemns {

namespace {

struct Forcing {
    Field n;
    Field c;
    VectorField u;
    explicit Forcing(GridPtr g) : n(g), c(g), u(g) {}
};

// E(dt) * v + dt * E(dt/2) * G, the midpoint update for a linear equation
// with external forcing G evaluated at the interval midpoint.
Field forced_step(const Field& v, std::vector<Complex> g_mid, double kappa, double sigma,
                  double dt) {
    const SpectralGrid& grid = v.grid();
    const std::vector<Complex>& spec = v.spectrum();
    for (std::int64_t i = 0; i < grid.total(); ++i) {
        const double k2 = grid.k_squared(i);
        const double k2s = (k2 == 0.0) ? 0.0 : (sigma == 1.0 ? k2 : std::pow(k2, sigma));
        g_mid[i] = spec[i] * std::exp(-kappa * k2s * dt) +
                   dt * std::exp(-kappa * k2s * 0.5 * dt) * g_mid[i];
    }
    Field out(v.grid_ptr());
    out.assign_spectrum(std::move(g_mid));
    return out;
}

std::vector<Complex> midpoint_spectrum(const Field& a, const Field& b) {
    std::vector<Complex> out = a.spectrum();
    const std::vector<Complex>& sb = b.spectrum();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (out[i] + sb[i]);
    return out;
}

double distance_functional(const State& a, const State& b) {
    Field dn = a.n;
    dn -= b.n;
    Field dc = a.c;
    dc -= b.c;
    VectorField du = a.u;
    du -= b.u;
    const double n2 = lp_norm(dn, 2.0);
    const double ch1 = hs_inhom_norm(dc, 1.0);
    const double u2 = lp_norm(du, 2.0);
    return n2 * n2 + ch1 * ch1 + u2 * u2;
}

}  // namespace

PicardResult picard_solve(const State& initial, const ModelParams& params,
                          const PicardConfig& cfg) {
    if (!(cfg.t0 > 0.0)) throw ConfigError("picard window t0 must be positive");
    if (cfg.n_time_nodes < 16) throw ConfigError("picard n_time_nodes must be >= 16");
    if (cfg.max_iters < 1) throw ConfigError("picard max_iters must be >= 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("picard tol must be positive");

    const int nodes = cfg.n_time_nodes;
    const double h = cfg.t0 / (nodes - 1);
    GridPtr grid = initial.grid_ptr();

    // Iterate 0 is the zero trajectory (not the initial data).
    std::vector<State> prev;
    prev.reserve(nodes);
    for (int i = 0; i < nodes; ++i) {
        State z(grid);
        z.t = initial.t + i * h;
        prev.push_back(std::move(z));
    }

    PicardResult result;
    result.report.t0 = cfg.t0;

    for (int j = 1; j <= cfg.max_iters; ++j) {
        // Frozen forcing at the nodes of the previous iterate.
        std::vector<Forcing> forcing;
        forcing.reserve(nodes);
        for (int i = 0; i < nodes; ++i) {
            Forcing f(grid);
            f.n = rhs_n(prev[i], params);
            f.c = rhs_c(prev[i], params);
            f.u = rhs_u(prev[i], params);
            forcing.push_back(std::move(f));
        }

        std::vector<State> next;
        next.reserve(nodes);
        next.push_back(initial);
        next.front().t = initial.t;
        for (int i = 0; i + 1 < nodes; ++i) {
            const State& cur = next.back();
            State stepped(grid);
            stepped.t = initial.t + (i + 1) * h;
            stepped.n = forced_step(cur.n, midpoint_spectrum(forcing[i].n, forcing[i + 1].n),
                                    params.kappa_n, 1.0, h);
            stepped.c = forced_step(cur.c, midpoint_spectrum(forcing[i].c, forcing[i + 1].c),
                                    params.kappa_c, 1.0, h);
            for (int a = 0; a < stepped.u.components(); ++a)
                stepped.u[a] = forced_step(
                    cur.u[a], midpoint_spectrum(forcing[i].u[a], forcing[i + 1].u[a]), 1.0,
                    params.alpha, h);
            stepped.u = leray_project(stepped.u);
            next.push_back(std::move(stepped));
        }

        double w = 0.0;
        for (int i = 0; i < nodes; ++i) w = std::max(w, distance_functional(next[i], prev[i]));
        result.report.w_history.push_back(w);
        result.report.iters = j;
        if (result.report.w_history.size() >= 2) {
            const auto& hist = result.report.w_history;
            const double denom = hist[hist.size() - 2];
            result.report.contraction_ratios.push_back(denom > 0.0 ? w / denom : 0.0);
        }

        prev = std::move(next);
        if (w <= cfg.tol) {
            result.report.converged = true;
            break;
        }
    }
    result.trajectory = std::move(prev);
    return result;
}

PicardResult bisect_contractive_t0(const State& initial, const ModelParams& params,
                                   PicardConfig cfg, double ratio_threshold, int max_halvings) {
    PicardResult result;
    for (int attempt = 0; attempt <= max_halvings; ++attempt) {
        result = picard_solve(initial, params, cfg);
        bool contractive = result.report.converged;
        const auto& ratios = result.report.contraction_ratios;
        for (std::size_t k = 1; k < ratios.size(); ++k)
            if (ratios[k] > ratio_threshold) contractive = false;
        if (contractive) return result;
        cfg.t0 *= 0.5;
    }
    return result;
}

}  // namespace chemns
