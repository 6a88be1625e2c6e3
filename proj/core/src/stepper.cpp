// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/stepper.hpp"

#include <cmath>

#include "chemns/errors.hpp"
#include "chemns/norms.hpp"
#include "chemns/operators.hpp"

namespace chemns {

namespace {

double semigroup_factor(double kappa, double sigma, double k2, double dt) {
    if (k2 == 0.0) return 1.0;
    const double k2s = (sigma == 1.0) ? k2 : std::pow(k2, sigma);
    return std::exp(-kappa * k2s * dt);
}

// v <- E(dt) * (v + weight * N), the integrating-factor Euler form. With
// weight = dt/2 and dt/2 decay this is the RK2 midpoint predictor.
Field if_euler_update(const Field& v, const Field& rhs, double kappa, double sigma, double dt,
                      double weight) {
    const SpectralGrid& g = v.grid();
    std::vector<Complex> spec = v.spectrum();
    const std::vector<Complex>& nl = rhs.spectrum();
    for (std::int64_t i = 0; i < g.total(); ++i) {
        spec[i] = (spec[i] + weight * nl[i]) * semigroup_factor(kappa, sigma, g.k_squared(i), dt);
    }
    Field out(v.grid_ptr());
    out.assign_spectrum(std::move(spec));
    return out;
}

// v <- E(dt) * v + dt * E(dt/2) * N, the RK2 corrector.
Field if_rk2_corrector(const Field& v, const Field& rhs_mid, double kappa, double sigma,
                       double dt) {
    const SpectralGrid& g = v.grid();
    std::vector<Complex> spec = v.spectrum();
    const std::vector<Complex>& nl = rhs_mid.spectrum();
    for (std::int64_t i = 0; i < g.total(); ++i) {
        const double k2 = g.k_squared(i);
        spec[i] = spec[i] * semigroup_factor(kappa, sigma, k2, dt) +
                  dt * semigroup_factor(kappa, sigma, k2, 0.5 * dt) * nl[i];
    }
    Field out(v.grid_ptr());
    out.assign_spectrum(std::move(spec));
    return out;
}

}  // namespace

State step_once(const State& state, const ModelParams& params, Scheme scheme, double dt) {
    const Field nl_n = rhs_n(state, params);
    const Field nl_c = rhs_c(state, params);
    const VectorField nl_u = rhs_u(state, params);

    State out(state.grid_ptr());
    out.t = state.t + dt;

    if (scheme == Scheme::IfEuler) {
        out.n = if_euler_update(state.n, nl_n, params.kappa_n, 1.0, dt, dt);
        out.c = if_euler_update(state.c, nl_c, params.kappa_c, 1.0, dt, dt);
        for (int a = 0; a < out.u.components(); ++a)
            out.u[a] = if_euler_update(state.u[a], nl_u[a], 1.0, params.alpha, dt, dt);
    } else {
        State mid(state.grid_ptr());
        mid.t = state.t + 0.5 * dt;
        mid.n = if_euler_update(state.n, nl_n, params.kappa_n, 1.0, 0.5 * dt, 0.5 * dt);
        mid.c = if_euler_update(state.c, nl_c, params.kappa_c, 1.0, 0.5 * dt, 0.5 * dt);
        for (int a = 0; a < mid.u.components(); ++a)
            mid.u[a] = if_euler_update(state.u[a], nl_u[a], 1.0, params.alpha, 0.5 * dt, 0.5 * dt);

        const Field nl_n2 = rhs_n(mid, params);
        const Field nl_c2 = rhs_c(mid, params);
        const VectorField nl_u2 = rhs_u(mid, params);

        out.n = if_rk2_corrector(state.n, nl_n2, params.kappa_n, 1.0, dt);
        out.c = if_rk2_corrector(state.c, nl_c2, params.kappa_c, 1.0, dt);
        for (int a = 0; a < out.u.components(); ++a)
            out.u[a] = if_rk2_corrector(state.u[a], nl_u2[a], 1.0, params.alpha, dt);
    }
    out.u = leray_project(out.u);
    return out;
}

RunSummary run(State& state, const ModelParams& params, const StepperConfig& cfg,
               const DiagnosticsConfig& diag, const RecordHook& hook,
               const StateHook& state_hook) {
    if (!(cfg.dt_init > 0.0)) throw ConfigError("dt_init must be positive");
    if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0) throw ConfigError("cfl must lie in (0, 1]");
    if (cfg.max_dt_halvings < 0) throw ConfigError("max_dt_halvings must be >= 0");
    if (diag.cadence < 1) throw ConfigError("diagnostics cadence must be >= 1");

    const double inf = std::numeric_limits<double>::infinity();
    RunSummary summary;
    summary.s_fchi = kinetics_bound(params, lp_norm(state.c, inf));

    MonitorRefs refs;
    refs.n0_sup = std::max(std::abs(lp_norm(state.n, inf)), 0.0);
    refs.c0_linf = lp_norm(state.c, inf);
    refs.c0_l2 = lp_norm(state.c, 2.0);
    refs.s_fchi = summary.s_fchi;
    {
        double mass = 0.0;
        for (double v : state.n.values()) mass += v;
        refs.mass_n0 = mass * state.grid().cell_volume();
    }
    refs.prev_c_linf = refs.c0_linf;
    refs.prev_c_l2 = refs.c0_l2;
    refs.prev_n_l2 = lp_norm(state.n, 2.0);

    summary.records.push_back(initial_record(state, params, diag, summary.s_fchi));
    if (hook) hook(summary.records.back());

    const double t_end = cfg.t_end;
    const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));
    const double h_min = state.grid().min_spacing();
    double dt_prev = cfg.dt_init;
    int since_record = 0;

    while (state.t < t_end - t_eps) {
        const double drift =
            lp_norm(state.u, inf) + summary.s_fchi * gradient_lp_norm(state.c, inf);
        double dt = std::min(
            {cfg.dt_init, 2.0 * dt_prev, cfg.cfl * h_min / std::max(1.0, drift), t_end - state.t});

        State candidate(state.grid_ptr());
        std::vector<MonitorVerdict> verdicts;
        int halvings = 0;
        for (;;) {
            candidate = step_once(state, params, cfg.scheme, dt);
            verdicts = energy_monitors(candidate, params, refs, dt, cfg.tol);
            bool enforced_failure = false;
            for (const auto& v : verdicts)
                if (v.enforced && !v.pass) enforced_failure = true;
            if (!cfg.enforce_monitors || !enforced_failure) break;
            if (halvings >= cfg.max_dt_halvings) {
                std::string names;
                for (const auto& v : verdicts)
                    if (v.enforced && !v.pass) names += (names.empty() ? "" : ", ") + v.name;
                throw SuspectedSingularity("suspected singularity at t = " +
                                               std::to_string(state.t) + ": step rejected " +
                                               std::to_string(halvings + 1) +
                                               " times (failing monitors: " + names + ")",
                                           summary.records.back(), state.t, dt);
            }
            dt *= 0.5;
            ++halvings;
            ++summary.rejected;
        }

        state = std::move(candidate);
        ++summary.accepted;
        dt_prev = dt;
        for (const auto& v : verdicts)
            if (!v.enforced && !v.pass) summary.monitor_failures.emplace_back(state.t, v);

        refs.prev_c_linf = lp_norm(state.c, inf);
        refs.prev_c_l2 = lp_norm(state.c, 2.0);
        refs.prev_n_l2 = lp_norm(state.n, 2.0);

        if (state_hook) state_hook(state, summary.accepted);

        if (++since_record == diag.cadence || state.t >= t_end - t_eps) {
            summary.records.push_back(
                accumulate(summary.records.back(), state, params, diag, summary.s_fchi));
            if (hook) hook(summary.records.back());
            since_record = 0;
        }
    }
    summary.final_dt = dt_prev;
    return summary;
}

}  // namespace chemns
