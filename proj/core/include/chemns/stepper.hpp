// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_STEPPER_HPP
#define CHEMNS_STEPPER_HPP

#include <functional>
#include <stdexcept>

#include "chemns/diagnostics.hpp"
#include "chemns/model.hpp"

namespace chemns {

enum class Scheme { IfEuler, IfRk2 };

struct StepperConfig {
    double dt_init = 1e-2;
    /// CFL fraction in (0, 1]; dt <= cfl * h_min / max(1, ||u||_inf +
    /// S_{f,chi} ||grad c||_inf). dt never exceeds dt_init and never grows
    /// by more than x2 per accepted step.
    double cfl = 0.4;
    double t_end = 0.0;
    Scheme scheme = Scheme::IfRk2;
    /// Rejected-step retries (dt halvings) before declaring a suspected
    /// singularity.
    int max_dt_halvings = 10;
    InvariantTolerances tol;
    /// When false, monitor verdicts are still recorded but never cause
    /// rejection (targeted property tests only; keep true for real runs).
    bool enforce_monitors = true;
};

/// Raised when a step cannot be accepted within max_dt_halvings; carries the
/// diagnostics of the last accepted state. The discrete stand-in for a
/// finite maximal existence time.
class SuspectedSingularity : public std::runtime_error {
  public:
    SuspectedSingularity(std::string what, DiagnosticsRecord last, double t, double dt)
        : std::runtime_error(std::move(what)), last_record(std::move(last)), t(t), dt(dt) {}

    DiagnosticsRecord last_record;
    double t;
    double dt;
};

/// One integrating-factor IMEX update with the given dt: the diffusion of n
/// and c and the fractional dissipation of u are applied as exact semigroups
/// exp(-kappa |k|^2 dt) and exp(-|k|^{2 alpha} dt) in Fourier space; the
/// nonlinear terms advance explicitly (forward Euler or midpoint RK2 on the
/// integrating-factor variables). With all nonlinearities zero each mode
/// decays by exactly its semigroup factor. The velocity is re-projected.
/// No monitor evaluation, no adaptivity.
State step_once(const State& state, const ModelParams& params, Scheme scheme, double dt);

struct RunSummary {
    std::vector<DiagnosticsRecord> records;
    long accepted = 0;
    long rejected = 0;
    double final_dt = 0.0;
    double s_fchi = 0.0;
    /// Failures of reported (non-enforced) monitors on accepted samples,
    /// as (t, verdict) pairs. Enforced failures never appear here; they
    /// cause rejection instead.
    std::vector<std::pair<double, MonitorVerdict>> monitor_failures;
};

using RecordHook = std::function<void(const DiagnosticsRecord&)>;

/// Called after every accepted step with the new state and the running count
/// of accepted steps (1-based); used for periodic checkpointing.
using StateHook = std::function<void(const State&, long)>;

/// Advances the state in place to cfg.t_end with adaptive dt: each step is
/// attempted at min(dt_init, 2 * previous dt, CFL bound, remaining time) and
/// halved on any enforced monitor violation. Records diagnostics on the
/// initial state, every cfg.cadence-th accepted step and the final state.
/// Throws SuspectedSingularity when the halving budget is exhausted.
RunSummary run(State& state, const ModelParams& params, const StepperConfig& cfg,
               const DiagnosticsConfig& diag, const RecordHook& hook = {},
               const StateHook& state_hook = {});

}  // namespace chemns

#endif  // CHEMNS_STEPPER_HPP
