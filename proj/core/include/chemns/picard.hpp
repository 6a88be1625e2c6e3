// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_PICARD_HPP
#define CHEMNS_PICARD_HPP

#include "chemns/model.hpp"

namespace chemns {

/// Fixed-point local solver: iterate j+1 solves the linear parabolic system
/// whose forcing (advection, chemotaxis flux, consumption, buoyancy) is
/// frozen on iterate j's stored trajectory. Iterate 0 is identically zero;
/// every later iterate starts from the true initial data.
struct PicardConfig {
    /// Length of the local window.
    double t0 = 0.25;
    /// Stored trajectory nodes over [0, t0] (>= 16); the linear solves take
    /// one integrating-factor midpoint step per node interval, with the
    /// frozen forcing linearly interpolated in time between nodes.
    int n_time_nodes = 33;
    int max_iters = 30;
    /// Convergence threshold on the distance functional
    /// W^j = sup_t (||n^j - n^{j-1}||_2^2 + ||c^j - c^{j-1}||_{H^1}^2
    ///              + ||u^j - u^{j-1}||_2^2).
    double tol = 1e-9;
    bool contraction_report = true;
};

struct PicardReport {
    int iters = 0;
    /// sup-in-time W^j for j = 1..iters.
    std::vector<double> w_history;
    /// w_history[k+1] / w_history[k].
    std::vector<double> contraction_ratios;
    bool converged = false;
    double t0 = 0.0;
};

struct PicardResult {
    /// Final iterate at the time nodes 0, h, ..., t0 (h = t0/(nodes-1)).
    std::vector<State> trajectory;
    PicardReport report;
};

/// Runs the iteration until sup_t W <= tol or max_iters is reached.
/// converged stays false on exhaustion (shrink t0 and retry).
PicardResult picard_solve(const State& initial, const ModelParams& params,
                          const PicardConfig& cfg);

/// Halves t0 until the iteration converges with every contraction ratio
/// from the second one on at or below ratio_threshold, or the halving
/// budget runs out (check report.converged and the ratios on return).
PicardResult bisect_contractive_t0(const State& initial, const ModelParams& params,
                                   PicardConfig cfg, double ratio_threshold = 0.5,
                                   int max_halvings = 12);

}  // namespace chemns

#endif  // CHEMNS_PICARD_HPP
