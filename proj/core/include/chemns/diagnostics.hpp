// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_DIAGNOSTICS_HPP
#define CHEMNS_DIAGNOSTICS_HPP

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chemns/model.hpp"

namespace chemns {

// ---------------------------------------------------------------------------
// Regularity-criterion exponent pairs

enum class CriterionKind { ProdiSerrin, BeiraoDaVeiga };

/// An integrability pair (p, q); either member may be infinity.
struct ExponentPair {
    double p = 2.0;
    double q = std::numeric_limits<double>::infinity();
};

/// A criterion instance: which family, the dissipation exponent, and the two
/// exponent pairs. pair1 weighs the cell density (or the chemical gradient),
/// pair2 the velocity (or the velocity gradient).
struct CriterionSpec {
    CriterionKind kind = CriterionKind::ProdiSerrin;
    double alpha = 1.0;
    ExponentPair pair1;
    ExponentPair pair2;
};

struct PairVerdict {
    bool admissible = false;
    /// Name of the first violated constraint; empty when admissible.
    std::string violated;
};

/// Classifies both pairs against the admissibility inequalities:
///   pair1 (both kinds): 2/p1 + 3/q1 <= 1 with 3 < q1 <= inf;
///   pair2, ProdiSerrin:   2a/p2 + 3/q2 <= 2a - 1, q2 > max{3/2, 3/(2a-1)};
///   pair2, BeiraoDaVeiga: 2a/p2 + 3/q2 <= 2a,     q2 > max{1, 3/(2a)}.
/// Throws std::domain_error ("theorem out of range") when alpha is outside
/// the family's range: alpha <= 3/4 for ProdiSerrin, alpha <= 1/2 for
/// BeiraoDaVeiga.
std::array<PairVerdict, 2> check_pairs(const CriterionSpec& spec);

// ---------------------------------------------------------------------------
// Per-step diagnostics records and time accumulators

/// One accumulator term: a trapezoidal time integral of norm^p, or the
/// running sup of the norm when p = infinity (flagged).
struct AccumulatorTerm {
    double value = 0.0;
    bool is_sup = false;
};

/// Extra norm column: field in {n, c, u, gradn, gradc, gradu}, kind 'l'
/// (Lebesgue, rectangle quadrature) or 'h' (homogeneous Sobolev), order.
struct NormSelector {
    std::string field;
    char kind = 'l';
    double order = 2.0;
};

struct DiagnosticsConfig {
    /// Record every cadence-th accepted step (plus the initial and final states).
    int cadence = 1;
    std::optional<CriterionSpec> criterion;
    /// Replace ||n||_{q1} by ||grad c||_{q1} in the first accumulator.
    bool b1_gradc_variant = false;
    std::vector<NormSelector> norms;
};

struct DiagnosticsRecord {
    double t = 0.0;
    double dt = 0.0;  // dt of the step that produced this state (0 initially)

    double mass_n = 0.0, mass_c = 0.0;
    double min_n = 0.0, max_n = 0.0, min_c = 0.0, max_c = 0.0;
    double n_l2 = 0.0, c_l2 = 0.0, u_l2 = 0.0;
    double c_linf = 0.0;
    double gradc_l2 = 0.0;
    double gradu_l2 = 0.0;
    double u_halpha = 0.0;  // homogeneous H^alpha norm of u
    double divu_l2 = 0.0;
    double u_h1 = 0.0;  // homogeneous H^1 norm of u

    // Criterion integrand norms at this instant (zero when no criterion).
    double crit_n_q1 = 0.0, crit_u_q2 = 0.0, crit_gradc_q1 = 0.0, crit_gradu_q2 = 0.0;
    // B1 = term over pair1 + term over pair2; likewise B2 on gradients.
    AccumulatorTerm b1_1, b1_2, b2_1, b2_2;

    // Time integral of ||grad u||_2^{4a/(4a-3)} and the full bootstrap
    // combination; meaningful only when alpha > 3/4.
    double bootstrap_integral = 0.0;
    double bootstrap = 0.0;

    std::vector<double> extra_norms;

    double b1() const { return b1_1.value + b1_2.value; }
    double b2() const { return b2_1.value + b2_2.value; }
};

/// Record of the initial state (accumulators start at zero). s_fchi is the
/// kinetics bound of the run (kinetics_bound at the initial ||c||_inf).
DiagnosticsRecord initial_record(const State& state, const ModelParams& params,
                                 const DiagnosticsConfig& cfg, double s_fchi);

/// Record at the next sample instant: recomputes all instantaneous norms and
/// advances the accumulators by one trapezoid over [prev.t, state.t]
/// (running sup for p = infinity terms). The bootstrap integral uses the
/// same trapezoidal rule.
DiagnosticsRecord accumulate(const DiagnosticsRecord& prev, const State& state,
                             const ModelParams& params, const DiagnosticsConfig& cfg,
                             double s_fchi);

/// The continuation quantity S^2 ||grad c||_{L3}^2 + ||u||_{L3}^2
/// + integral of ||grad u||_2^{4a/(4a-3)}. The integral part is read from
/// the record; s_fchi is the kinetics bound for the run's c_max. Throws
/// std::domain_error when alpha <= 3/4 (the exponent requires it).
double bootstrap_quantity(const State& state, const ModelParams& params, double s_fchi,
                          const DiagnosticsRecord& record);

// ---------------------------------------------------------------------------
// Invariant monitors

struct MonitorVerdict {
    std::string name;
    bool pass = true;
    /// Signed violation magnitude (<= 0 means within tolerance).
    double magnitude = 0.0;
    /// Enforced verdicts participate in step accept/reject; the others are
    /// reported only.
    bool enforced = true;
};

/// Reference quantities fixed at the start of a run plus the previous
/// accepted step's norms, against which the monitors compare.
struct MonitorRefs {
    double n0_sup = 0.0;   // sup |n_0|
    double c0_linf = 0.0;  // ||c_0||_inf
    double c0_l2 = 0.0;
    double mass_n0 = 0.0;
    double s_fchi = 0.0;
    double prev_c_linf = 0.0;
    double prev_c_l2 = 0.0;
    double prev_n_l2 = 0.0;
};

/// Evaluates the runtime invariants on a candidate state: finiteness,
/// positivity of n, the range bound on c, smallness of div u, per-step
/// nonincrease of ||c||_inf and ||c||_2 (the latter only demanded while n is
/// nonnegative within tolerance), the mass drift of n (reported), and the
/// L2 trend bound on n against its chemotaxis production (reported; the
/// bounding constant is not constructive).
std::vector<MonitorVerdict> energy_monitors(const State& state, const ModelParams& params,
                                            const MonitorRefs& refs, double dt,
                                            const InvariantTolerances& tol);

// ---------------------------------------------------------------------------
// Decay-exponent fitting

struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual of the straight-line fit in
    /// (log(1+t), log value) coordinates.
    double residual = 0.0;
    int samples = 0;
    double t_a = 0.0, t_b = 0.0;
    /// Attached when the series' selector matches a known decay law.
    std::optional<double> reference;
};

/// Least-squares slope of log(value) against log(1+t) over samples with
/// t_a <= t <= t_b. Requires >= 8 samples in the window and positive values;
/// throws std::domain_error otherwise.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, double t_a, double t_b);

/// Reference decay exponent for a time-series column name, when one of the
/// established laws applies (dim-generalized):
///   n_l<p>, c_l<p>           -> -(dim/2) (1 - 1/p)        for 1 < p < inf
///   gradn_l2, gradc_l2       -> -(dim/4 + 1/2)
///   u_l<p>                   -> -(dim/(2 alpha)) (1/2 - 1/p)   for p >= 2
///   u_halpha                 -> -1/2
/// Returns nullopt for anything else.
std::optional<double> reference_decay_exponent(const std::string& column, int dim, double alpha);

}  // namespace chemns

#endif  // CHEMNS_DIAGNOSTICS_HPP
