// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "chemns/errors.hpp"
#include "chemns/norms.hpp"
#include "chemns/operators.hpp"

namespace chemns {

namespace {

void require_positive_pair(const ExponentPair& pr, const char* which) {
    if (!(pr.p > 0.0) || !(pr.q > 0.0)) {
        std::ostringstream msg;
        msg << which << ": exponents must lie in (0, inf]";
        throw std::domain_error(msg.str());
    }
}

std::string with_bound(const char* text, double bound) {
    std::ostringstream msg;
    msg << text << " = " << bound;
    return msg.str();
}

}  // namespace

std::array<PairVerdict, 2> check_pairs(const CriterionSpec& spec) {
    const double a = spec.alpha;
    if (!(a > 0.5)) throw std::domain_error("theorem out of range: requires alpha > 1/2");
    if (spec.kind == CriterionKind::ProdiSerrin && !(a > 0.75))
        throw std::domain_error("theorem out of range: ProdiSerrin requires alpha > 3/4");
    require_positive_pair(spec.pair1, "pair1");
    require_positive_pair(spec.pair2, "pair2");

    std::array<PairVerdict, 2> out;

    // Comparisons are exact (no epsilon): boundary cases like (2, inf) rely
    // on IEEE division by infinity giving 0.
    const double p1 = spec.pair1.p, q1 = spec.pair1.q;
    if (!(q1 > 3.0)) {
        out[0].violated = "q1 > 3";
    } else if (2.0 / p1 + 3.0 / q1 > 1.0) {
        out[0].violated = "2/p1 + 3/q1 <= 1";
    } else {
        out[0].admissible = true;
    }

    const double p2 = spec.pair2.p, q2 = spec.pair2.q;
    if (spec.kind == CriterionKind::ProdiSerrin) {
        const double bound = std::max(1.5, 3.0 / (2.0 * a - 1.0));
        if (!(q2 > bound)) {
            out[1].violated = with_bound("q2 > max{3/2, 3/(2a-1)}", bound);
        } else if (2.0 * a / p2 + 3.0 / q2 > 2.0 * a - 1.0) {
            out[1].violated = "2a/p2 + 3/q2 <= 2a-1";
        } else {
            out[1].admissible = true;
        }
    } else {
        const double bound = std::max(1.0, 3.0 / (2.0 * a));
        if (!(q2 > bound)) {
            out[1].violated = with_bound("q2 > max{1, 3/(2a)}", bound);
        } else if (2.0 * a / p2 + 3.0 / q2 > 2.0 * a) {
            out[1].violated = "2a/p2 + 3/q2 <= 2a";
        } else {
            out[1].admissible = true;
        }
    }
    return out;
}

namespace {

double field_minimum(const Field& f) {
    double best = f.values().empty() ? 0.0 : f.values()[0];
    for (double v : f.values()) best = std::min(best, v);
    return best;
}

double field_maximum(const Field& f) {
    double best = f.values().empty() ? 0.0 : f.values()[0];
    for (double v : f.values()) best = std::max(best, v);
    return best;
}

double extra_norm_value(const State& state, const NormSelector& sel) {
    const std::string& f = sel.field;
    if (sel.kind == 'h') {
        if (f == "n") return hs_norm(state.n, sel.order);
        if (f == "c") return hs_norm(state.c, sel.order);
        if (f == "u") return hs_norm(state.u, sel.order);
        throw ConfigError("norm selector: 'h' kind supports fields n, c, u");
    }
    if (f == "n") return lp_norm(state.n, sel.order);
    if (f == "c") return lp_norm(state.c, sel.order);
    if (f == "u") return lp_norm(state.u, sel.order);
    if (f == "gradn") return gradient_lp_norm(state.n, sel.order);
    if (f == "gradc") return gradient_lp_norm(state.c, sel.order);
    if (f == "gradu") return gradient_lp_norm(state.u, sel.order);
    throw ConfigError("norm selector: unknown field '" + f + "'");
}

// Instantaneous part of a record (everything except the accumulators).
DiagnosticsRecord instantaneous(const State& state, const ModelParams& params,
                                const DiagnosticsConfig& cfg) {
    DiagnosticsRecord r;
    r.t = state.t;
    const double vol_factor = state.grid().cell_volume();
    double mn = 0.0, mc = 0.0;
    for (double v : state.n.values()) mn += v;
    for (double v : state.c.values()) mc += v;
    r.mass_n = mn * vol_factor;
    r.mass_c = mc * vol_factor;
    r.min_n = field_minimum(state.n);
    r.max_n = field_maximum(state.n);
    r.min_c = field_minimum(state.c);
    r.max_c = field_maximum(state.c);
    r.n_l2 = lp_norm(state.n, 2.0);
    r.c_l2 = lp_norm(state.c, 2.0);
    r.u_l2 = lp_norm(state.u, 2.0);
    r.c_linf = lp_norm(state.c, std::numeric_limits<double>::infinity());
    r.gradc_l2 = gradient_lp_norm(state.c, 2.0);
    r.gradu_l2 = gradient_lp_norm(state.u, 2.0);
    r.u_halpha = hs_norm(state.u, params.alpha);
    r.u_h1 = hs_norm(state.u, 1.0);
    r.divu_l2 = lp_norm(divergence(state.u), 2.0);

    if (cfg.criterion) {
        const CriterionSpec& spec = *cfg.criterion;
        r.crit_n_q1 = cfg.b1_gradc_variant ? gradient_lp_norm(state.c, spec.pair1.q)
                                           : lp_norm(state.n, spec.pair1.q);
        r.crit_u_q2 = lp_norm(state.u, spec.pair2.q);
        r.crit_gradc_q1 = gradient_lp_norm(state.c, spec.pair1.q);
        r.crit_gradu_q2 = gradient_lp_norm(state.u, spec.pair2.q);
    }

    r.extra_norms.reserve(cfg.norms.size());
    for (const NormSelector& sel : cfg.norms) r.extra_norms.push_back(extra_norm_value(state, sel));
    return r;
}

// One trapezoid (or running-sup) update of an accumulator term.
void advance_term(AccumulatorTerm& term, double p, double prev_norm, double cur_norm, double dt) {
    if (std::isinf(p)) {
        term.is_sup = true;
        term.value = std::max({term.value, prev_norm, cur_norm});
    } else {
        term.value += 0.5 * dt * (std::pow(prev_norm, p) + std::pow(cur_norm, p));
    }
}

}  // namespace

DiagnosticsRecord initial_record(const State& state, const ModelParams& params,
                                 const DiagnosticsConfig& cfg, double s_fchi) {
    DiagnosticsRecord r = instantaneous(state, params, cfg);
    if (cfg.criterion) {
        // Sup-convention terms already see the initial norms.
        if (std::isinf(cfg.criterion->pair1.p)) {
            r.b1_1.is_sup = r.b2_1.is_sup = true;
            r.b1_1.value = r.crit_n_q1;
            r.b2_1.value = r.crit_gradc_q1;
        }
        if (std::isinf(cfg.criterion->pair2.p)) {
            r.b1_2.is_sup = r.b2_2.is_sup = true;
            r.b1_2.value = r.crit_u_q2;
            r.b2_2.value = r.crit_gradu_q2;
        }
    }
    if (params.alpha > 0.75) r.bootstrap = bootstrap_quantity(state, params, s_fchi, r);
    return r;
}

DiagnosticsRecord accumulate(const DiagnosticsRecord& prev, const State& state,
                             const ModelParams& params, const DiagnosticsConfig& cfg,
                             double s_fchi) {
    DiagnosticsRecord r = instantaneous(state, params, cfg);
    const double dt = state.t - prev.t;
    r.dt = dt;
    r.b1_1 = prev.b1_1;
    r.b1_2 = prev.b1_2;
    r.b2_1 = prev.b2_1;
    r.b2_2 = prev.b2_2;
    r.bootstrap_integral = prev.bootstrap_integral;

    if (cfg.criterion) {
        const CriterionSpec& spec = *cfg.criterion;
        advance_term(r.b1_1, spec.pair1.p, prev.crit_n_q1, r.crit_n_q1, dt);
        advance_term(r.b1_2, spec.pair2.p, prev.crit_u_q2, r.crit_u_q2, dt);
        advance_term(r.b2_1, spec.pair1.p, prev.crit_gradc_q1, r.crit_gradc_q1, dt);
        advance_term(r.b2_2, spec.pair2.p, prev.crit_gradu_q2, r.crit_gradu_q2, dt);
    }
    if (params.alpha > 0.75) {
        const double expo = 4.0 * params.alpha / (4.0 * params.alpha - 3.0);
        r.bootstrap_integral +=
            0.5 * dt * (std::pow(prev.gradu_l2, expo) + std::pow(r.gradu_l2, expo));
        r.bootstrap = bootstrap_quantity(state, params, s_fchi, r);
    }
    return r;
}

double bootstrap_quantity(const State& state, const ModelParams& params, double s_fchi,
                          const DiagnosticsRecord& record) {
    if (!(params.alpha > 0.75))
        throw std::domain_error("bootstrap quantity out of range: requires alpha > 3/4");
    const double gc3 = gradient_lp_norm(state.c, 3.0);
    const double u3 = lp_norm(state.u, 3.0);
    return s_fchi * s_fchi * gc3 * gc3 + u3 * u3 + record.bootstrap_integral;
}

std::vector<MonitorVerdict> energy_monitors(const State& state, const ModelParams& params,
                                            const MonitorRefs& refs, double dt,
                                            const InvariantTolerances& tol) {
    std::vector<MonitorVerdict> out;
    auto add = [&out](std::string name, double magnitude, bool enforced) {
        MonitorVerdict v;
        v.name = std::move(name);
        v.magnitude = magnitude;
        v.pass = magnitude <= 0.0;
        v.enforced = enforced;
        out.push_back(std::move(v));
    };

    std::int64_t bad = 0;
    for (double v : state.n.values()) bad += !std::isfinite(v);
    for (double v : state.c.values()) bad += !std::isfinite(v);
    for (int a = 0; a < state.u.components(); ++a)
        for (double v : state.u[a].values()) bad += !std::isfinite(v);
    add("finite", static_cast<double>(bad), true);
    if (bad > 0) return out;  // remaining monitors are meaningless on NaN

    const double min_n = field_minimum(state.n);
    add("n_min", -min_n - tol.positivity * refs.n0_sup, true);

    const double min_c = field_minimum(state.c);
    const double max_c = field_maximum(state.c);
    const double c_low = -min_c - tol.positivity * refs.c0_linf;
    const double c_high = max_c - refs.c0_linf * (1.0 + tol.positivity);
    add("c_range", std::max(c_low, c_high), true);

    const double divu = lp_norm(divergence(state.u), 2.0);
    const double uh1 = hs_norm(state.u, 1.0);
    add("div_u", divu - tol.divergence * uh1, true);

    const double c_linf = lp_norm(state.c, std::numeric_limits<double>::infinity());
    add("c_linf_nonincreasing",
        c_linf - refs.prev_c_linf - tol.monotonicity_slack * refs.c0_linf, true);

    const double c_l2 = lp_norm(state.c, 2.0);
    const bool n_nonneg = min_n >= -tol.positivity * refs.n0_sup;
    // The L2 law for c needs n >= 0; outside that regime the check is moot.
    add("c_l2_nonincreasing",
        n_nonneg ? c_l2 - refs.prev_c_l2 - tol.monotonicity_slack * refs.c0_l2 : 0.0, true);

    double mass = 0.0;
    for (double v : state.n.values()) mass += v;
    mass *= state.grid().cell_volume();
    const double denom = std::abs(refs.mass_n0) > 0.0 ? std::abs(refs.mass_n0) : 1.0;
    add("mass_n", std::abs(mass - refs.mass_n0) / denom - tol.mass_drift, false);

    if (dt > 0.0) {
        // Discrete trend bound d/dt ||n||_2^2 <= 2 S ||grad c||_3 ||n||_6
        // ||grad n||_2 - 2 kappa_n ||grad n||_2^2. Reported only: the slack
        // absorbs time-discretization noise.
        const double n_l2 = lp_norm(state.n, 2.0);
        const double gn2 = gradient_lp_norm(state.n, 2.0);
        const double lhs = (n_l2 * n_l2 - refs.prev_n_l2 * refs.prev_n_l2) / dt;
        const double rhs = 2.0 * refs.s_fchi * gradient_lp_norm(state.c, 3.0) *
                               lp_norm(state.n, 6.0) * gn2 -
                           2.0 * params.kappa_n * gn2 * gn2;
        add("n_l2_trend", lhs - rhs - 1e-6 * std::max(1.0, std::abs(rhs)), false);
    }
    return out;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, double t_a, double t_b) {
    if (!(t_a < t_b)) throw std::domain_error("fit_decay: window must satisfy t_a < t_b");
    std::vector<double> xs, ys;
    for (const auto& [t, v] : series) {
        if (t < t_a - 1e-12 || t > t_b + 1e-12) continue;
        if (!(v > 0.0))
            throw std::domain_error("fit_decay: nonpositive value in window (log undefined)");
        xs.push_back(std::log1p(t));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 8) throw std::domain_error("fit_decay: needs >= 8 samples in the window");

    const std::size_t m = xs.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::domain_error("fit_decay: degenerate window (single abscissa)");

    DecayFit fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = ys[i] - (fit.intercept + fit.exponent * xs[i]);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / m);
    fit.samples = static_cast<int>(m);
    fit.t_a = t_a;
    fit.t_b = t_b;
    return fit;
}

std::optional<double> reference_decay_exponent(const std::string& column, int dim, double alpha) {
    if (column == "u_halpha") return -0.5;
    if (column == "gradn_l2" || column == "gradc_l2") return -(dim / 4.0 + 0.5);

    const auto underscore = column.rfind("_l");
    if (underscore == std::string::npos) return std::nullopt;
    const std::string field = column.substr(0, underscore);
    const std::string ptext = column.substr(underscore + 2);
    if (ptext.empty() || ptext == "inf") return std::nullopt;
    char* end = nullptr;
    const double p = std::strtod(ptext.c_str(), &end);
    if (end == nullptr || *end != '\0' || !(p >= 1.0)) return std::nullopt;

    if (field == "n" || field == "c") {
        if (p > 1.0 && std::isfinite(p)) return -(dim / 2.0) * (1.0 - 1.0 / p);
        return std::nullopt;
    }
    if (field == "u") {
        if (p >= 2.0) return -(dim / (2.0 * alpha)) * (0.5 - 1.0 / p);
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace chemns
