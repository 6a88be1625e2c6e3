// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_CONFIG_HPP
#define CHEMNS_CONFIG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "chemns/diagnostics.hpp"
#include "chemns/model.hpp"
#include "chemns/picard.hpp"
#include "chemns/stepper.hpp"

namespace chemns {

/// Parsed form of the flat config document. The grammar is line based:
///
///   # comment (anywhere on a line)
///   [section]
///   key = value
///
/// Sections and keys (all optional; an empty document is a valid config):
///
///   [grid]        dim (2|3), n, nx, ny, nz, length, length_x/_y/_z
///   [model]       alpha, kappa_n, kappa_c, chi, f, grad_phi
///   [init]        n, c, u, snapshot
///   [stepper]     scheme (if-rk2|if-euler), dt_init, cfl, t_end,
///                 max_dt_halvings
///   [diagnostics] cadence, kind (ps|bv), pairs (p1,q1,p2,q2; inf allowed),
///                 b1_gradc_variant, norms (field:kind:order, comma list)
///   [picard]      t0, nodes, max_iters, tol, bisect, max_halvings
///   [output]      csv, snapshot, snapshot_every
///
/// Scalar function specs: constant:V, linear:V, saturating:V (V * s/(1+s)),
/// table:x1:y1,x2:y2,... (natural cubic spline, >= 3 knots).
///
/// Initial data specs are sums of terms joined by '+':
///   scalar fields: zero, constant:V, gaussian:amp,width,cx,cy[,cz],
///                  random:seed,kmax,amplitude[,offset]
///   velocity:      zero, constant:vx,vy[,vz], taylor-green:eps (2-d),
///                  random:seed,kmax,amplitude[,offset]
/// "gaussian-blob" and "random-bandlimited" are accepted synonyms. The
/// random preset is reproducible by construction; see random_bandlimited.
///
/// Unknown sections or keys, duplicate keys, malformed numbers and violated
/// parameter ranges are all rejected with the 1-based line number of the
/// offending line. Parsing performs full validation; the build_* helpers
/// assume a validated config.
struct RunConfig {
    // [grid]
    int dim = 2;
    std::array<int, 3> sizes = {32, 32, 32};
    std::array<double, 3> lengths = {6.283185307179586, 6.283185307179586, 6.283185307179586};

    // [model]
    double alpha = 1.0;
    double kappa_n = 1.0;
    double kappa_c = 1.0;
    std::string chi = "constant:1";
    std::string f = "linear:1";
    std::string grad_phi = "zero";

    // [init]
    std::string init_n = "zero";
    std::string init_c = "zero";
    std::string init_u = "zero";
    std::string init_snapshot;  // nonempty: restart from this snapshot file

    // [stepper]
    std::string scheme = "if-rk2";
    double dt_init = 0.4;
    double cfl = 0.4;
    double t_end = 0.0;
    int max_dt_halvings = 10;

    // [diagnostics]
    int cadence = 1;
    std::string criterion_kind;  // "", "ps" or "bv"
    std::array<double, 4> criterion_pairs = {2.0, std::numeric_limits<double>::infinity(), 2.0,
                                             std::numeric_limits<double>::infinity()};
    bool b1_gradc_variant = false;
    std::string norms;  // raw comma list of field:kind:order selectors

    // [picard]
    double picard_t0 = 0.25;
    int picard_nodes = 33;
    int picard_max_iters = 30;
    double picard_tol = 1e-9;
    bool picard_bisect = false;
    int picard_max_halvings = 20;

    // [output]
    std::string csv_path;
    std::string snapshot_path;
    int snapshot_every = 0;  // accepted steps between checkpoints; 0 = off

    bool operator==(const RunConfig&) const = default;
};

/// Parses and fully validates a config document. Throws ConfigError carrying
/// the 1-based line number of the first problem.
RunConfig parse_config(const std::string& text);

/// parse_config over the contents of a file.
RunConfig load_config_file(const std::string& path);

/// Canonical single-document form: every section and key in a fixed order,
/// numbers at 17 significant digits. parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

/// Parses a scalar function spec (see RunConfig). Throws ConfigError.
ScalarFunc parse_scalar_func(const std::string& spec);

/// Parses a comma-separated norm selector list "field:kind:order,...":
/// field in {n, c, u, gradn, gradc, gradu}, kind 'l' or 'h', order a real
/// (>= 1 or inf for 'l'). Throws ConfigError.
std::vector<NormSelector> parse_norm_list(const std::string& list);

/// CSV column name of a selector: n:l:2 -> "n_l2", u:l:inf -> "u_linf",
/// c:h:1 -> "c_h1", gradu:l:4 -> "gradu_l4".
std::string norm_column_name(const NormSelector& sel);

GridPtr build_grid(const RunConfig& cfg);
ModelParams build_model(const RunConfig& cfg, const GridPtr& grid);
/// Builds (n0, c0, u0) from the [init] section, or reloads the snapshot
/// named there (whose layout must match the configured grid). A preset
/// velocity is Leray projected; a snapshot is restored byte for byte and
/// left untouched (the divergence monitor re-checks it on the first step).
State build_initial_state(const RunConfig& cfg, const GridPtr& grid);
StepperConfig build_stepper(const RunConfig& cfg);
DiagnosticsConfig build_diagnostics(const RunConfig& cfg);
PicardConfig build_picard(const RunConfig& cfg);

/// SplitMix64 step: state += 0x9E3779B97F4A7C15, then the output mix
/// z ^= z >> 30, z *= 0xBF58476D1CE4E5B9, z ^= z >> 27,
/// z *= 0x94D049BB133111EB, z ^= z >> 31.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Uniform double in [0, 1): top 53 bits of splitmix64_next scaled by 2^-53.
double splitmix64_uniform(std::uint64_t& state);

/// Reproducible band-limited random field
///   amplitude / sqrt(M) * sum_m (a_m cos(k_m . x) + b_m sin(k_m . x)) + offset
/// over the M representative modes with |m_i| <= kmax whose first nonzero
/// component is positive, visited in lexicographic order; a_m then b_m are
/// consecutive SplitMix64 draws mapped to [-1, 1].
Field random_bandlimited(GridPtr grid, std::uint64_t seed, int kmax, double amplitude,
                         double offset = 0.0);

}  // namespace chemns

#endif  // CHEMNS_CONFIG_HPP
