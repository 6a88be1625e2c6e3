// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "chemns/config.hpp"
#include "chemns/errors.hpp"
#include "chemns/io.hpp"
#include "chemns/norms.hpp"
#include "chemns/operators.hpp"
#include "chemns/oracle.hpp"
#include "chemns/picard.hpp"
#include "chemns/stepper.hpp"

namespace {

using namespace chemns;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSingularity = 3;
constexpr int kExitMonitor = 4;

double inf() { return std::numeric_limits<double>::infinity(); }

std::string g6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string g17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CHEMNS_THREADS caps internal parallelism. The numerical core is serial,
/// so any cap >= 1 is honored trivially; the variable is still validated so
/// a malformed value fails loudly instead of being ignored.
int thread_cap_from_env() {
    const char* env = std::getenv("CHEMNS_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    errno = 0;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || errno == ERANGE || n < 1)
        throw ConfigError("CHEMNS_THREADS must be a positive integer, got '" + std::string(env) +
                          "'");
    return static_cast<int>(n > 1024 ? 1024 : n);
}

double parse_cli_double(const std::string& v, const std::string& what) {
    if (v == "inf") return inf();
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError(what + ": expected a number, got '" + v + "'");
    return d;
}

std::vector<double> parse_cli_list(const std::string& v, std::size_t count,
                                   const std::string& what) {
    std::vector<double> out;
    std::string::size_type start = 0;
    while (start <= v.size()) {
        const auto pos = v.find(',', start);
        const std::string tok =
            pos == std::string::npos ? v.substr(start) : v.substr(start, pos - start);
        out.push_back(parse_cli_double(tok, what));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.size() != count)
        throw ConfigError(what + ": expected " + std::to_string(count) + " comma-separated values");
    return out;
}

double max_concentration(const State& state) {
    double m = 0.0;
    for (double v : state.c.values()) m = std::max(m, v);
    return m;
}

int cmd_run(const std::string& config_path, bool strict) {
    const RunConfig rc = load_config_file(config_path);
    const GridPtr grid = build_grid(rc);
    const ModelParams model = build_model(rc, grid);
    State state = build_initial_state(rc, grid);
    validate_hypotheses(model, max_concentration(state));

    const DiagnosticsConfig diag = build_diagnostics(rc);
    const StepperConfig stepper = build_stepper(rc);

    StateHook checkpoints;
    if (rc.snapshot_every > 0) {
        checkpoints = [&rc](const State& s, long accepted) {
            if (accepted % rc.snapshot_every == 0)
                write_snapshot(s, rc.alpha, rc.snapshot_path + "." + std::to_string(accepted));
        };
    }

    RunSummary summary = run(state, model, stepper, diag, {}, checkpoints);

    if (!rc.csv_path.empty()) {
        write_timeseries_csv(rc.csv_path, summary.records, diag, rc.alpha);
        std::cout << "wrote " << rc.csv_path << "\n";
    }
    if (!rc.snapshot_path.empty()) {
        write_snapshot(state, rc.alpha, rc.snapshot_path);
        std::cout << "wrote " << rc.snapshot_path << "\n";
    }

    const DiagnosticsRecord& last = summary.records.back();
    std::cout << "run complete: t = " << g17(state.t) << ", accepted = " << summary.accepted
              << ", rejected = " << summary.rejected << ", final dt = " << g6(summary.final_dt)
              << "\n";
    std::cout << "final: mass_n = " << g17(last.mass_n) << ", n_l2 = " << g6(last.n_l2)
              << ", c_linf = " << g6(last.c_linf) << ", u_l2 = " << g6(last.u_l2)
              << ", divu_l2 = " << g6(last.divu_l2) << "\n";

    if (!summary.monitor_failures.empty()) {
        for (const auto& [t, verdict] : summary.monitor_failures)
            std::cout << "reported monitor failure at t = " << g6(t) << ": " << verdict.name
                      << " (magnitude " << g6(verdict.magnitude) << ")\n";
        if (strict) {
            std::cerr << "monitor failure under --strict\n";
            return kExitMonitor;
        }
    }
    return kExitOk;
}

int cmd_picard(const std::string& config_path) {
    const RunConfig rc = load_config_file(config_path);
    const GridPtr grid = build_grid(rc);
    const ModelParams model = build_model(rc, grid);
    const State state = build_initial_state(rc, grid);
    validate_hypotheses(model, max_concentration(state));

    const PicardConfig pc = build_picard(rc);
    const PicardResult result =
        rc.picard_bisect ? bisect_contractive_t0(state, model, pc, 0.5, rc.picard_max_halvings)
                         : picard_solve(state, model, pc);

    const PicardReport& rep = result.report;
    std::cout << "picard: converged = " << (rep.converged ? "true" : "false")
              << ", iterations = " << rep.iters << ", t0 = " << g17(rep.t0) << "\n";
    std::cout << "w_history =";
    for (double w : rep.w_history) std::cout << " " << g6(w);
    std::cout << "\ncontraction_ratios =";
    for (double r : rep.contraction_ratios) std::cout << " " << g6(r);
    std::cout << "\n";
    if (!rc.snapshot_path.empty() && !result.trajectory.empty()) {
        write_snapshot(result.trajectory.back(), rc.alpha, rc.snapshot_path);
        std::cout << "wrote " << rc.snapshot_path << "\n";
    }
    return kExitOk;
}

int cmd_check_criteria(double alpha, const std::string& kind, const std::string& pairs) {
    if (kind != "ps" && kind != "bv") throw ConfigError("--kind must be ps or bv");
    const auto v = parse_cli_list(pairs, 4, "--pairs");

    CriterionSpec spec;
    spec.kind = kind == "ps" ? CriterionKind::ProdiSerrin : CriterionKind::BeiraoDaVeiga;
    spec.alpha = alpha;
    spec.pair1 = {v[0], v[1]};
    spec.pair2 = {v[2], v[3]};

    const auto verdicts = check_pairs(spec);
    const ExponentPair* ps[2] = {&spec.pair1, &spec.pair2};
    for (int i = 0; i < 2; ++i) {
        std::cout << "pair" << (i + 1) << " (p = " << g6(ps[i]->p) << ", q = " << g6(ps[i]->q)
                  << "): ";
        if (verdicts[i].admissible)
            std::cout << "admissible\n";
        else
            std::cout << "inadmissible (violates " << verdicts[i].violated << ")\n";
    }
    return kExitOk;
}

int cmd_fit_decay(const std::string& csv_path, const std::string& column,
                  const std::string& window, int dim, double alpha) {
    const auto w = parse_cli_list(window, 2, "--window");
    const CsvTable table = load_csv_file(csv_path);
    DecayFit fit = fit_decay(table.series(column), w[0], w[1]);
    fit.reference = reference_decay_exponent(column, dim, alpha);

    std::cout << "column = " << column << "\n";
    std::cout << "samples = " << fit.samples << " over t in [" << g6(fit.t_a) << ", "
              << g6(fit.t_b) << "]\n";
    std::cout << "exponent = " << g17(fit.exponent) << "\n";
    std::cout << "residual = " << g6(fit.residual) << "\n";
    if (fit.reference) {
        std::cout << "reference = " << g17(*fit.reference) << "\n";
        std::cout << "relative deviation = "
                  << g6(std::abs(fit.exponent - *fit.reference) / std::abs(*fit.reference))
                  << "\n";
    } else {
        std::cout << "reference = none\n";
    }
    return kExitOk;
}

struct ValidateReport {
    int failures = 0;

    void check(const std::string& name, bool pass, double value, double bound) {
        if (pass) {
            std::cout << "PASS: " << name << " (" << g6(value) << " <= " << g6(bound) << ")\n";
        } else {
            std::cout << "FAIL: " << name << " (" << g6(value) << " > " << g6(bound) << ")\n";
            ++failures;
        }
    }
};

int cmd_validate(int n) {
    if (n < 8 || n % 2 != 0) throw ConfigError("--grid must be even and >= 8");
    ValidateReport report;

    const GridPtr grid = make_grid(2, n, 2.0 * 3.14159265358979323846);
    const Field f = random_bandlimited(grid, 7u, 3, 1.0, 0.25);

    {
        Field g(grid);
        g.assign_spectrum(f.spectrum());
        double worst = 0.0, scale = 0.0;
        for (std::int64_t i = 0; i < f.size(); ++i) {
            worst = std::max(worst, std::abs(g[i] - f[i]));
            scale = std::max(scale, std::abs(f[i]));
        }
        report.check("transform round trip", worst <= 1e-12 * scale, worst, 1e-12 * scale);
    }
    {
        double sum = 0.0;
        for (const Complex& a : f.spectrum()) sum += std::norm(a);
        double vol = 1.0;
        for (double L : grid->lengths()) vol *= L;
        const double parseval = std::sqrt(vol * sum);
        const double l2 = lp_norm(f, 2.0);
        const double err = std::abs(parseval - l2) / l2;
        report.check("parseval identity", err <= 1e-12, err, 1e-12);
    }
    {
        const GridPtr small = make_grid(2, 8, 2.0 * 3.14159265358979323846);
        const Field sf = random_bandlimited(small, 11u, 2, 1.0);
        const DenseSpectralOracle oracle(small);
        const Field fast = frac_laplacian(sf, 0.8);
        const Field dense = oracle.dense_frac_laplacian(sf, 0.8);
        double worst = 0.0, scale = 0.0;
        for (std::int64_t i = 0; i < sf.size(); ++i) {
            worst = std::max(worst, std::abs(fast[i] - dense[i]));
            scale = std::max(scale, std::abs(dense[i]));
        }
        report.check("dense oracle agreement", worst <= 1e-12 * std::max(1.0, scale), worst,
                     1e-12 * std::max(1.0, scale));
    }
    {
        const Field mode0 = exact_heat_mode(grid, {2, 1}, 1.0, 0.3, 0.9, 0.0);
        const Field stepped = apply_mode_decay(mode0, 1.0, 0.9, 0.37);
        const Field exact = exact_heat_mode(grid, {2, 1}, 1.0, 0.3, 0.9, 0.37);
        double worst = 0.0;
        for (std::int64_t i = 0; i < mode0.size(); ++i)
            worst = std::max(worst, std::abs(stepped[i] - exact[i]));
        report.check("semigroup mode decay", worst <= 1e-13, worst, 1e-13);
    }
    {
        VectorField v(grid);
        v[0] = random_bandlimited(grid, 21u, 3, 1.0);
        v[1] = random_bandlimited(grid, 22u, 3, 1.0);
        const VectorField pv = leray_project(v);
        const double div = lp_norm(divergence(pv), 2.0);
        const double h1 = hs_norm(pv, 1.0);
        report.check("projected field solenoidal", div <= 1e-12 * std::max(1.0, h1), div,
                     1e-12 * std::max(1.0, h1));
        const VectorField ppv = leray_project(pv);
        double worst = 0.0, scale = 0.0;
        for (int c = 0; c < 2; ++c)
            for (std::int64_t i = 0; i < grid->total(); ++i) {
                worst = std::max(worst, std::abs(ppv[c][i] - pv[c][i]));
                scale = std::max(scale, std::abs(pv[c][i]));
            }
        report.check("projector idempotent", worst <= 1e-13 * std::max(1.0, scale), worst,
                     1e-13 * std::max(1.0, scale));
    }
    {
        RunConfig rc;
        rc.dim = 2;
        rc.sizes = {n, n, 32};
        rc.init_n = "gaussian:1,1,2.5,2.5";
        rc.init_c = "gaussian:0.8,1.2,3.5,3.5";
        rc.t_end = 0.25;
        rc.dt_init = 0.01;
        const GridPtr g2 = build_grid(rc);
        const ModelParams model = build_model(rc, g2);
        State state = build_initial_state(rc, g2);
        const RunSummary summary =
            run(state, model, build_stepper(rc), build_diagnostics(rc));
        const double drift = std::abs(summary.records.back().mass_n - summary.records[0].mass_n) /
                             std::abs(summary.records[0].mass_n);
        report.check("mass conservation (short run)", drift <= 1e-12, drift, 1e-12);

        const auto tmp = std::filesystem::temp_directory_path() / "chemns_validate.cnsf";
        write_snapshot(state, rc.alpha, tmp.string());
        const Snapshot back = read_snapshot(tmp.string());
        std::filesystem::remove(tmp);
        bool exact = back.alpha == rc.alpha && back.state.t == state.t;
        auto same = [](const std::vector<double>& a, const std::vector<double>& b) {
            return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
        };
        exact = exact && same(back.state.n.values(), state.n.values());
        exact = exact && same(back.state.c.values(), state.c.values());
        for (int c = 0; c < 2; ++c) exact = exact && same(back.state.u[c].values(), state.u[c].values());
        report.check("snapshot round trip bit-exact", exact, exact ? 0.0 : 1.0, 0.0);
    }

    if (report.failures > 0) {
        std::cerr << report.failures << " validation check(s) failed\n";
        return kExitMonitor;
    }
    std::cout << "all validation checks passed\n";
    return kExitOk;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const SuspectedSingularity& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "last accepted sample: t = " << g6(e.last_record.t)
                  << ", n_l2 = " << g6(e.last_record.n_l2) << ", u_l2 = " << g6(e.last_record.u_l2)
                  << "\n";
        return kExitSingularity;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SnapshotError& e) {
        std::cerr << "snapshot error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const EvaluationError& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral simulator for chemotaxis coupled to a fractionally "
                 "dissipated incompressible flow"};
    app.require_subcommand(1);

    bool strict = false;
    app.add_flag("--strict", strict,
                 "exit with code 4 when any reported (non-enforced) monitor fails");

    std::string run_config;
    CLI::App* run_cmd = app.add_subcommand("run", "advance a configured simulation to t_end");
    run_cmd->add_option("config", run_config, "config file")->required();

    std::string picard_config;
    CLI::App* picard_cmd =
        app.add_subcommand("picard", "run the fixed-point iteration on [0, t0]");
    picard_cmd->add_option("config", picard_config, "config file")->required();

    double cc_alpha = 1.0;
    std::string cc_kind, cc_pairs;
    CLI::App* check_cmd =
        app.add_subcommand("check-criteria", "classify regularity-criterion exponent pairs");
    check_cmd->add_option("--alpha", cc_alpha, "dissipation exponent")->required();
    check_cmd->add_option("--kind", cc_kind, "criterion family: ps or bv")->required();
    check_cmd->add_option("--pairs", cc_pairs, "p1,q1,p2,q2 (inf allowed)")->required();

    std::string fd_csv, fd_column, fd_window;
    int fd_dim = 3;
    double fd_alpha = 1.0;
    CLI::App* fit_cmd =
        app.add_subcommand("fit-decay", "fit a power-law decay exponent from a time series");
    fit_cmd->add_option("csv", fd_csv, "time-series CSV written by run")->required();
    fit_cmd->add_option("--column", fd_column, "column name, e.g. c_l2")->required();
    fit_cmd->add_option("--window", fd_window, "fit window a,b in time")->required();
    fit_cmd->add_option("--dim", fd_dim, "spatial dimension for the reference law (default 3)");
    fit_cmd->add_option("--alpha", fd_alpha,
                        "dissipation exponent for the reference law (default 1)");

    int validate_n = 32;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run built-in consistency checks");
    validate_cmd->add_option("--grid", validate_n, "grid points per axis (default 32)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    return guarded([&]() -> int {
        thread_cap_from_env();
        if (run_cmd->parsed()) return cmd_run(run_config, strict);
        if (picard_cmd->parsed()) return cmd_picard(picard_config);
        if (check_cmd->parsed()) return cmd_check_criteria(cc_alpha, cc_kind, cc_pairs);
        if (fit_cmd->parsed()) return cmd_fit_decay(fd_csv, fd_column, fd_window, fd_dim, fd_alpha);
        if (validate_cmd->parsed()) return cmd_validate(validate_n);
        return kExitConfig;
    });
}
