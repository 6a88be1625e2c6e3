// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "chemns/errors.hpp"
#include "chemns/io.hpp"
#include "chemns/operators.hpp"

namespace chemns {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            return out;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double to_double(const std::string& v, int line, const std::string& key) {
    std::string t = trim(v);
    if (t == "inf") return kInf;
    if (t == "-inf") return -kInf;
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'", line);
    return d;
}

int to_int(const std::string& v, int line, const std::string& key) {
    std::string t = trim(v);
    char* end = nullptr;
    errno = 0;
    const long n = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || n > 1000000000L ||
        n < -1000000000L)
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'", line);
    return static_cast<int>(n);
}

bool to_bool(const std::string& v, int line, const std::string& key) {
    const std::string t = trim(v);
    if (t == "true") return true;
    if (t == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'", line);
}

std::uint64_t to_seed(const std::string& v) {
    const std::string t = trim(v);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("random preset: seed must be a nonnegative integer, got '" + v + "'");
    errno = 0;
    const unsigned long long s = std::strtoull(t.c_str(), nullptr, 10);
    if (errno == ERANGE) throw ConfigError("random preset: seed out of range, got '" + v + "'");
    return s;
}

double term_double(const std::string& v, const std::string& what) {
    try {
        return to_double(v, 0, what);
    } catch (const ConfigError&) {
        throw ConfigError(what + ": expected a number, got '" + v + "'");
    }
}

// One summand of an initial data spec: name plus comma-separated arguments.
struct InitTerm {
    std::string name;
    std::vector<std::string> args;
};

InitTerm split_term(const std::string& term) {
    const auto colon = term.find(':');
    InitTerm out;
    if (colon == std::string::npos) {
        out.name = trim(term);
    } else {
        out.name = trim(term.substr(0, colon));
        out.args = split(term.substr(colon + 1), ',');
    }
    return out;
}

std::vector<InitTerm> split_terms(const std::string& spec) {
    std::vector<InitTerm> out;
    for (const std::string& part : split(spec, '+')) {
        if (part.empty()) throw ConfigError("empty term in initial data spec '" + spec + "'");
        out.push_back(split_term(part));
    }
    return out;
}

bool is_random_name(const std::string& n) { return n == "random" || n == "random-bandlimited"; }
bool is_gaussian_name(const std::string& n) { return n == "gaussian" || n == "gaussian-blob"; }

struct RandomArgs {
    std::uint64_t seed = 0;
    int kmax = 1;
    double amplitude = 0.0;
    double offset = 0.0;
};

RandomArgs check_random_term(const InitTerm& t) {
    if (t.args.size() != 3 && t.args.size() != 4)
        throw ConfigError("random preset needs seed,kmax,amplitude[,offset]");
    RandomArgs out;
    out.seed = to_seed(t.args[0]);
    out.kmax = to_int(t.args[1], 0, "kmax");
    if (out.kmax < 1) throw ConfigError("random preset: kmax must be >= 1");
    out.amplitude = term_double(t.args[2], "random amplitude");
    if (t.args.size() == 4) out.offset = term_double(t.args[3], "random offset");
    return out;
}

struct GaussianArgs {
    double amplitude = 0.0;
    double width = 1.0;
    std::vector<double> center;
};

GaussianArgs check_gaussian_term(const InitTerm& t, int dim) {
    if (static_cast<int>(t.args.size()) != 2 + dim)
        throw ConfigError("gaussian preset needs amplitude,width," +
                          std::string(dim == 2 ? "cx,cy" : "cx,cy,cz"));
    GaussianArgs out;
    out.amplitude = term_double(t.args[0], "gaussian amplitude");
    out.width = term_double(t.args[1], "gaussian width");
    if (!(out.width > 0.0)) throw ConfigError("gaussian preset: width must be positive");
    for (int a = 0; a < dim; ++a)
        out.center.push_back(term_double(t.args[2 + a], "gaussian center"));
    return out;
}

void check_scalar_init(const std::string& spec, int dim) {
    for (const InitTerm& t : split_terms(spec)) {
        if (t.name == "zero") {
            if (!t.args.empty()) throw ConfigError("zero preset takes no arguments");
        } else if (t.name == "constant") {
            if (t.args.size() != 1) throw ConfigError("constant preset needs one value");
            term_double(t.args[0], "constant value");
        } else if (is_gaussian_name(t.name)) {
            check_gaussian_term(t, dim);
        } else if (is_random_name(t.name)) {
            check_random_term(t);
        } else {
            throw ConfigError("unknown initial data term '" + t.name + "'");
        }
    }
}

void check_vector_init(const std::string& spec, int dim) {
    for (const InitTerm& t : split_terms(spec)) {
        if (t.name == "zero") {
            if (!t.args.empty()) throw ConfigError("zero preset takes no arguments");
        } else if (t.name == "constant") {
            if (static_cast<int>(t.args.size()) != dim)
                throw ConfigError("constant velocity needs one value per component");
            for (const auto& a : t.args) term_double(a, "constant component");
        } else if (t.name == "taylor-green") {
            if (dim != 2) throw ConfigError("taylor-green preset is two-dimensional");
            if (t.args.size() != 1) throw ConfigError("taylor-green preset needs one amplitude");
            term_double(t.args[0], "taylor-green amplitude");
        } else if (is_random_name(t.name)) {
            check_random_term(t);
        } else {
            throw ConfigError("unknown velocity term '" + t.name + "'");
        }
    }
}

void check_grad_phi(const std::string& spec, int dim) {
    const InitTerm t = split_term(spec);
    if (t.name == "zero") {
        if (!t.args.empty()) throw ConfigError("grad_phi zero takes no arguments");
    } else if (t.name == "constant") {
        if (static_cast<int>(t.args.size()) != dim)
            throw ConfigError("grad_phi constant needs one value per component");
        for (const auto& a : t.args) term_double(a, "grad_phi component");
    } else {
        throw ConfigError("grad_phi must be zero or constant:g1,...,g" + std::to_string(dim));
    }
}

// Adds the periodized bump amplitude * exp(-|x - center - m L|^2 / width^2)
// summed over the (2 * images + 1)^dim nearest lattice images.
void add_gaussian(Field& out, const GaussianArgs& g, int images) {
    const SpectralGrid& grid = out.grid();
    const int d = grid.dim();
    const int span = 2 * images + 1;
    const int count = d == 2 ? span * span : span * span * span;
    auto& v = out.mutable_values();
    int idx[3], shift[3];
    for (std::int64_t flat = 0; flat < grid.total(); ++flat) {
        grid.unflatten(flat, idx);
        double acc = 0.0;
        for (int im = 0; im < count; ++im) {
            int rest = im;
            for (int a = 0; a < d; ++a) {
                shift[a] = rest % span - images;
                rest /= span;
            }
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double dx =
                    grid.coordinate(a, idx[a]) - g.center[a] - shift[a] * grid.lengths()[a];
                r2 += dx * dx;
            }
            acc += std::exp(-r2 / (g.width * g.width));
        }
        v[flat] += g.amplitude * acc;
    }
}

void add_constant(Field& out, double v) {
    for (double& x : out.mutable_values()) x += v;
}

void add_taylor_green(VectorField& u, double eps) {
    const SpectralGrid& grid = u.grid();
    const double ax = 2.0 * std::numbers::pi / grid.lengths()[0];
    const double by = 2.0 * std::numbers::pi / grid.lengths()[1];
    auto& u0 = u[0].mutable_values();
    auto& u1 = u[1].mutable_values();
    int idx[2];
    for (std::int64_t flat = 0; flat < grid.total(); ++flat) {
        grid.unflatten(flat, idx);
        const double x = grid.coordinate(0, idx[0]);
        const double y = grid.coordinate(1, idx[1]);
        u0[flat] += eps * std::cos(ax * x) * std::sin(by * y);
        u1[flat] -= eps * (ax / by) * std::sin(ax * x) * std::cos(by * y);
    }
}

Field build_scalar_init(const std::string& spec, const GridPtr& grid) {
    Field out(grid);
    for (const InitTerm& t : split_terms(spec)) {
        if (t.name == "zero") continue;
        if (t.name == "constant") {
            add_constant(out, term_double(t.args[0], "constant value"));
        } else if (is_gaussian_name(t.name)) {
            add_gaussian(out, check_gaussian_term(t, grid->dim()), 2);
        } else {
            const RandomArgs r = check_random_term(t);
            out += random_bandlimited(grid, r.seed, r.kmax, r.amplitude, r.offset);
        }
    }
    return out;
}

VectorField build_vector_init(const std::string& spec, const GridPtr& grid) {
    VectorField u(grid);
    for (const InitTerm& t : split_terms(spec)) {
        if (t.name == "zero") continue;
        if (t.name == "constant") {
            for (int c = 0; c < u.components(); ++c)
                add_constant(u[c], term_double(t.args[c], "constant component"));
        } else if (t.name == "taylor-green") {
            add_taylor_green(u, term_double(t.args[0], "taylor-green amplitude"));
        } else {
            const RandomArgs r = check_random_term(t);
            for (int c = 0; c < u.components(); ++c)
                u[c] += random_bandlimited(grid, r.seed + static_cast<std::uint64_t>(c), r.kmax,
                                           r.amplitude, r.offset);
        }
    }
    return leray_project(u);
}

const std::set<std::string>& known_sections() {
    static const std::set<std::string> s = {"grid",   "model",  "init",  "stepper",
                                            "diagnostics", "picard", "output"};
    return s;
}

struct ParseState {
    RunConfig cfg;
    std::map<std::string, int> seen;  // "section.key" -> 1-based line

    int line_of(const std::string& id) const {
        const auto it = seen.find(id);
        return it == seen.end() ? 0 : it->second;
    }
    bool has(const std::string& id) const { return seen.count(id) != 0; }
};

void apply_key(ParseState& ps, const std::string& sec, const std::string& key,
               const std::string& value, int line) {
    RunConfig& c = ps.cfg;
    auto unknown = [&]() -> ConfigError {
        return ConfigError("unknown key '" + key + "' in section [" + sec + "]", line);
    };

    if (sec == "grid") {
        if (key == "dim") {
            c.dim = to_int(value, line, key);
            if (c.dim != 2 && c.dim != 3) throw ConfigError("dim must be 2 or 3", line);
        } else if (key == "n") {
            const int n = to_int(value, line, key);
            c.sizes = {n, n, n};
        } else if (key == "nx") {
            c.sizes[0] = to_int(value, line, key);
        } else if (key == "ny") {
            c.sizes[1] = to_int(value, line, key);
        } else if (key == "nz") {
            c.sizes[2] = to_int(value, line, key);
        } else if (key == "length") {
            const double L = to_double(value, line, key);
            c.lengths = {L, L, L};
        } else if (key == "length_x") {
            c.lengths[0] = to_double(value, line, key);
        } else if (key == "length_y") {
            c.lengths[1] = to_double(value, line, key);
        } else if (key == "length_z") {
            c.lengths[2] = to_double(value, line, key);
        } else {
            throw unknown();
        }
    } else if (sec == "model") {
        if (key == "alpha") {
            c.alpha = to_double(value, line, key);
        } else if (key == "kappa_n") {
            c.kappa_n = to_double(value, line, key);
        } else if (key == "kappa_c") {
            c.kappa_c = to_double(value, line, key);
        } else if (key == "chi" || key == "f") {
            try {
                parse_scalar_func(value);
            } catch (const ConfigError& e) {
                throw ConfigError(e.what(), line);
            }
            (key == "chi" ? c.chi : c.f) = value;
        } else if (key == "grad_phi") {
            c.grad_phi = value;  // dim-dependent shape checked in finalize
        } else {
            throw unknown();
        }
    } else if (sec == "init") {
        if (key == "n")
            c.init_n = value;
        else if (key == "c")
            c.init_c = value;
        else if (key == "u")
            c.init_u = value;
        else if (key == "snapshot")
            c.init_snapshot = value;
        else
            throw unknown();
    } else if (sec == "stepper") {
        if (key == "scheme") {
            if (value != "if-rk2" && value != "if-euler")
                throw ConfigError("scheme must be if-rk2 or if-euler", line);
            c.scheme = value;
        } else if (key == "dt_init") {
            c.dt_init = to_double(value, line, key);
        } else if (key == "cfl") {
            c.cfl = to_double(value, line, key);
        } else if (key == "t_end") {
            c.t_end = to_double(value, line, key);
        } else if (key == "max_dt_halvings") {
            c.max_dt_halvings = to_int(value, line, key);
        } else {
            throw unknown();
        }
    } else if (sec == "diagnostics") {
        if (key == "cadence") {
            c.cadence = to_int(value, line, key);
        } else if (key == "kind") {
            if (value != "ps" && value != "bv")
                throw ConfigError("kind must be ps or bv", line);
            c.criterion_kind = value;
        } else if (key == "pairs") {
            const auto parts = split(value, ',');
            if (parts.size() != 4)
                throw ConfigError("pairs must be p1,q1,p2,q2", line);
            for (int i = 0; i < 4; ++i) c.criterion_pairs[i] = to_double(parts[i], line, key);
        } else if (key == "b1_gradc_variant") {
            c.b1_gradc_variant = to_bool(value, line, key);
        } else if (key == "norms") {
            try {
                parse_norm_list(value);
            } catch (const ConfigError& e) {
                throw ConfigError(e.what(), line);
            }
            c.norms = value;
        } else {
            throw unknown();
        }
    } else if (sec == "picard") {
        if (key == "t0")
            c.picard_t0 = to_double(value, line, key);
        else if (key == "nodes")
            c.picard_nodes = to_int(value, line, key);
        else if (key == "max_iters")
            c.picard_max_iters = to_int(value, line, key);
        else if (key == "tol")
            c.picard_tol = to_double(value, line, key);
        else if (key == "bisect")
            c.picard_bisect = to_bool(value, line, key);
        else if (key == "max_halvings")
            c.picard_max_halvings = to_int(value, line, key);
        else
            throw unknown();
    } else {  // output
        if (key == "csv")
            c.csv_path = value;
        else if (key == "snapshot")
            c.snapshot_path = value;
        else if (key == "snapshot_every")
            c.snapshot_every = to_int(value, line, key);
        else
            throw unknown();
    }
}

void finalize(ParseState& ps) {
    RunConfig& c = ps.cfg;
    auto fail = [&](const std::string& msg, const std::string& id) {
        throw ConfigError(msg, ps.line_of(id));
    };

    if (c.dim == 2) {
        if (ps.has("grid.nz")) fail("key 'nz' requires dim = 3", "grid.nz");
        if (ps.has("grid.length_z")) fail("key 'length_z' requires dim = 3", "grid.length_z");
        // Unused third axis reverts to defaults so equal configs compare equal.
        c.sizes[2] = 32;
        c.lengths[2] = 6.283185307179586;
    }
    static const char* axis_key[3] = {"grid.nx", "grid.ny", "grid.nz"};
    static const char* len_key[3] = {"grid.length_x", "grid.length_y", "grid.length_z"};
    for (int a = 0; a < c.dim; ++a) {
        if (c.sizes[a] < 8 || c.sizes[a] % 2 != 0)
            fail("grid sizes must be even and >= 8",
                 ps.has(axis_key[a]) ? axis_key[a] : "grid.n");
        if (!(c.lengths[a] > 0.0) || !std::isfinite(c.lengths[a]))
            fail("domain lengths must be positive and finite",
                 ps.has(len_key[a]) ? len_key[a] : "grid.length");
    }

    if (!(c.alpha > 0.5) || !std::isfinite(c.alpha))
        fail("alpha must exceed 1/2", "model.alpha");
    if (!(c.kappa_n > 0.0) || !std::isfinite(c.kappa_n))
        fail("kappa_n must be positive", "model.kappa_n");
    if (!(c.kappa_c > 0.0) || !std::isfinite(c.kappa_c))
        fail("kappa_c must be positive", "model.kappa_c");

    try {
        const ScalarFunc f = parse_scalar_func(c.f);
        double f0 = 0.0;
        try {
            f0 = f.value(0.0);
        } catch (const EvaluationError&) {
            throw ConfigError("consumption rate must be defined at zero concentration");
        }
        if (std::abs(f0) > 1e-12)
            throw ConfigError("consumption rate must vanish at zero concentration, f(0) = 0");
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), ps.line_of("model.f"));
    }

    try {
        check_grad_phi(c.grad_phi, c.dim);
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), ps.line_of("model.grad_phi"));
    }

    if (!c.init_snapshot.empty()) {
        if (ps.has("init.n") || ps.has("init.c") || ps.has("init.u"))
            fail("snapshot restart excludes the other [init] keys", "init.snapshot");
    }
    try {
        check_scalar_init(c.init_n, c.dim);
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), ps.line_of("init.n"));
    }
    try {
        check_scalar_init(c.init_c, c.dim);
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), ps.line_of("init.c"));
    }
    try {
        check_vector_init(c.init_u, c.dim);
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), ps.line_of("init.u"));
    }

    if (!(c.dt_init > 0.0) || !std::isfinite(c.dt_init))
        fail("dt_init must be positive", "stepper.dt_init");
    if (!(c.cfl > 0.0) || c.cfl > 1.0) fail("cfl must lie in (0, 1]", "stepper.cfl");
    if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end))
        fail("t_end must be finite and nonnegative", "stepper.t_end");
    if (c.max_dt_halvings < 0) fail("max_dt_halvings must be >= 0", "stepper.max_dt_halvings");

    if (c.cadence < 1) fail("cadence must be >= 1", "diagnostics.cadence");
    if (ps.has("diagnostics.pairs") && c.criterion_kind.empty())
        fail("pairs requires kind (ps or bv)", "diagnostics.pairs");
    if (!c.criterion_kind.empty()) {
        for (int i = 0; i < 4; ++i)
            if (!(c.criterion_pairs[i] >= 1.0))
                fail("criterion exponents must be >= 1 (inf allowed)", "diagnostics.pairs");
    }

    if (!(c.picard_t0 > 0.0) || !std::isfinite(c.picard_t0))
        fail("t0 must be positive", "picard.t0");
    if (c.picard_nodes < 16) fail("nodes must be >= 16", "picard.nodes");
    if (c.picard_max_iters < 1) fail("max_iters must be >= 1", "picard.max_iters");
    if (!(c.picard_tol > 0.0)) fail("tol must be positive", "picard.tol");
    if (c.picard_max_halvings < 1) fail("max_halvings must be >= 1", "picard.max_halvings");

    if (c.snapshot_every < 0) fail("snapshot_every must be >= 0", "output.snapshot_every");
    if (c.snapshot_every > 0 && c.snapshot_path.empty())
        fail("snapshot_every requires an [output] snapshot path", "output.snapshot_every");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    ParseState ps;
    std::istringstream in(text);
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.size() < 3 || line.back() != ']')
                throw ConfigError("malformed section header '" + line + "'", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (!known_sections().count(section))
                throw ConfigError("unknown section [" + section + "]", lineno);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' appears before any [section]", lineno);
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", lineno);
        const std::string id = section + "." + key;
        if (ps.seen.count(id))
            throw ConfigError("duplicate key '" + key + "' in [" + section + "]", lineno);
        // Record before applying so range errors can cite this line too.
        ps.seen[id] = lineno;
        apply_key(ps, section, key, value, lineno);
    }
    finalize(ps);
    return ps.cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "dim = " << c.dim << "\n";
    static const char* nk[3] = {"nx", "ny", "nz"};
    static const char* lk[3] = {"length_x", "length_y", "length_z"};
    for (int a = 0; a < c.dim; ++a) out << nk[a] << " = " << c.sizes[a] << "\n";
    for (int a = 0; a < c.dim; ++a) out << lk[a] << " = " << fmt17(c.lengths[a]) << "\n";
    out << "\n[model]\n";
    out << "alpha = " << fmt17(c.alpha) << "\n";
    out << "kappa_n = " << fmt17(c.kappa_n) << "\n";
    out << "kappa_c = " << fmt17(c.kappa_c) << "\n";
    out << "chi = " << c.chi << "\n";
    out << "f = " << c.f << "\n";
    out << "grad_phi = " << c.grad_phi << "\n";
    out << "\n[init]\n";
    if (!c.init_snapshot.empty()) {
        out << "snapshot = " << c.init_snapshot << "\n";
    } else {
        out << "n = " << c.init_n << "\n";
        out << "c = " << c.init_c << "\n";
        out << "u = " << c.init_u << "\n";
    }
    out << "\n[stepper]\n";
    out << "scheme = " << c.scheme << "\n";
    out << "dt_init = " << fmt17(c.dt_init) << "\n";
    out << "cfl = " << fmt17(c.cfl) << "\n";
    out << "t_end = " << fmt17(c.t_end) << "\n";
    out << "max_dt_halvings = " << c.max_dt_halvings << "\n";
    out << "\n[diagnostics]\n";
    out << "cadence = " << c.cadence << "\n";
    if (!c.criterion_kind.empty()) {
        out << "kind = " << c.criterion_kind << "\n";
        out << "pairs = " << fmt17(c.criterion_pairs[0]) << "," << fmt17(c.criterion_pairs[1])
            << "," << fmt17(c.criterion_pairs[2]) << "," << fmt17(c.criterion_pairs[3]) << "\n";
    }
    out << "b1_gradc_variant = " << (c.b1_gradc_variant ? "true" : "false") << "\n";
    if (!c.norms.empty()) out << "norms = " << c.norms << "\n";
    out << "\n[picard]\n";
    out << "t0 = " << fmt17(c.picard_t0) << "\n";
    out << "nodes = " << c.picard_nodes << "\n";
    out << "max_iters = " << c.picard_max_iters << "\n";
    out << "tol = " << fmt17(c.picard_tol) << "\n";
    out << "bisect = " << (c.picard_bisect ? "true" : "false") << "\n";
    out << "max_halvings = " << c.picard_max_halvings << "\n";
    out << "\n[output]\n";
    if (!c.csv_path.empty()) out << "csv = " << c.csv_path << "\n";
    if (!c.snapshot_path.empty()) out << "snapshot = " << c.snapshot_path << "\n";
    out << "snapshot_every = " << c.snapshot_every << "\n";
    return out.str();
}

ScalarFunc parse_scalar_func(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("scalar function spec needs arguments, e.g. constant:1 (got '" + spec +
                          "')");
    const std::string name = trim(spec.substr(0, colon));
    const std::string rest = trim(spec.substr(colon + 1));
    if (rest.empty()) throw ConfigError("scalar function '" + name + "' needs arguments");
    if (name == "constant") return ScalarFunc::constant(term_double(rest, "constant"));
    if (name == "linear") return ScalarFunc::linear(term_double(rest, "linear"));
    if (name == "saturating") return ScalarFunc::saturating(term_double(rest, "saturating"));
    if (name == "table") {
        std::vector<double> xs, ys;
        for (const std::string& pair : split(rest, ',')) {
            const auto sep = pair.find(':');
            if (sep == std::string::npos)
                throw ConfigError("table knots are x:y pairs, got '" + pair + "'");
            xs.push_back(term_double(trim(pair.substr(0, sep)), "table x"));
            ys.push_back(term_double(trim(pair.substr(sep + 1)), "table y"));
        }
        return ScalarFunc::table(std::move(xs), std::move(ys));
    }
    throw ConfigError("unknown scalar function '" + name +
                      "' (use constant:, linear:, saturating:, table:)");
}

std::vector<NormSelector> parse_norm_list(const std::string& list) {
    std::vector<NormSelector> out;
    if (trim(list).empty()) return out;
    static const std::set<std::string> fields = {"n", "c", "u", "gradn", "gradc", "gradu"};
    for (const std::string& item : split(list, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3)
            throw ConfigError("norm selector must be field:kind:order, got '" + item + "'");
        NormSelector sel;
        sel.field = parts[0];
        if (!fields.count(sel.field))
            throw ConfigError("unknown norm field '" + sel.field +
                              "' (use n, c, u, gradn, gradc, gradu)");
        if (parts[1] != "l" && parts[1] != "h")
            throw ConfigError("norm kind must be l or h, got '" + parts[1] + "'");
        sel.kind = parts[1][0];
        sel.order = parts[2] == "inf" ? kInf : term_double(parts[2], "norm order");
        if (sel.kind == 'l' && !(sel.order >= 1.0))
            throw ConfigError("Lebesgue order must be >= 1 or inf");
        if (sel.kind == 'h' && !std::isfinite(sel.order))
            throw ConfigError("Sobolev order must be finite");
        out.push_back(sel);
    }
    return out;
}

std::string norm_column_name(const NormSelector& sel) {
    std::string order = std::isinf(sel.order) ? "inf" : fmt_short(sel.order);
    return sel.field + "_" + std::string(1, sel.kind) + order;
}

GridPtr build_grid(const RunConfig& cfg) {
    std::vector<int> sizes(cfg.sizes.begin(), cfg.sizes.begin() + cfg.dim);
    std::vector<double> lengths(cfg.lengths.begin(), cfg.lengths.begin() + cfg.dim);
    return make_grid(std::move(sizes), std::move(lengths));
}

ModelParams build_model(const RunConfig& cfg, const GridPtr& grid) {
    ModelParams params;
    params.alpha = cfg.alpha;
    params.kappa_n = cfg.kappa_n;
    params.kappa_c = cfg.kappa_c;
    params.chi = parse_scalar_func(cfg.chi);
    params.f = parse_scalar_func(cfg.f);
    const InitTerm t = split_term(cfg.grad_phi);
    if (t.name == "constant") {
        auto vf = std::make_shared<VectorField>(grid);
        for (int c = 0; c < vf->components(); ++c)
            (*vf)[c].fill(term_double(t.args[c], "grad_phi component"));
        params.grad_phi = vf;
    }
    return params;
}

State build_initial_state(const RunConfig& cfg, const GridPtr& grid) {
    if (!cfg.init_snapshot.empty()) {
        Snapshot snap = read_snapshot(cfg.init_snapshot);
        if (!snap.state.grid().same_layout(*grid))
            throw ConfigError("snapshot grid does not match the configured grid");
        return std::move(snap.state);
    }
    State state(grid);
    state.n = build_scalar_init(cfg.init_n, grid);
    state.c = build_scalar_init(cfg.init_c, grid);
    state.u = build_vector_init(cfg.init_u, grid);
    return state;
}

StepperConfig build_stepper(const RunConfig& cfg) {
    StepperConfig sc;
    sc.dt_init = cfg.dt_init;
    sc.cfl = cfg.cfl;
    sc.t_end = cfg.t_end;
    sc.scheme = cfg.scheme == "if-euler" ? Scheme::IfEuler : Scheme::IfRk2;
    sc.max_dt_halvings = cfg.max_dt_halvings;
    return sc;
}

DiagnosticsConfig build_diagnostics(const RunConfig& cfg) {
    DiagnosticsConfig dc;
    dc.cadence = cfg.cadence;
    dc.b1_gradc_variant = cfg.b1_gradc_variant;
    dc.norms = parse_norm_list(cfg.norms);
    if (!cfg.criterion_kind.empty()) {
        CriterionSpec spec;
        spec.kind = cfg.criterion_kind == "ps" ? CriterionKind::ProdiSerrin
                                               : CriterionKind::BeiraoDaVeiga;
        spec.alpha = cfg.alpha;
        spec.pair1 = {cfg.criterion_pairs[0], cfg.criterion_pairs[1]};
        spec.pair2 = {cfg.criterion_pairs[2], cfg.criterion_pairs[3]};
        dc.criterion = spec;
    }
    return dc;
}

PicardConfig build_picard(const RunConfig& cfg) {
    PicardConfig pc;
    pc.t0 = cfg.picard_t0;
    pc.n_time_nodes = cfg.picard_nodes;
    pc.max_iters = cfg.picard_max_iters;
    pc.tol = cfg.picard_tol;
    pc.contraction_report = true;
    return pc;
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

double splitmix64_uniform(std::uint64_t& state) {
    return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53;
}

Field random_bandlimited(GridPtr grid, std::uint64_t seed, int kmax, double amplitude,
                         double offset) {
    if (kmax < 1) throw ConfigError("random_bandlimited: kmax must be >= 1");
    const SpectralGrid& g = *grid;
    const int d = g.dim();

    // Representative modes: |m_i| <= kmax, first nonzero component positive,
    // in lexicographic order. Each contributes a cosine and a sine with
    // SplitMix64 coefficients drawn in that same order.
    std::vector<std::array<int, 3>> modes;
    const int lo = -kmax, hi = kmax;
    for (int m0 = lo; m0 <= hi; ++m0)
        for (int m1 = lo; m1 <= hi; ++m1) {
            if (d == 2) {
                const int lead = m0 != 0 ? m0 : m1;
                if (lead > 0) modes.push_back({m0, m1, 0});
            } else {
                for (int m2 = lo; m2 <= hi; ++m2) {
                    const int lead = m0 != 0 ? m0 : (m1 != 0 ? m1 : m2);
                    if (lead > 0) modes.push_back({m0, m1, m2});
                }
            }
        }

    std::uint64_t rng = seed;
    Field out(grid);
    auto& v = out.mutable_values();
    int idx[3];
    for (const auto& m : modes) {
        const double a = 2.0 * splitmix64_uniform(rng) - 1.0;
        const double b = 2.0 * splitmix64_uniform(rng) - 1.0;
        double k[3] = {0.0, 0.0, 0.0};
        for (int ax = 0; ax < d; ++ax)
            k[ax] = 2.0 * std::numbers::pi * m[ax] / g.lengths()[ax];
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            g.unflatten(flat, idx);
            double arg = 0.0;
            for (int ax = 0; ax < d; ++ax) arg += k[ax] * g.coordinate(ax, idx[ax]);
            v[flat] += a * std::cos(arg) + b * std::sin(arg);
        }
    }
    const double scale = amplitude / std::sqrt(static_cast<double>(modes.size()));
    for (double& x : v) x = x * scale + offset;
    return out;
}

}  // namespace chemns
