// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "chemns/io.hpp"

#include <bit>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "chemns/config.hpp"
#include "chemns/errors.hpp"

namespace chemns {

namespace {

constexpr char kMagic[4] = {'C', 'N', 'S', 'F'};
constexpr std::uint16_t kVersion = 1;

void put_u8(std::string& buf, std::uint8_t v) { buf.push_back(static_cast<char>(v)); }

void put_u16(std::string& buf, std::uint16_t v) {
    buf.push_back(static_cast<char>(v & 0xFF));
    buf.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& buf, double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

// Little-endian cursor over the snapshot bytes.
class Reader {
  public:
    Reader(const std::string& data) : data_(data) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(byte()); }

    std::uint16_t u16() {
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(byte()) << (8 * i);
        return v;
    }

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte()) << (8 * i);
        return v;
    }

    double f64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
        return std::bit_cast<double>(v);
    }

    std::size_t remaining() const { return data_.size() - off_; }

  private:
    unsigned char byte() {
        if (off_ >= data_.size()) throw SnapshotError("truncated snapshot");
        return static_cast<unsigned char>(data_[off_++]);
    }

    const std::string& data_;
    std::size_t off_ = 0;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_snapshot(const State& state, double alpha, const std::string& path) {
    const SpectralGrid& g = state.grid();
    std::string buf;
    buf.reserve(64 + static_cast<std::size_t>(g.total()) * (2 + g.dim()) * 8);
    buf.append(kMagic, 4);
    put_u16(buf, kVersion);
    put_u8(buf, static_cast<std::uint8_t>(g.dim()));
    put_f64(buf, alpha);
    for (int a = 0; a < g.dim(); ++a) {
        put_u32(buf, static_cast<std::uint32_t>(g.sizes()[a]));
        put_f64(buf, g.lengths()[a]);
    }
    put_f64(buf, state.t);
    for (double v : state.n.values()) put_f64(buf, v);
    for (double v : state.c.values()) put_f64(buf, v);
    for (int c = 0; c < state.u.components(); ++c)
        for (double v : state.u[c].values()) put_f64(buf, v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open snapshot file '" + path + "' for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw SnapshotError("failed writing snapshot file '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot read snapshot file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();

    if (data.size() < 4 || std::memcmp(data.data(), kMagic, 4) != 0)
        throw SnapshotError("not a snapshot file (bad magic)");
    Reader r(data);
    r.u32();  // skip magic
    const std::uint16_t version = r.u16();
    if (version != kVersion)
        throw SnapshotError("unsupported snapshot version " + std::to_string(version));
    const int dim = r.u8();
    if (dim != 2 && dim != 3) throw SnapshotError("corrupt snapshot: dim must be 2 or 3");
    const double alpha = r.f64();
    std::vector<int> sizes(dim);
    std::vector<double> lengths(dim);
    for (int a = 0; a < dim; ++a) {
        sizes[a] = static_cast<int>(r.u32());
        lengths[a] = r.f64();
    }
    const double t = r.f64();

    GridPtr grid;
    try {
        grid = make_grid(sizes, lengths);
    } catch (const ConfigError& e) {
        throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
    }

    const std::size_t payload = static_cast<std::size_t>(grid->total()) * (2 + dim) * 8;
    if (r.remaining() < payload) throw SnapshotError("truncated snapshot payload");
    if (r.remaining() > payload) throw SnapshotError("snapshot has trailing bytes");

    Snapshot snap{State(grid), alpha};
    snap.state.t = t;
    for (double& v : snap.state.n.mutable_values()) v = r.f64();
    for (double& v : snap.state.c.mutable_values()) v = r.f64();
    for (int c = 0; c < snap.state.u.components(); ++c)
        for (double& v : snap.state.u[c].mutable_values()) v = r.f64();
    return snap;
}

std::vector<std::string> timeseries_columns(const DiagnosticsConfig& diag, double alpha) {
    std::vector<std::string> cols = {"t",     "dt",    "mass_n",   "mass_c", "min_n",  "max_n",
                                     "min_c", "max_c", "n_l2",     "c_l2",   "u_l2",   "c_linf",
                                     "gradc_l2", "gradu_l2", "u_h1", "u_halpha", "divu_l2"};
    if (diag.criterion) {
        cols.push_back("b1");
        cols.push_back("b2");
    }
    if (alpha > 0.75) cols.push_back("bootstrap");
    for (const NormSelector& sel : diag.norms) cols.push_back(norm_column_name(sel));
    return cols;
}

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records,
                           const DiagnosticsConfig& diag, double alpha) {
    const auto cols = timeseries_columns(diag, alpha);
    std::ostringstream out;
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const DiagnosticsRecord& r : records) {
        if (r.extra_norms.size() != diag.norms.size())
            throw std::logic_error("diagnostics record does not match the configured norm list");
        std::vector<double> row = {r.t,     r.dt,    r.mass_n,   r.mass_c,   r.min_n, r.max_n,
                                   r.min_c, r.max_c, r.n_l2,     r.c_l2,     r.u_l2,  r.c_linf,
                                   r.gradc_l2, r.gradu_l2, r.u_h1, r.u_halpha, r.divu_l2};
        if (diag.criterion) {
            row.push_back(r.b1());
            row.push_back(r.b2());
        }
        if (alpha > 0.75) row.push_back(r.bootstrap);
        for (double v : r.extra_norms) row.push_back(v);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt17(row[i]);
        out << "\n";
    }
    return out.str();
}

void write_timeseries_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                          const DiagnosticsConfig& diag, double alpha) {
    const std::string text = timeseries_csv(records, diag, alpha);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open csv file '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw SnapshotError("failed writing csv file '" + path + "'");
}

std::vector<double> CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            std::vector<double> out;
            out.reserve(rows.size());
            for (const auto& row : rows) out.push_back(row[i]);
            return out;
        }
    }
    throw ConfigError("no column named '" + name + "' in CSV");
}

std::vector<std::pair<double, double>> CsvTable::series(const std::string& name) const {
    const auto ts = column("t");
    const auto vs = column(name);
    std::vector<std::pair<double, double>> out;
    out.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) out.emplace_back(ts[i], vs[i]);
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        std::vector<std::string> cells;
        std::string::size_type start = 0;
        while (true) {
            const auto pos = raw.find(',', start);
            if (pos == std::string::npos) {
                cells.push_back(raw.substr(start));
                break;
            }
            cells.push_back(raw.substr(start, pos - start));
            start = pos + 1;
        }
        if (table.columns.empty()) {
            table.columns = cells;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw ConfigError("row has " + std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(table.columns.size()),
                              lineno);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& cell : cells) {
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size())
                throw ConfigError("non-numeric cell '" + cell + "'", lineno);
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) throw ConfigError("empty CSV");
    return table;
}

CsvTable load_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read csv file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace chemns
