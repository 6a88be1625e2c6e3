// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_IO_HPP
#define CHEMNS_IO_HPP

#include <string>
#include <vector>

#include "chemns/diagnostics.hpp"
#include "chemns/model.hpp"

namespace chemns {

/// A reloaded checkpoint: the full state plus the dissipation exponent the
/// run was using (the one model parameter that changes the meaning of the
/// stored velocity's evolution).
struct Snapshot {
    State state;
    double alpha = 1.0;
};

/// Binary snapshot layout (all integers and floats little endian):
///   bytes 0..3   magic "CNSF"
///   u16          format version, currently 1
///   u8           dim (2 or 3)
///   f64          alpha
///   dim times    { u32 points on axis, f64 length of axis }
///   f64          time t
///   then the nodal values of n, c, u_0, ..., u_{dim-1}, each total() f64
///   in row-major order with the last axis fastest.
/// Header size: 47 bytes in 2-d, 59 in 3-d. Writing is bit-reproducible;
/// a round trip restores every byte of every field exactly.
void write_snapshot(const State& state, double alpha, const std::string& path);

/// Throws SnapshotError with a distinct message for unreadable files, bad
/// magic, unsupported version, bad dim, or truncated payload.
Snapshot read_snapshot(const std::string& path);

/// Column names of the time-series CSV, in order: t, dt, mass_n, mass_c,
/// min_n, max_n, min_c, max_c, n_l2, c_l2, u_l2, c_linf, gradc_l2,
/// gradu_l2, u_h1, u_halpha, divu_l2, then b1 and b2 when a criterion is
/// configured, then bootstrap when alpha > 3/4, then one column per extra
/// norm selector (named as in norm_column_name).
std::vector<std::string> timeseries_columns(const DiagnosticsConfig& diag, double alpha);

/// CSV document: header row of timeseries_columns, one row per record,
/// every number printed with 17 significant digits (round-trip exact).
std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records,
                           const DiagnosticsConfig& diag, double alpha);

void write_timeseries_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                          const DiagnosticsConfig& diag, double alpha);

/// Parsed numeric CSV with a header row.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // rows[i].size() == columns.size()

    /// Values of one named column. Throws ConfigError when absent.
    std::vector<double> column(const std::string& name) const;
    /// (t, value) pairs of a named column against the "t" column.
    std::vector<std::pair<double, double>> series(const std::string& name) const;
};

/// Throws ConfigError (with the 1-based line number) on ragged rows or
/// non-numeric cells.
CsvTable parse_csv(const std::string& text);
CsvTable load_csv_file(const std::string& path);

}  // namespace chemns

#endif  // CHEMNS_IO_HPP
