// Copyright 2026 The quditswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qudit {

/// Inclusive range sampled at `steps` evenly spaced points.
struct GridRange {
  double lo = 0.0;
  double hi = 1.0;
  int steps = 11;

  std::vector<double> points() const;
};

struct SweepConfig {
  std::vector<int> d_list{2};
  GridRange p_grid;
  GridRange q_grid;
  /// q = p, sampled on p_grid.
  bool diagonal_only = false;
  /// Monte-Carlo inputs per point for the f_avg_mc column; 0 disables it.
  int mc_samples = 0;
  std::uint64_t seed = 0;
  /// CSV destination; empty to skip writing.
  std::string output_path;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// One grid point. Columns that are undefined at the point (an unreachable
/// branch, or the singular conditional formula at pq = 1) hold NaN.
struct SweepRecord {
  int d;
  double p;
  double q;
  double f_cond_plus_sim;
  double f_cond_plus_eq29;
  double f_minus_sim;
  double p_minus_sim;
  double f_avg_sim;
  double f_avg_eq31;
  double f_ct_sim;
  double f_avg_mc;
};

SweepRecord evaluate_point(int d, double p, double q, int mc_samples = 0,
                           std::uint64_t seed = 0);

/// Rows ordered by (d, p, q); deterministic for a given config. Writes the
/// CSV when output_path is set (std::runtime_error if unwritable).
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

inline constexpr const char* kCsvHeader =
    "# d,p,q,f_cond_plus_sim,f_cond_plus_eq29,f_minus_sim,p_minus_sim,f_avg_sim,f_avg_eq31,f_ct_sim";

/// Header line, then one row per record with 17 significant digits. The
/// f_avg_mc column is appended only when some record carries it.
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(std::istream& is);
std::vector<SweepRecord> read_csv(const std::filesystem::path& path);

struct DeviationBlock {
  int d;
  std::size_t points;
  /// max |f_cond_plus_sim - f_cond_plus_eq29| over points where both exist.
  double max_conditional_deviation;
  /// max |f_avg_sim - f_avg_eq31|.
  double max_average_deviation;
};

struct FormulaFlag {
  int d;
  double p;
  double q;
  std::string column;
  double value;
};

struct EndpointRow {
  int d;
  double eq31;
  /// pq + (1 - pq) times the conditional formula.
  double eq29_combined;
  double simulated;
  double classical;
  /// Asymptote quoted for the d-dependent average-fidelity curve.
  std::optional<double> quoted;
};

struct DiscrepancyReport {
  std::vector<DeviationBlock> blocks;
  std::vector<FormulaFlag> flags;
  /// Rows at p = q = 0.5.
  std::vector<EndpointRow> endpoints;
};

/// Quoted p = q = 0.5 asymptotes for d = 2, 5, 10, 15, 20.
std::optional<double> quoted_asymptote(int d);

/// Throws std::invalid_argument on empty input.
DiscrepancyReport discrepancy_report(const std::vector<SweepRecord>& records);
std::string render_report(const DiscrepancyReport& report);

enum class FigureKind { kFig4, kFig5, kFig6 };

std::string figure_name(FigureKind kind);
std::optional<FigureKind> parse_figure(const std::string& name);

/// Default grid for each figure: fig4 is the q = p line for
/// d = 2, 5, 10, 15, 20 at 101 points; fig5 and fig6 are 51 x 51 surfaces
/// for d = 2, 5, 10.
SweepConfig figure_config(FigureKind kind);

struct FigureFiles {
  std::filesystem::path csv;
  std::filesystem::path script;
};

/// Writes <name>.csv and a gnuplot script <name>.gp into `dir`. Throws
/// std::invalid_argument when the records do not cover the figure's grid.
FigureFiles emit_figure_scripts(const std::vector<SweepRecord>& records, FigureKind kind,
                                const std::filesystem::path& dir);

}  // namespace qudit
