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

#include "qudit/analysis.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qudit/quantum_switch.h"
#include "qudit/teleport.h"

namespace qudit {

namespace {

constexpr double kFormulaRangeSlack = 1e-12;

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double teleport_fidelity(const std::optional<DensityMatrix>& shared, int d) {
  if (!shared) return NAN;
  return average_fidelity_from_entanglement(d, entanglement_fidelity(*shared));
}

bool has_mc(const std::vector<SweepRecord>& records) {
  return std::any_of(records.begin(), records.end(),
                     [](const SweepRecord& r) { return !std::isnan(r.f_avg_mc); });
}

}  // namespace

std::vector<double> GridRange::points() const {
  if (steps == 1) return {lo};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1));
  }
  return out;
}

void SweepConfig::validate() const {
  if (d_list.empty()) throw std::invalid_argument("d list is empty");
  for (int d : d_list) {
    if (d < 2 || d > 32) throw std::invalid_argument("d must lie in 2..32, got " + std::to_string(d));
  }
  for (const auto* g : {&p_grid, &q_grid}) {
    const char* name = g == &p_grid ? "p" : "q";
    if (!(g->lo >= 0.0 && g->lo <= 1.0 && g->hi >= 0.0 && g->hi <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " range must lie in [0, 1]");
    }
    if (g->lo > g->hi) throw std::invalid_argument(std::string(name) + " range is reversed");
    if (g->steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (g->steps == 1 && g->lo != g->hi) throw std::invalid_argument("a single step needs lo == hi");
  }
  if (mc_samples < 0) throw std::invalid_argument("mc samples must be >= 0");
}

SweepRecord evaluate_point(int d, double p, double q, int mc_samples, std::uint64_t seed) {
  const SwitchOutcome sw = distribute_epr_switch(d, p, q);
  SweepRecord r{};
  r.d = d;
  r.p = p;
  r.q = q;
  r.f_cond_plus_sim = teleport_fidelity(sw.rho_plus, d);
  r.f_cond_plus_eq29 = p * q == 1.0 ? NAN : fidelity_formula_conditional(d, p, q);
  r.f_minus_sim = teleport_fidelity(sw.rho_minus, d);
  r.p_minus_sim = sw.p_minus;
  r.f_avg_sim = teleport_fidelity(sw.rho_avg, d);
  r.f_avg_eq31 = fidelity_formula_average(d, p, q).closed_form;
  r.f_ct_sim = teleport_fidelity(distribute_epr_classical(d, p, q), d);
  r.f_avg_mc = mc_samples > 0 ? average_fidelity_sim(sw.rho_avg, mc_samples, seed).monte_carlo : NAN;
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<int> ds = cfg.d_list;
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

  struct Task {
    int d;
    double p;
    double q;
  };
  std::vector<Task> tasks;
  const auto ps = cfg.p_grid.points();
  const auto qs = cfg.q_grid.points();
  for (int d : ds) {
    for (double p : ps) {
      if (cfg.diagonal_only) {
        tasks.push_back({d, p, p});
      } else {
        for (double q : qs) tasks.push_back({d, p, q});
      }
    }
  }

  std::vector<SweepRecord> out(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      out[i] = evaluate_point(t.d, t.p, t.q, cfg.mc_samples, splitmix64(cfg.seed ^ splitmix64(i)));
    }
  };
  const std::size_t n_threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!cfg.output_path.empty()) write_csv(std::filesystem::path(cfg.output_path), out);
  return out;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  const bool mc = has_mc(records);
  os << kCsvHeader << (mc ? ",f_avg_mc" : "") << '\n';
  for (const auto& r : records) {
    os << r.d;
    for (double v : {r.p, r.q, r.f_cond_plus_sim, r.f_cond_plus_eq29, r.f_minus_sim, r.p_minus_sim,
                     r.f_avg_sim, r.f_avg_eq31, r.f_ct_sim}) {
      os << ',' << format17(v);
    }
    if (mc) os << ',' << format17(r.f_avg_mc);
    os << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_csv(os, records);
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::vector<SweepRecord> read_csv(std::istream& is) {
  std::vector<SweepRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 10 && cells.size() != 11) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
    std::vector<double> v;
    for (std::size_t i = 1; i < cells.size(); ++i) v.push_back(std::strtod(cells[i].c_str(), nullptr));
    out.push_back({std::stoi(cells[0]), v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8],
                   cells.size() == 11 ? v[9] : NAN});
  }
  return out;
}

std::vector<SweepRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_csv(is);
}

std::optional<double> quoted_asymptote(int d) {
  static const std::map<int, double> quoted{{2, 0.5}, {5, 0.65}, {10, 0.78}, {15, 0.89}, {20, 0.94}};
  if (auto it = quoted.find(d); it != quoted.end()) return it->second;
  return std::nullopt;
}

DiscrepancyReport discrepancy_report(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("discrepancy report needs at least one record");
  DiscrepancyReport rep;
  std::map<int, DeviationBlock> blocks;
  for (const auto& r : records) {
    auto [it, inserted] = blocks.try_emplace(r.d, DeviationBlock{r.d, 0, 0.0, 0.0});
    auto& b = it->second;
    ++b.points;
    if (!std::isnan(r.f_cond_plus_sim) && !std::isnan(r.f_cond_plus_eq29)) {
      b.max_conditional_deviation =
          std::max(b.max_conditional_deviation, std::abs(r.f_cond_plus_sim - r.f_cond_plus_eq29));
    }
    b.max_average_deviation = std::max(b.max_average_deviation, std::abs(r.f_avg_sim - r.f_avg_eq31));
    for (const auto& [name, value] :
         {std::pair{"f_cond_plus_eq29", r.f_cond_plus_eq29}, std::pair{"f_avg_eq31", r.f_avg_eq31}}) {
      if (!std::isnan(value) && (value > 1.0 + kFormulaRangeSlack || value < -kFormulaRangeSlack)) {
        rep.flags.push_back({r.d, r.p, r.q, name, value});
      }
    }
    if (r.p == 0.5 && r.q == 0.5) {
      const auto avg = fidelity_formula_average(r.d, r.p, r.q);
      rep.endpoints.push_back(
          {r.d, r.f_avg_eq31, avg.from_conditional_formula, r.f_avg_sim, r.f_ct_sim, quoted_asymptote(r.d)});
    }
  }
  for (auto& [d, b] : blocks) rep.blocks.push_back(b);
  return rep;
}

std::string render_report(const DiscrepancyReport& rep) {
  std::ostringstream os;
  os << "Fidelity formulas versus simulation\n";
  os << "===================================\n\n";
  os << "Conditional formula: (d - dp - dq + pq + 1) / ((1 - pq)(d + 1))\n";
  os << "Average formula:     (d - dp - dq + d^2 pq + 1) / (d + 1)\n\n";

  os << "Per-dimension maximum absolute deviation\n\n";
  os << "   d  points  |F+ sim - conditional|  |Favg sim - average|\n";
  for (const auto& b : rep.blocks) {
    char line[160];
    std::snprintf(line, sizeof line, "%4d  %6zu  %22.3e  %20.3e\n", b.d, b.points,
                  b.max_conditional_deviation, b.max_average_deviation);
    os << line;
  }

  os << "\nFormula values outside [0, 1]: " << rep.flags.size() << "\n";
  std::map<std::pair<int, std::string>, std::vector<const FormulaFlag*>> grouped;
  for (const auto& f : rep.flags) grouped[{f.d, f.column}].push_back(&f);
  for (const auto& [key, list] : grouped) {
    const auto worst = *std::max_element(list.begin(), list.end(), [](auto* a, auto* b) {
      return std::abs(a->value - 0.5) < std::abs(b->value - 0.5);
    });
    os << "  FLAG d=" << key.first << " " << key.second << ": " << list.size()
       << " points, most extreme " << fmt("%.10g", worst->value) << " at p=" << fmt("%g", worst->p)
       << " q=" << fmt("%g", worst->q) << "\n";
  }

  os << "\nComparison at p = q = 0.5\n\n";
  os << "   d        average    average>1   conditional-mixed      simulated      classical   quoted asymptote\n";
  for (const auto& e : rep.endpoints) {
    char line[256];
    const std::string quoted = e.quoted ? fmt("%.2f", *e.quoted) : std::string("-");
    std::snprintf(line, sizeof line, "%4d  %13.10f  %11s  %18.10f  %13.10f  %13.10f  %17s\n", e.d, e.eq31,
                  e.eq31 > 1.0 + kFormulaRangeSlack ? "FLAG" : "no", e.eq29_combined, e.simulated,
                  e.classical, quoted.c_str());
    os << line;
  }
  return os.str();
}

std::string figure_name(FigureKind kind) {
  switch (kind) {
    case FigureKind::kFig4: return "fig4";
    case FigureKind::kFig5: return "fig5";
    case FigureKind::kFig6: return "fig6";
  }
  return "fig";
}

std::optional<FigureKind> parse_figure(const std::string& name) {
  for (auto k : {FigureKind::kFig4, FigureKind::kFig5, FigureKind::kFig6}) {
    if (figure_name(k) == name) return k;
  }
  return std::nullopt;
}

SweepConfig figure_config(FigureKind kind) {
  SweepConfig cfg;
  if (kind == FigureKind::kFig4) {
    cfg.d_list = {2, 5, 10, 15, 20};
    cfg.p_grid = {0.0, 1.0, 101};
    cfg.q_grid = cfg.p_grid;
    cfg.diagonal_only = true;
  } else {
    cfg.d_list = {2, 5, 10};
    cfg.p_grid = {0.0, 1.0, 51};
    cfg.q_grid = cfg.p_grid;
  }
  return cfg;
}

namespace {

std::vector<SweepRecord> figure_rows(const std::vector<SweepRecord>& records, FigureKind kind,
                                     std::vector<int>& ds, std::size_t& grid_side) {
  std::map<int, std::vector<SweepRecord>> by_d;
  for (const auto& r : records) {
    if (kind != FigureKind::kFig4 || r.p == r.q) by_d[r.d].push_back(r);
  }
  if (by_d.empty()) throw std::invalid_argument(figure_name(kind) + ": no records cover the figure");
  std::vector<SweepRecord> rows;
  grid_side = 0;
  for (const auto& [d, list] : by_d) {
    std::set<double> ps, qs;
    std::set<std::pair<double, double>> pairs;
    for (const auto& r : list) {
      ps.insert(r.p);
      qs.insert(r.q);
      pairs.insert({r.p, r.q});
    }
    if (ps.size() < 2) {
      throw std::invalid_argument(figure_name(kind) + ": d=" + std::to_string(d) + " has fewer than 2 p values");
    }
    if (kind != FigureKind::kFig4) {
      if (qs.size() < 2 || pairs.size() != ps.size() * qs.size()) {
        throw std::invalid_argument(figure_name(kind) + ": d=" + std::to_string(d) +
                                    " does not cover a full (p, q) grid");
      }
      grid_side = std::max({grid_side, ps.size(), qs.size()});
    }
    ds.push_back(d);
    rows.insert(rows.end(), list.begin(), list.end());
  }
  return rows;
}

}  // namespace

FigureFiles emit_figure_scripts(const std::vector<SweepRecord>& records, FigureKind kind,
                                const std::filesystem::path& dir) {
  std::vector<int> ds;
  std::size_t side = 0;
  const auto rows = figure_rows(records, kind, ds, side);
  const std::string name = figure_name(kind);
  std::filesystem::create_directories(dir);
  FigureFiles files{dir / (name + ".csv"), dir / (name + ".gp")};
  write_csv(files.csv, rows);

  std::string d_words;
  for (int d : ds) d_words += (d_words.empty() ? "" : " ") + std::to_string(d);

  std::ofstream gp(files.script);
  if (!gp) throw std::runtime_error("cannot write " + files.script.string());
  gp << "# " << name << ": generated from " << name << ".csv\n";
  gp << "# columns: " << (kCsvHeader + 2) << "\n";
  gp << "set datafile separator ','\n";
  gp << "set datafile commentschars '#'\n";
  gp << "set terminal pngcairo size 900,650\n";
  gp << "set key outside right\n";
  gp << "dims = \"" << d_words << "\"\n";
  if (kind == FigureKind::kFig4) {
    gp << "set output '" << name << ".png'\n";
    gp << "set xlabel 'p (q = p)'\n";
    gp << "set ylabel 'average fidelity'\n";
    gp << "set yrange [0:1.05]\n";
    gp << "plot for [i=1:words(dims)] '" << name
       << ".csv' using 2:($1==word(dims,i)+0 ? $8 : 1/0) with lines lw 2 lc i title sprintf('d=%s simulated', word(dims,i)), \\\n";
    gp << "     for [i=1:words(dims)] '" << name
       << ".csv' using 2:($1==word(dims,i)+0 ? $9 : 1/0) with lines dt 2 lc i title sprintf('d=%s closed form', word(dims,i))\n";
  } else {
    const int sim_col = kind == FigureKind::kFig5 ? 4 : 8;
    const int ref_col = kind == FigureKind::kFig5 ? 5 : 9;
    const char* label = kind == FigureKind::kFig5 ? "conditional fidelity (|+> outcome)" : "average fidelity";
    gp << "set xlabel 'p'\n";
    gp << "set ylabel 'q'\n";
    gp << "set zlabel '" << label << "' rotate\n";
    gp << "set dgrid3d " << side << "," << side << "\n";
    gp << "set hidden3d\n";
    gp << "do for [i=1:words(dims)] {\n";
    gp << "  D = word(dims,i)+0\n";
    gp << "  set output sprintf('" << name << "_d%d.png', D)\n";
    gp << "  set title sprintf('d = %d', D)\n";
    gp << "  splot '" << name << ".csv' using 2:3:($1==D ? $" << sim_col
       << " : 1/0) with lines lw 1 title 'simulated', \\\n";
    gp << "        '" << name << ".csv' using 2:3:($1==D ? $" << ref_col
       << " : 1/0) with lines dt 2 title 'closed form'\n";
    gp << "}\n";
  }
  if (!gp) throw std::runtime_error("write failed for " + files.script.string());
  return files;
}

}  // namespace qudit
