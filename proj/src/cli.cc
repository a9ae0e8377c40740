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

#include "qudit/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "qudit/verify.h"

namespace qudit {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

struct Options {
  std::vector<std::string> d_items;
  std::string d;
  std::string p;
  std::string q;
  int steps = 11;
  bool diagonal = false;
  int mc_samples = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::vector<std::string> figures;
  int verbose = 0;
};

class Runner {
 public:
  Runner(const Options& opt, const CLI::App& app, std::ostream& out) : opt_(opt), app_(app), out_(out) {}

  bool given(const std::string& name) const { return app_.get_option(name)->count() > 0; }

  SweepConfig sweep_config(std::vector<int> default_d) const {
    SweepConfig cfg;
    cfg.d_list = opt_.d.empty() ? std::move(default_d) : parse_dimension_list(opt_.d);
    cfg.p_grid = parse_probability_range(opt_.p.empty() ? "0..1" : opt_.p, opt_.steps);
    cfg.q_grid = parse_probability_range(opt_.q.empty() ? "0..1" : opt_.q, opt_.steps);
    cfg.diagonal_only = opt_.diagonal;
    cfg.mc_samples = opt_.mc_samples;
    cfg.seed = opt_.seed;
    cfg.validate();
    return cfg;
  }

  int gates_check() {
    const auto table = gate_property_suite(opt_.d.empty() ? parse_dimension_list("2..9") : parse_dimension_list(opt_.d));
    return emit_table(table);
  }

  int verify() {
    const auto ds = opt_.d.empty() ? parse_dimension_list("2..5") : parse_dimension_list(opt_.d);
    CheckTable table = gate_property_suite(ds);
    table.append(invariant_suite(ds, opt_.seed));
    return emit_table(table);
  }

  int sweep() {
    SweepConfig cfg = sweep_config({2});
    cfg.output_path = opt_.out.empty() ? "sweep.csv" : opt_.out;
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = run_sweep(cfg);
    out_ << "wrote " << records.size() << " rows to " << cfg.output_path << "\n";
    if (opt_.verbose > 0) out_ << "elapsed " << seconds_since(t0) << " s\n";
    return kExitOk;
  }

  int figures() {
    std::vector<FigureKind> kinds;
    if (opt_.figures.empty()) {
      kinds = {FigureKind::kFig4, FigureKind::kFig5, FigureKind::kFig6};
    } else {
      for (const auto& name : opt_.figures) {
        const auto kind = parse_figure(name);
        if (!kind) throw std::invalid_argument("unknown figure '" + name + "' (expected fig4, fig5 or fig6)");
        kinds.push_back(*kind);
      }
    }
    const std::string dir = opt_.out.empty() ? "figures" : opt_.out;
    std::map<std::string, std::vector<SweepRecord>> cache;
    for (FigureKind kind : kinds) {
      SweepConfig cfg = figure_config(kind);
      if (!opt_.d.empty()) cfg.d_list = parse_dimension_list(opt_.d);
      if (given("--steps")) cfg.p_grid.steps = cfg.q_grid.steps = opt_.steps;
      if (!opt_.p.empty()) cfg.p_grid = parse_probability_range(opt_.p, cfg.p_grid.steps);
      if (!opt_.q.empty()) cfg.q_grid = parse_probability_range(opt_.q, cfg.q_grid.steps);
      cfg.mc_samples = opt_.mc_samples;
      cfg.seed = opt_.seed;
      cfg.validate();
      const auto t0 = std::chrono::steady_clock::now();
      const std::string key = cache_key(cfg);
      if (!cache.contains(key)) cache[key] = run_sweep(cfg);
      const auto files = emit_figure_scripts(cache[key], kind, dir);
      out_ << figure_name(kind) << ": " << files.csv.string() << ", " << files.script.string() << "\n";
      if (opt_.verbose > 0) out_ << "  elapsed " << seconds_since(t0) << " s\n";
    }
    return kExitOk;
  }

  int report() {
    const auto records = run_sweep(sweep_config({2, 5, 10, 15, 20}));
    const std::string text = render_report(discrepancy_report(records));
    const std::string path = opt_.out.empty() ? "report.md" : opt_.out;
    std::ofstream os(path);
    if (!os || !(os << text)) throw std::runtime_error("cannot write " + path);
    out_ << text;
    out_ << "\nwrote " << path << "\n";
    return kExitOk;
  }

 private:
  int emit_table(const CheckTable& table) {
    out_ << render_table(table);
    return table.failures() == 0 ? kExitOk : kExitCheckFailed;
  }

  static std::string cache_key(const SweepConfig& c) {
    std::string k;
    for (int d : c.d_list) k += std::to_string(d) + ",";
    for (const auto& g : {c.p_grid, c.q_grid}) {
      k += std::to_string(g.lo) + ":" + std::to_string(g.hi) + ":" + std::to_string(g.steps) + ";";
    }
    return k + (c.diagonal_only ? "diag" : "full");
  }

  static double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  const Options& opt_;
  const CLI::App& app_;
  std::ostream& out_;
};

}  // namespace

std::vector<int> parse_dimension_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in dimension list '" + text + "'");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    const int lo = parse_int(item.substr(0, dots));
    const int hi = parse_int(item.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("reversed dimension span '" + item + "'");
    for (int d = lo; d <= hi; ++d) out.push_back(d);
  }
  for (int d : out) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
  }
  return out;
}

GridRange parse_probability_range(const std::string& text, int steps) {
  GridRange g;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    g.lo = g.hi = parse_double(text);
    g.steps = 1;
  } else {
    g.lo = parse_double(text.substr(0, dots));
    g.hi = parse_double(text.substr(dots + 2));
    g.steps = steps;
  }
  for (double v : {g.lo, g.hi}) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("probability out of range [0, 1]: '" + text + "'");
  }
  if (g.lo > g.hi) throw std::invalid_argument("reversed probability span '" + text + "'");
  if (g.steps < 2 && g.lo != g.hi) throw std::invalid_argument("a probability span needs steps >= 2");
  return g;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qudit teleportation through a quantum switch"};
  app.require_subcommand(1, 1);
  Options opt;
  app.add_option("--d", opt.d_items, "qudit dimensions, e.g. 2,5,10 or 2..5")->delimiter(',');
  app.add_option("--p", opt.p, "shift-noise probability: value or lo..hi");
  app.add_option("--q", opt.q, "clock-noise probability: value or lo..hi");
  app.add_option("--steps", opt.steps, "grid points per probability span");
  app.add_flag("--diagonal", opt.diagonal, "sample only q = p");
  app.add_option("--mc-samples", opt.mc_samples, "Monte-Carlo inputs per grid point (0 disables)");
  app.add_option("--seed", opt.seed, "seed for all random draws");
  app.add_option("--out", opt.out, "output file, or directory for figures");
  app.add_option("--figure", opt.figures, "figures to emit: fig4, fig5, fig6");
  app.add_flag("--verbose,-v", opt.verbose, "print every check and timings");
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"gates-check", "run the gate property suite"},
      {"verify", "run gate, core, channel, switch and teleportation invariants"},
      {"sweep", "evaluate fidelities on a (p, q) grid and write CSV"},
      {"figures", "write CSV data and gnuplot scripts for the fidelity figures"},
      {"report", "compare closed-form fidelities with simulation"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& item : opt.d_items) opt.d += (opt.d.empty() ? "" : ",") + item;
  Runner runner(opt, app, out);
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (opt.steps < 1) throw std::invalid_argument("--steps must be >= 1");
    if (cmd == "gates-check") return runner.gates_check();
    if (cmd == "verify") return runner.verify();
    if (cmd == "sweep") return runner.sweep();
    if (cmd == "figures") return runner.figures();
    return runner.report();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace qudit
