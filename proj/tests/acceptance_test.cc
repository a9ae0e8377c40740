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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qudit/analysis.h"
#include "qudit/channels.h"
#include "qudit/cli.h"
#include "qudit/core.h"
#include "qudit/gates.h"
#include "qudit/quantum_switch.h"
#include "qudit/teleport.h"

namespace {

using namespace qudit;
namespace fs = std::filesystem;

struct Outcome {
  bool passed;
  std::string detail;
};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Outcome gate_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d = 2; d <= 9; ++d) {
    const Matrix x = pauli_x(d).mat();
    const Matrix z = pauli_z(d).mat();
    const Matrix id = Matrix::Identity(d, d);
    Matrix xd = id, zd = id;
    for (int i = 0; i < d; ++i) {
      xd = xd * x;
      zd = zd * z;
    }
    const Matrix g = build({GateKind::kGxor, d}).mat();
    worst = std::max({worst, max_abs(xd - id), max_abs(zd - id), max_abs(z * x - root_of_unity(d) * x * z),
                      max_abs(g * g - Matrix::Identity(d * d, d * d))});
    std::vector<GateKind> kinds{GateKind::kPauliX,   GateKind::kPauliZ,   GateKind::kFourier,
                                GateKind::kCnotRight, GateKind::kCnotLeft, GateKind::kGxor,
                                GateKind::kNegation, GateKind::kSwapCanonical};
    if ((d & (d - 1)) == 0) kinds.push_back(GateKind::kHadamardBitwise);
    for (auto k : kinds) {
      const Matrix u = build({k, d}).mat();
      worst = std::max(worst, max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst < 1e-12 && secs < 5.0, "max residual " + fmt("%.2e", worst) + ", " + fmt("%.3f", secs) + " s"};
}

Outcome swap_constructions() {
  double worst = 0.0;
  bool counts = true;
  for (int d = 2; d <= 7; ++d) {
    const Matrix swap = build({GateKind::kSwapCanonical, d}).mat();
    const auto gx = swap_construction(GateKind::kSwapGxor, d);
    const auto cs = swap_construction(GateKind::kSwapCnotShift, d);
    worst = std::max({worst, max_abs(gx.op.mat() - swap), max_abs(cs.op.mat() - swap)});
    counts = counts && gx.gate_count == 5 && cs.gate_count == 4;
  }
  return {worst < 1e-12 && counts,
          "max residual " + fmt("%.2e", worst) + ", gate counts 5 and 4 " + (counts ? "confirmed" : "WRONG")};
}

Outcome kraus_completeness() {
  double worst = 0.0;
  int sets = 0;
  for (int d = 2; d <= 7; ++d) {
    const Dims pair = Dims::uniform(d, 2);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const double p = i / 5.0, q = j / 5.0;
        const auto x = cyclic_shift_channel(d, p);
        const auto z = cyclic_clock_channel(d, q);
        const auto lx = lift_one_sided(x, 2, pair);
        const auto lz = lift_one_sided(z, 2, pair);
        const auto sw = switch_kraus(SwitchSpec::qubit_control(lx, lz));
        for (const auto* ch : {&x, &z, &lx, &lz}) {
          worst = std::max(worst, completeness_residual(ch->ops()));
          ++sets;
        }
        worst = std::max({worst, completeness_residual(compose(x, z).ops()), completeness_residual(sw)});
        sets += 2;
      }
    }
  }
  return {worst < 1e-12, std::to_string(sets) + " Kraus sets, max residual " + fmt("%.2e", worst)};
}

Outcome bell_machinery() {
  double gram = 0.0, ortho = 0.0;
  for (int d = 2; d <= 7; ++d) {
    const BellBasis basis(d);
    Matrix b(d * d, d * d);
    for (int i = 0; i < d * d; ++i) b.col(i) = basis.vectors()[static_cast<std::size_t>(i)].amps();
    gram = std::max(gram, max_abs(b.adjoint() * b - Matrix::Identity(d * d, d * d)));
    for (int v = 0; v < d; ++v)
      for (int w = 0; w < d; ++w)
        for (int y = 0; y < d; ++y)
          for (int z = 0; z < d; ++z) {
            const Complex tr = (correction_unitary(d, v, w).mat().adjoint() * correction_unitary(d, y, z).mat()).trace();
            ortho = std::max(ortho, std::abs(tr - ((v == y && w == z) ? static_cast<double>(d) : 0.0)));
          }
  }
  return {gram < 1e-12 && ortho < 1e-12, "Gram residual " + fmt("%.2e", gram) + ", trace orthogonality residual " +
                                             fmt("%.2e", ortho)};
}

Outcome teleport_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  double fid = 0.0, prob = 0.0;
  for (int d = 2; d <= 7; ++d) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(d));
    const auto epr = DensityMatrix::pure(epr_pure(d));
    for (int i = 0; i < 100; ++i) {
      const auto res = teleport(haar_random_ket(d, rng), epr);
      fid = std::max(fid, std::abs(res.fidelity - 1.0));
      for (const auto& o : res.per_outcome) prob = std::max(prob, std::abs(o.probability - 1.0 / (d * d)));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {fid < 1e-10 && prob < 1e-10 && secs < 30.0, "max |F - 1| " + fmt("%.2e", fid) + ", max |P - 1/d^2| " +
                                                          fmt("%.2e", prob) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome control_statistics() {
  std::string detail;
  bool ok = true;
  for (int d = 2; d <= 5; ++d) {
    double dev = 0.0, recovered = 0.0;
    for (int i = 0; i <= 10; ++i) {
      for (int j = 0; j <= 10; ++j) {
        const double p = i / 10.0, q = j / 10.0;
        const auto out = distribute_epr_switch(d, p, q);
        dev = std::max(dev, std::abs(out.p_minus - p * q));
        if (out.rho_minus) recovered = std::max(recovered, std::abs(entanglement_fidelity(*out.rho_minus) - 1.0));
      }
    }
    const bool pass_d = dev < 1e-10 && recovered < 1e-10;
    ok = ok && pass_d;
    const double s2 = std::pow(std::sin(std::numbers::pi / d), 2);
    detail += "\n       d=" + std::to_string(d) + ": max |P(-) - pq| " + fmt("%.3e", dev) + " (simulated P(-) = pq * " +
              fmt("%.4f", s2) + "), max |F(-) - 1| after recovery " + fmt("%.2e", recovered) +
              (pass_d ? "" : "  <- fails");
  }
  return {ok, "11x11 grid" + detail};
}

Outcome qubit_closed_forms() {
  double cond = 0.0, avg = 0.0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const auto r = evaluate_point(2, i / 10.0, j / 10.0);
      if (!std::isnan(r.f_cond_plus_eq29)) cond = std::max(cond, std::abs(r.f_cond_plus_sim - r.f_cond_plus_eq29));
      avg = std::max(avg, std::abs(r.f_avg_sim - r.f_avg_eq31));
    }
  }
  const auto half = evaluate_point(2, 0.5, 0.5);
  const bool exact = std::abs(half.f_avg_eq31 - 2.0 / 3.0) < 1e-15 && std::abs(half.f_avg_sim - 2.0 / 3.0) < 1e-9;
  return {cond < 1e-9 && avg < 1e-9 && exact, "max conditional deviation " + fmt("%.2e", cond) +
                                                  ", max average deviation " + fmt("%.2e", avg) +
                                                  ", F(0.5, 0.5) = " + fmt("%.12f", half.f_avg_sim)};
}

Outcome generator_decomposition() {
  double worst = 0.0;
  std::string literal;
  for (int d = 2; d <= 7; ++d) {
    const auto dec = epr_density_decomposition(d);
    worst = std::max(worst, dec.projection_residual);
    literal += (literal.empty() ? "" : ", ") + std::to_string(d) + ":" + fmt("%.3f", dec.uniform_coefficient_residual);
  }
  return {worst < 1e-12,
          "projection residual " + fmt("%.2e", worst) + "; literal-coefficient residual by d {" + literal + "}"};
}

Outcome discrepancy_report_check() {
  SweepConfig cfg;
  cfg.d_list = {5, 10, 15, 20};
  cfg.p_grid = cfg.q_grid = {0.0, 1.0, 11};
  const auto records = run_sweep(cfg);
  const auto rep = discrepancy_report(records);
  const std::string text = render_report(rep);

  std::size_t expected_flags = 0;
  for (const auto& r : records) {
    for (double v : {r.f_avg_eq31, r.f_cond_plus_eq29}) expected_flags += !std::isnan(v) && (v > 1.0 + 1e-12 || v < -1e-12);
  }
  const std::vector<std::pair<int, double>> eq31{{5, 7.25 / 6}, {10, 26.0 / 11}, {15, 57.25 / 16}, {20, 101.0 / 21}};
  const std::vector<double> quoted{0.65, 0.78, 0.89, 0.94};
  bool ok = rep.flags.size() == expected_flags && rep.endpoints.size() == 4;
  std::string detail;
  for (std::size_t i = 0; i < eq31.size() && ok; ++i) {
    const auto& e = rep.endpoints[i];
    ok = ok && e.d == eq31[i].first && std::abs(e.eq31 - eq31[i].second) < 1e-12 && e.quoted == quoted[i];
    for (const std::string& s : {fmt("%.10f", e.eq31), fmt("%.10f", e.simulated), fmt("%.2f", quoted[i])}) {
      ok = ok && text.find(s) != std::string::npos;
    }
    detail += "\n       d=" + std::to_string(e.d) + ": closed form " + fmt("%.6f", e.eq31) + ", simulated " +
              fmt("%.6f", e.simulated) + ", quoted " + fmt("%.2f", quoted[i]);
  }
  return {ok, std::to_string(rep.flags.size()) + " formula values outside [0, 1] flagged (expected " +
                  std::to_string(expected_flags) + ")" + detail};
}

Outcome switch_advantage() {
  bool ok = true;
  std::string detail;
  for (int d : {2, 3, 5, 7, 10, 15, 20}) {
    const auto r = evaluate_point(d, 0.5, 0.5);
    ok = ok && r.f_avg_sim > r.f_ct_sim;
    detail += (detail.empty() ? "" : ", ") + std::to_string(d) + ": " + fmt("%.4f", r.f_avg_sim) + " > " +
              fmt("%.4f", r.f_ct_sim);
  }
  return {ok, detail};
}

std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream is(entry.path(), std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    out.emplace_back(fs::relative(entry.path(), dir).string(), os.str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome end_to_end() {
  const fs::path root = fs::temp_directory_path() / "qudit_acceptance_e2e";
  fs::remove_all(root);
  double first = 0.0;
  int codes = 0;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = root / run;
    fs::create_directories(dir);
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out, err;
    codes |= run_cli({"verify", "--seed", "0"}, out, err);
    std::ofstream(dir / "verify.txt") << out.str();
    codes |= run_cli({"figures", "--seed", "0", "--out", dir.string()}, out, err);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (first == 0.0) first = secs;
  }
  const auto a = snapshot(root / "a");
  const auto b = snapshot(root / "b");
  const bool same = a == b && a.size() == 7;
  fs::remove_all(root);
  return {codes == 0 && same && first < 300.0, "verify + figures " + fmt("%.1f", first) + " s, exit codes " +
                                                   (codes == 0 ? "0" : "nonzero") + ", " + std::to_string(a.size()) +
                                                   " files " + (same ? "byte-identical" : "DIFFER") + " across runs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gate algebra", gate_algebra},
      {"SWAP constructions", swap_constructions},
      {"Kraus completeness", kraus_completeness},
      {"Bell basis and corrections", bell_machinery},
      {"teleportation identity", teleport_identity},
      {"switch control statistics", control_statistics},
      {"qubit closed-form reproduction", qubit_closed_forms},
      {"generator decomposition", generator_decomposition},
      {"discrepancy report", discrepancy_report_check},
      {"switch advantage at p = q = 0.5", switch_advantage},
      {"end-to-end determinism", end_to_end},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.passed;
    std::printf("[%s] %2zu %s (%.2f s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
