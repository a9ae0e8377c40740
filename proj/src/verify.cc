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

#include "qudit/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "qudit/channels.h"
#include "qudit/core.h"
#include "qudit/gates.h"
#include "qudit/quantum_switch.h"
#include "qudit/teleport.h"

namespace qudit {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_residual(const Operator& u) {
  return max_abs(product(u.mat().adjoint(), u.mat()) - Matrix::Identity(u.mat().rows(), u.mat().cols()));
}

Matrix power(const Matrix& m, int n) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) out = product(out, m);
  return out;
}

bool is_power_of_two(int d) { return d > 0 && (d & (d - 1)) == 0; }

const std::vector<double>& six_point_grid() {
  static const std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  return grid;
}

double negative_part(const DensityMatrix& rho) { return std::max(0.0, -rho.min_eigenvalue()); }

void core_checks(CheckTable& t, int d, std::mt19937_64& rng) {
  const auto a = random_density_matrix(Dims::qudit(d), rng);
  const auto b = random_density_matrix(Dims::qudit(d), rng);
  const auto ab = tensor(a, b);
  t.add("partial trace keeps first factor", d, max_abs(partial_trace(ab, {0}).mat() - a.mat()),
        kTol.structural);
  t.add("partial trace keeps second factor", d, max_abs(partial_trace(ab, {1}).mat() - b.mat()),
        kTol.structural);

  const auto gens = gell_mann_generators(d);
  double ortho = 0.0;
  double herm = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Matrix& gi = gens[i].op.mat();
    herm = std::max({herm, max_abs(gi - gi.adjoint()), std::abs(gi.trace())});
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      ortho = std::max(ortho, std::abs((gi * gens[j].op.mat()).trace() - expect));
    }
  }
  t.add("generator count d^2 - 1", d, std::abs(static_cast<double>(gens.size()) - (d * d - 1.0)), 0.5);
  t.add("generators hermitian and traceless", d, herm, kTol.structural);
  t.add("generators orthonormal", d, ortho, kTol.structural);

  double units = 0.0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      Matrix e = Matrix::Zero(d, d);
      e(r, c) = 1.0;
      units = std::max(units, max_abs(matrix_unit_from_generators(d, r, c) - e));
    }
  }
  t.add("matrix units from generators", d, units, kTol.structural);
  t.add("EPR projection expansion", d, epr_density_decomposition(d).projection_residual, kTol.structural);
}

void channel_checks(CheckTable& t, int d, std::mt19937_64& rng) {
  const Dims pair = Dims::uniform(d, 2);
  double complete = 0.0;
  double trace = 0.0;
  double negative = 0.0;
  const auto rho = random_density_matrix(Dims::qudit(d), rng);
  const auto rho_pair = random_density_matrix(pair, rng);
  for (double p : six_point_grid()) {
    for (double q : six_point_grid()) {
      const auto x = cyclic_shift_channel(d, p);
      const auto z = cyclic_clock_channel(d, q);
      const auto both = compose(x, z);
      const auto lx = lift_one_sided(x, 2, pair);
      const auto lz = lift_one_sided(z, 1, pair);
      for (const auto* ch : {&x, &z, &both, &lx, &lz}) complete = std::max(complete, completeness_residual(ch->ops()));
      for (const auto* ch : {&x, &z, &both}) {
        const auto out = apply(*ch, rho);
        trace = std::max(trace, std::abs(out.mat().trace().real() - 1.0));
        negative = std::max(negative, negative_part(out));
      }
      const auto out = apply(lx, rho_pair);
      trace = std::max(trace, std::abs(out.mat().trace().real() - 1.0));
      negative = std::max(negative, negative_part(out));
    }
  }
  t.add("channel Kraus completeness", d, complete, kTol.structural);
  t.add("channel trace preservation", d, trace, kTol.physical);
  t.add("channel output positivity", d, negative, kTol.physical);

  const auto epr = DensityMatrix::pure(maximally_entangled(d));
  const Matrix shift2 = kron(Matrix::Identity(d, d), pauli_x(d).mat());
  t.add("lifted full shift on EPR", d,
        max_abs(apply(lift_one_sided(cyclic_shift_channel(d, 1.0), 2, pair), epr).mat() -
                sandwich(shift2, epr.mat())),
        kTol.structural);

  Matrix diag = Matrix::Zero(d, d);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < d; ++k) diag(k, k) = unif(rng);
  diag /= diag.trace();
  const DensityMatrix diag_rho(diag, Dims::qudit(d));
  const auto x = cyclic_shift_channel(d, 0.3);
  const auto z = cyclic_clock_channel(d, 0.7);
  t.add("shift and clock commute on diagonal inputs", d,
        max_abs(apply(z, apply(x, diag_rho)).mat() - apply(x, apply(z, diag_rho)).mat()), kTol.structural);
}

void switch_checks(CheckTable& t, int d) {
  const Dims pair = Dims::uniform(d, 2);
  double complete = 0.0;
  double p_minus = 0.0;
  double recovered = 0.0;
  double branch_trace = 0.0;
  double negative = 0.0;
  for (double p : six_point_grid()) {
    for (double q : six_point_grid()) {
      const auto spec = SwitchSpec::qubit_control(lift_one_sided(cyclic_shift_channel(d, p), 2, pair),
                                                  lift_one_sided(cyclic_clock_channel(d, q), 2, pair));
      complete = std::max(complete, completeness_residual(switch_kraus(spec)));
      const auto out = distribute_epr_switch(d, p, q);
      p_minus = std::max(p_minus, std::abs(out.p_minus - predicted_minus_probability(d, p, q)));
      if (out.rho_minus) recovered = std::max(recovered, std::abs(1.0 - entanglement_fidelity(*out.rho_minus)));
      std::vector<const DensityMatrix*> states{&out.rho_avg};
      if (out.rho_plus) states.push_back(&*out.rho_plus);
      if (out.rho_minus) states.push_back(&*out.rho_minus);
      for (const auto* s : states) {
        branch_trace = std::max(branch_trace, std::abs(s->mat().trace().real() - 1.0));
        negative = std::max(negative, negative_part(*s));
      }
      branch_trace = std::max(branch_trace, std::abs(out.p_minus + out.p_plus - 1.0));
    }
  }
  t.add("switch Kraus completeness", d, complete, kTol.structural);
  t.add("switch minus probability pq sin^2(pi/d)", d, p_minus, kTol.physical);
  t.add("switch recovered minus branch fidelity", d, recovered, kTol.physical);
  t.add("switch branch normalization", d, branch_trace, kTol.physical);
  t.add("switch branch positivity", d, negative, kTol.physical);

  const double with_switch = entanglement_fidelity(distribute_epr_switch(d, 0.5, 0.5).rho_avg);
  const double classical = entanglement_fidelity(distribute_epr_classical(d, 0.5, 0.5));
  t.add("switch beats classical order at p = q = 0.5", d, with_switch > classical ? 0.0 : 1.0, 0.5);
}

void teleport_checks(CheckTable& t, int d, std::mt19937_64& rng) {
  const BellBasis bell(d);
  Matrix basis(d * d, d * d);
  for (int i = 0; i < d * d; ++i) basis.col(i) = bell.vectors()[static_cast<std::size_t>(i)].amps();
  t.add("Bell basis orthonormal", d, max_abs(basis.adjoint() * basis - Matrix::Identity(d * d, d * d)),
        kTol.structural);

  double inversion = 0.0;
  for (int s = 0; s < d; ++s) {
    for (int c = 0; c < d; ++c) {
      Vector st = Vector::Zero(d * d);
      st(s * d + c) = 1.0;
      inversion = std::max(inversion, max_abs(bell.inversion(s, c) - st));
    }
  }
  t.add("Bell inversion", d, inversion, kTol.structural);

  std::vector<Matrix> corrections;
  for (int v = 0; v < d; ++v) {
    for (int w = 0; w < d; ++w) corrections.push_back(correction_unitary(d, v, w).mat());
  }
  double ortho = 0.0;
  for (std::size_t i = 0; i < corrections.size(); ++i) {
    for (std::size_t j = 0; j < corrections.size(); ++j) {
      const Complex tr = (corrections[i].adjoint() * corrections[j]).trace();
      ortho = std::max(ortho, std::abs(tr - (i == j ? static_cast<double>(d) : 0.0)));
    }
  }
  t.add("correction unitaries orthogonal", d, ortho, kTol.structural);

  const auto epr = DensityMatrix::pure(epr_pure(d));
  double fidelity = 0.0;
  double uniform = 0.0;
  double gate_level = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Ket psi = haar_random_ket(d, rng);
    const auto res = teleport(psi, epr);
    fidelity = std::max(fidelity, std::abs(1.0 - res.fidelity));
    for (const auto& o : res.per_outcome) {
      uniform = std::max(uniform, std::abs(o.probability - 1.0 / (d * d)));
    }
    if (d <= 5 && i < 3) {
      const auto noisy = random_density_matrix(Dims::uniform(d, 2), rng);
      gate_level = std::max(gate_level, max_abs(teleport_gate_level(psi, noisy).rho_tau.mat() -
                                                teleport(psi, noisy).rho_tau.mat()));
    }
  }
  t.add("teleport over perfect EPR", d, fidelity, kTol.physical);
  t.add("teleport outcome probabilities uniform", d, uniform, kTol.physical);
  if (d <= 5) t.add("gate-level teleport matches Bell projection", d, gate_level, kTol.physical);
}

}  // namespace

std::size_t CheckTable::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.passed; }));
}

void CheckTable::add(std::string name, int d, double residual, double tolerance) {
  rows.push_back({std::move(name), d, residual, tolerance, std::isfinite(residual) && residual < tolerance});
}

void CheckTable::append(const CheckTable& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }

CheckTable gate_property_suite(const std::vector<int>& dims) {
  CheckTable t;
  for (int d : dims) {
    const Matrix x = pauli_x(d).mat();
    const Matrix z = pauli_z(d).mat();
    const Matrix id = Matrix::Identity(d, d);
    const Complex w = root_of_unity(d);
    t.add("X^d = I", d, max_abs(power(x, d) - id), kTol.structural);
    t.add("Z^d = I", d, max_abs(power(z, d) - id), kTol.structural);
    t.add("ZX = wXZ", d, max_abs(z * x - w * x * z), kTol.structural);
    const Matrix g = build({GateKind::kGxor, d}).mat();
    t.add("GXOR^2 = I", d, max_abs(g * g - Matrix::Identity(d * d, d * d)), kTol.structural);
    const Matrix f = fourier(d).mat();
    t.add("F^dagger X F = Z^dagger", d, max_abs(f.adjoint() * x * f - z.adjoint()), kTol.structural);

    double unitary = 0.0;
    for (auto kind : {GateKind::kPauliX, GateKind::kPauliZ, GateKind::kFourier, GateKind::kCnotRight,
                      GateKind::kCnotLeft, GateKind::kGxor, GateKind::kNegation, GateKind::kSwapCanonical}) {
      unitary = std::max(unitary, unitarity_residual(build({kind, d})));
    }
    if (is_power_of_two(d)) unitary = std::max(unitary, unitarity_residual(build({GateKind::kHadamardBitwise, d})));
    t.add("all gates unitary", d, unitary, kTol.structural);

    const Matrix swap = build({GateKind::kSwapCanonical, d}).mat();
    const auto via_gxor = swap_construction(GateKind::kSwapGxor, d);
    const auto via_cnot = swap_construction(GateKind::kSwapCnotShift, d);
    t.add("SWAP from GXOR (5 gates)", d,
          std::max(max_abs(via_gxor.op.mat() - swap), std::abs(via_gxor.gate_count - 5.0)), kTol.structural);
    t.add("SWAP from shift CNOTs (4 gates)", d,
          std::max(max_abs(via_cnot.op.mat() - swap), std::abs(via_cnot.gate_count - 4.0)), kTol.structural);

    double eigen = 0.0;
    for (int phi = 0; phi < d; ++phi) eigen = std::max(eigen, shift_eigen_check(control_eigenstate(d, phi)).residual);
    t.add("shift eigenstates", d, eigen, kTol.structural);
  }
  return t;
}

CheckTable invariant_suite(const std::vector<int>& dims, std::uint64_t seed) {
  CheckTable t;
  for (int d : dims) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(d)));
    core_checks(t, d, rng);
    channel_checks(t, d, rng);
    switch_checks(t, d);
    teleport_checks(t, d, rng);
  }
  return t;
}

std::string render_table(const CheckTable& table) {
  std::ostringstream os;
  std::size_t width = 5;
  for (const auto& r : table.rows) width = std::max(width, r.name.size());
  for (const auto& r : table.rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  d=%-3d  %-*s  residual %.3e  tol %.1e\n", r.passed ? "PASS" : "FAIL",
                  r.d, static_cast<int>(width), r.name.c_str(), r.residual, r.tolerance);
    os << line;
  }
  const std::size_t n = table.failures();
  if (n == 0) {
    os << "ALL CHECKS PASSED\n";
  } else {
    os << "FAILURES: " << n << "\n";
  }
  return os.str();
}

}  // namespace qudit
