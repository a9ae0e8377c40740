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
#include <random>
#include <vector>

#include "qudit/core.h"

namespace qudit {

Ket epr_pure(int d);

/// |Psi_yz> = (1/sqrt d) sum_k e^(2 pi i y k / d) |k + z>|k>.
class BellBasis {
 public:
  explicit BellBasis(int d);

  int d() const { return d_; }
  const Ket& vector(int y, int z) const { return vectors_.at(static_cast<std::size_t>(y * d_ + z)); }
  const std::vector<Ket>& vectors() const { return vectors_; }

  /// |s t> expanded on the basis: (1/sqrt d) sum_y e^(-2 pi i y t / d) |Psi_{y, s-t}>.
  Vector inversion(int s, int t) const;

 private:
  int d_;
  std::vector<Ket> vectors_;
};

BellBasis bell_basis(int d);

/// U_vw = sum_k e^(2 pi i v k / d) |k><k + w|.
Operator correction_unitary(int d, int v, int w);

struct Correction {
  int v;
  int w;
};

/// Correction applied by the receiver for Bell outcome (y, z), indexed
/// y * d + z. Calibrated once per d so that every outcome recovers the
/// input exactly over |Phi+>; cached and safe to call concurrently.
const std::vector<Correction>& correction_map(int d);

struct OutcomeRecord {
  int y;
  int z;
  double probability;
  /// Receiver state after correction; empty when unreachable.
  std::optional<DensityMatrix> corrected_state;
};

struct TeleportResult {
  std::vector<OutcomeRecord> per_outcome;
  DensityMatrix rho_tau;
  double fidelity;
};

/// Teleports `psi` over `shared` (member 1 sender, member 2 receiver)
/// using a Bell-basis measurement on (psi, member 1).
TeleportResult teleport(const Ket& psi, const DensityMatrix& shared);

/// Same protocol built from gates on the full three-qudit state: the
/// left-shift CNOT controlled by psi onto member 1, inverse Fourier on psi,
/// computational-basis readout. Dense in d^3; meant for small d.
TeleportResult teleport_gate_level(const Ket& psi, const DensityMatrix& shared);

/// Haar-random pure state from normalized complex Gaussian amplitudes.
Ket haar_random_ket(int d, std::mt19937_64& rng);

/// Random density matrix G G^dagger / Tr from a complex Gaussian G.
DensityMatrix random_density_matrix(const Dims& dims, std::mt19937_64& rng);

struct AverageFidelity {
  double monte_carlo;
  double standard_error;
  /// (d F_e + 1) / (d + 1), F_e = <Phi+| shared |Phi+>.
  double closed_form;
};

AverageFidelity average_fidelity_sim(const DensityMatrix& shared, int n_samples,
                                     std::uint64_t seed);

double entanglement_fidelity(const DensityMatrix& shared);

/// (d F_e + 1) / (d + 1).
double average_fidelity_from_entanglement(int d, double entanglement_fidelity);

/// (d - dp - dq + pq + 1) / ((1 - pq)(d + 1)). Throws std::domain_error at pq = 1.
double fidelity_formula_conditional(int d, double p, double q);

struct AverageFormula {
  /// (d - dp - dq + d^2 pq + 1) / (d + 1).
  double closed_form;
  /// pq + (1 - pq) times the conditional formula; NaN at pq = 1.
  double from_conditional_formula;
};

AverageFormula fidelity_formula_average(int d, double p, double q);

/// pq * 1 + (1 - pq) * f_plus.
double average_from_conditional(double p, double q, double f_plus);

enum class OutcomeClass { kDiagonal, kOffDiagonal };

struct BlockFormulaResult {
  Matrix rho;
  double trace;
};

/// d [ sum_k rho_psi(k,k) E_kk +/- sum_{v<u} rho_psi(v,u) E_vu ], where E_vu
/// is the (v,u) d x d block of `shared` and the sign is + for kDiagonal.
BlockFormulaResult rho_tau_blocks(const DensityMatrix& rho_psi, const DensityMatrix& shared,
                                  OutcomeClass outcome_class);

}  // namespace qudit
