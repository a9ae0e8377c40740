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

#include <optional>
#include <set>
#include <vector>

#include "qudit/channels.h"
#include "qudit/core.h"

namespace qudit {

/// Two channels placed in a superposition of orders by a control system.
///
/// The control basis is split in two: labels outside `swapped_labels`
/// select the block A_s B_t, labels inside select B_t A_s. The Kraus
/// elements are
///
///   W_st = A_s B_t (x) P_0 + B_t A_s (x) P_1,
///
/// with P_0, P_1 the control projectors onto the two label sets.
struct SwitchSpec {
  KrausChannel channel_a;
  KrausChannel channel_b;
  int control_dim;
  std::set<int> swapped_labels;
  Ket control;

  /// Control |+> on a qubit, swapped_labels = {1}.
  static SwitchSpec qubit_control(KrausChannel a, KrausChannel b);
  /// Control |+> of dimension `control_dim` with the default partition.
  static SwitchSpec with_control(KrausChannel a, KrausChannel b, int control_dim);

  const Dims& message_dims() const { return channel_a.dims(); }
  Dims joint_dims() const;

  /// Throws std::invalid_argument when the spec is inconsistent.
  void validate() const;
};

/// {1} for a qubit control; for larger controls, the prime labels.
std::set<int> default_swapped_labels(int control_dim);

/// (1/sqrt(d_c)) (|0> - |1> - ... - |d_c - 1>); for d_c = 2 the Hadamard |->.
Ket control_minus(int control_dim);

struct SwitchOutcome {
  DensityMatrix joint;
  double p_minus;
  /// Empty when the branch is unreachable.
  std::optional<DensityMatrix> rho_minus;
  /// Post-measurement |-> branch before any recovery unitary.
  std::optional<DensityMatrix> rho_minus_raw;
  double p_plus;
  std::optional<DensityMatrix> rho_plus;
  DensityMatrix rho_avg;
};

/// Throws std::logic_error if the set is not complete.
std::vector<Operator> switch_kraus(const SwitchSpec& spec);

DensityMatrix switch_apply(const SwitchSpec& spec, const DensityMatrix& rho_msg);

/// Two-outcome measurement {|-><-|, I - |-><-|} on the control.
SwitchOutcome measure_control(const DensityMatrix& joint, const SwitchSpec& spec);

/// Completeness residual of the variant whose Kraus elements sum both
/// orders over every control label, sum_{k,k'} [A_s B_t (x) |k><k| +
/// B_t A_s (x) |k'><k'|]. Diagnostic only: this set is not trace preserving.
double double_sum_kraus_residual(const KrausChannel& a, const KrausChannel& b, int control_dim);

/// Cyclic shift (p) and cyclic clock (q) acting on member 2 of
/// |Phi+><Phi+|, combined by the switch. The |-> branch is corrected with
/// I (x) (X_d Z_d)^dagger.
SwitchOutcome distribute_epr_switch(int d, double p, double q, int control_dim = 2);

/// Same channels traversed in the fixed order shift then clock.
DensityMatrix distribute_epr_classical(int d, double p, double q);

/// Interference prediction for the qubit-control switch above:
/// P(-) = pq sin^2(pi/d), reducing to pq for d = 2.
double predicted_minus_probability(int d, double p, double q);

}  // namespace qudit
