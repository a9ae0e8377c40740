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

#include <string_view>

#include "qudit/core.h"

namespace qudit {

enum class GateKind {
  kPauliX,           // |k> -> |k + shift>
  kPauliZ,           // |k> -> w^(phase k) |k>
  kFourier,          // |k> -> (1/sqrt d) sum_m w^(km) |m>
  kHadamardBitwise,  // (-1)^(k.m) kernel, d a power of 2
  kCnotRight,        // |k, x> -> |k, x + k>
  kCnotLeft,         // |k, x> -> |k, x - k>
  kGxor,             // |k, l> -> |k, k - l>
  kNegation,         // |k> -> |-k>
  kSwapCanonical,
  kSwapGxor,
  kSwapCnotShift,
};

std::string_view gate_name(GateKind kind);

struct GateSpec {
  GateKind kind;
  int d;
  int shift = 1;
  int phase = 1;
};

/// e^(2 pi i / d).
Complex root_of_unity(int d);

/// Throws std::invalid_argument on an invalid spec.
Operator build(const GateSpec& spec);

Operator pauli_x(int d, int shift = 1);
Operator pauli_z(int d, int phase = 1);
Operator fourier(int d);

/// Conjugates a two-qudit gate by SWAP, exchanging the roles of the qudits.
Operator exchange_qudits(const Operator& two_qudit);

/// (1/sqrt d) sum_j e^(2 pi i phi j / d) |j>.
Ket control_eigenstate(int d, int phi);

struct ShiftEigenCheck {
  Complex eigenvalue;
  /// || X v - eigenvalue v ||.
  double residual;
};

ShiftEigenCheck shift_eigen_check(const Ket& v);

struct SwapCircuit {
  Operator op;
  int gate_count;
};

/// kSwapGxor: (N (x) N) GXOR_12 GXOR_21 GXOR_12.
/// kSwapCnotShift: (N (x) I) R_12 L_21 R_12.
/// Every construction is compared against the canonical permutation before
/// returning; std::logic_error if it differs.
SwapCircuit swap_construction(GateKind kind, int d);

}  // namespace qudit
