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

#include "qudit/gates.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qudit {

namespace {

int mod(int a, int d) { return ((a % d) + d) % d; }

// Two-qudit permutation gate from a basis map (k, l) -> (k', l').
template <typename F>
Operator two_qudit_permutation(int d, F map) {
  const auto n = static_cast<Eigen::Index>(d) * d;
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const auto [k2, l2] = map(k, l);
      m(mod(k2, d) * d + mod(l2, d), k * d + l) = 1.0;
    }
  }
  return Operator(std::move(m), Dims::uniform(d, 2));
}

Operator negation(int d) {
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(mod(-k, d), k) = 1.0;
  return Operator(std::move(m), Dims::qudit(d));
}

Operator hadamard_bitwise(int d) {
  if (!std::has_single_bit(static_cast<unsigned>(d))) {
    throw std::invalid_argument("bitwise Hadamard needs d a power of 2, got " + std::to_string(d));
  }
  Matrix m(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      m(j, k) = (std::popcount(static_cast<unsigned>(k & j)) % 2 ? -s : s);
    }
  }
  return Operator(std::move(m), Dims::qudit(d));
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kPauliX: return "X";
    case GateKind::kPauliZ: return "Z";
    case GateKind::kFourier: return "F";
    case GateKind::kHadamardBitwise: return "H_bitwise";
    case GateKind::kCnotRight: return "R_c";
    case GateKind::kCnotLeft: return "L_c";
    case GateKind::kGxor: return "GXOR";
    case GateKind::kNegation: return "N";
    case GateKind::kSwapCanonical: return "SWAP";
    case GateKind::kSwapGxor: return "SWAP_gxor";
    case GateKind::kSwapCnotShift: return "SWAP_cnot";
  }
  return "?";
}

Complex root_of_unity(int d) {
  return std::polar(1.0, 2.0 * std::numbers::pi / d);
}

Operator pauli_x(int d, int shift) { return build({GateKind::kPauliX, d, shift, 0}); }
Operator pauli_z(int d, int phase) { return build({GateKind::kPauliZ, d, 0, phase}); }
Operator fourier(int d) { return build({GateKind::kFourier, d}); }

Operator build(const GateSpec& spec) {
  const int d = spec.d;
  if (d < 2) throw std::invalid_argument("gate dimension must be >= 2");
  if (spec.shift < 0 || spec.shift >= d || spec.phase < 0 || spec.phase >= d) {
    throw std::invalid_argument("gate parameters must lie in 0..d-1");
  }
  switch (spec.kind) {
    case GateKind::kPauliX: {
      Matrix m = Matrix::Zero(d, d);
      for (int k = 0; k < d; ++k) m(mod(k + spec.shift, d), k) = 1.0;
      return Operator(std::move(m), Dims::qudit(d));
    }
    case GateKind::kPauliZ: {
      Matrix m = Matrix::Zero(d, d);
      for (int k = 0; k < d; ++k) {
        m(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * spec.phase * k / d);
      }
      return Operator(std::move(m), Dims::qudit(d));
    }
    case GateKind::kFourier: {
      Matrix m(d, d);
      const double s = 1.0 / std::sqrt(static_cast<double>(d));
      for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) {
          m(j, k) = std::polar(s, 2.0 * std::numbers::pi * ((j * k) % d) / d);
        }
      }
      return Operator(std::move(m), Dims::qudit(d));
    }
    case GateKind::kHadamardBitwise:
      return hadamard_bitwise(d);
    case GateKind::kCnotRight:
      return two_qudit_permutation(d, [](int k, int x) { return std::pair{k, x + k}; });
    case GateKind::kCnotLeft:
      return two_qudit_permutation(d, [](int k, int x) { return std::pair{k, x - k}; });
    case GateKind::kGxor:
      return two_qudit_permutation(d, [](int k, int l) { return std::pair{k, k - l}; });
    case GateKind::kNegation:
      return negation(d);
    case GateKind::kSwapCanonical:
      return two_qudit_permutation(d, [](int k, int l) { return std::pair{l, k}; });
    case GateKind::kSwapGxor:
    case GateKind::kSwapCnotShift:
      return swap_construction(spec.kind, d).op;
  }
  throw std::invalid_argument("unknown gate kind");
}

Operator exchange_qudits(const Operator& two_qudit) {
  const auto& f = two_qudit.dims().factors();
  if (f.size() != 2 || f[0] != f[1]) throw std::invalid_argument("exchange_qudits needs two equal qudits");
  const Operator swap = build({GateKind::kSwapCanonical, f[0]});
  return swap * two_qudit * swap;
}

Ket control_eigenstate(int d, int phi) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (phi < 0 || phi >= d) throw std::out_of_range("control phase label must lie in 0..d-1");
  Vector v(d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) v(j) = std::polar(s, 2.0 * std::numbers::pi * ((phi * j) % d) / d);
  return Ket(std::move(v), Dims::qudit(d));
}

ShiftEigenCheck shift_eigen_check(const Ket& v) {
  const int d = v.dims().factor(0);
  const Vector xv = pauli_x(d).mat() * v.amps();
  const Complex lambda = v.amps().dot(xv);
  return {lambda, (xv - lambda * v.amps()).norm()};
}

SwapCircuit swap_construction(GateKind kind, int d) {
  const Operator canonical = build({GateKind::kSwapCanonical, d});
  const Operator id = Operator::identity(Dims::qudit(d));
  const Operator n = negation(d);
  switch (kind) {
    case GateKind::kSwapCanonical:
      return {canonical, 1};
    case GateKind::kSwapGxor: {
      const Operator g12 = build({GateKind::kGxor, d});
      const Operator g21 = exchange_qudits(g12);
      SwapCircuit c{tensor(n, n) * g12 * g21 * g12, 5};
      if ((c.op.mat() - canonical.mat()).cwiseAbs().maxCoeff() > kTol.structural) {
        throw std::logic_error("GXOR SWAP construction differs from SWAP");
      }
      return c;
    }
    case GateKind::kSwapCnotShift: {
      const Operator r12 = build({GateKind::kCnotRight, d});
      const Operator l21 = exchange_qudits(build({GateKind::kCnotLeft, d}));
      SwapCircuit c{tensor(n, id) * r12 * l21 * r12, 4};
      if ((c.op.mat() - canonical.mat()).cwiseAbs().maxCoeff() > kTol.structural) {
        throw std::logic_error("CNOT-shift SWAP construction differs from SWAP");
      }
      return c;
    }
    default:
      throw std::invalid_argument("not a SWAP construction kind");
  }
}

}  // namespace qudit
