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

#include "qudit/quantum_switch.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qudit/gates.h"

namespace qudit {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

Matrix control_projector(int control_dim, const std::set<int>& labels, bool inside) {
  Matrix p = Matrix::Zero(control_dim, control_dim);
  for (int k = 0; k < control_dim; ++k) {
    if (labels.contains(k) == inside) p(k, k) = 1.0;
  }
  return p;
}

DensityMatrix normalized(Matrix m, double prob, const Dims& dims) {
  m /= prob;
  return DensityMatrix((m + m.adjoint()) / 2.0, dims);
}

}  // namespace

std::set<int> default_swapped_labels(int control_dim) {
  if (control_dim == 2) return {1};
  std::set<int> out;
  for (int k = 0; k < control_dim; ++k) {
    if (is_prime(k)) out.insert(k);
  }
  return out;
}

Ket control_minus(int control_dim) {
  Vector v = Vector::Constant(control_dim, -1.0 / std::sqrt(static_cast<double>(control_dim)));
  v(0) = -v(0);
  return Ket(std::move(v), Dims::qudit(control_dim));
}

SwitchSpec SwitchSpec::qubit_control(KrausChannel a, KrausChannel b) {
  return with_control(std::move(a), std::move(b), 2);
}

SwitchSpec SwitchSpec::with_control(KrausChannel a, KrausChannel b, int control_dim) {
  SwitchSpec spec{std::move(a), std::move(b), control_dim, default_swapped_labels(control_dim),
                  control_eigenstate(control_dim, 0)};
  spec.validate();
  return spec;
}

Dims SwitchSpec::joint_dims() const { return message_dims().concat(Dims::qudit(control_dim)); }

void SwitchSpec::validate() const {
  if (!(channel_a.dims() == channel_b.dims())) {
    throw std::invalid_argument("switch channels act on different spaces");
  }
  if (control_dim < 2) throw std::invalid_argument("control dimension must be >= 2");
  if (!(control.dims() == Dims::qudit(control_dim))) {
    throw std::invalid_argument("control state dimension mismatch");
  }
  for (int k : swapped_labels) {
    if (k < 0 || k >= control_dim) throw std::invalid_argument("swapped control label out of range");
  }
  if (swapped_labels.empty() || static_cast<int>(swapped_labels.size()) == control_dim) {
    throw std::invalid_argument("control partition must contain both orders");
  }
}

std::vector<Operator> switch_kraus(const SwitchSpec& spec) {
  spec.validate();
  const Matrix p0 = control_projector(spec.control_dim, spec.swapped_labels, false);
  const Matrix p1 = control_projector(spec.control_dim, spec.swapped_labels, true);
  const Dims joint = spec.joint_dims();
  std::vector<Operator> out;
  out.reserve(spec.channel_a.ops().size() * spec.channel_b.ops().size());
  for (const auto& a : spec.channel_a.ops()) {
    for (const auto& b : spec.channel_b.ops()) {
      Matrix w = kron(product(a.mat(), b.mat()), p0) + kron(product(b.mat(), a.mat()), p1);
      out.emplace_back(std::move(w), joint);
    }
  }
  const double r = completeness_residual(out);
  if (r > kTol.structural) {
    throw std::logic_error("switch Kraus set incomplete, residual " + std::to_string(r));
  }
  return out;
}

DensityMatrix switch_apply(const SwitchSpec& spec, const DensityMatrix& rho_msg) {
  if (!(rho_msg.dims() == spec.message_dims())) {
    throw std::invalid_argument("message state dims " + rho_msg.dims().str() +
                                " do not match switch " + spec.message_dims().str());
  }
  const auto kraus = switch_kraus(spec);
  const Matrix input = kron(rho_msg.mat(), spec.control.amps() * spec.control.amps().adjoint());
  Matrix out = Matrix::Zero(input.rows(), input.cols());
  for (const auto& w : kraus) out += sandwich(w.mat(), input);
  return DensityMatrix((out + out.adjoint()) / 2.0, spec.joint_dims());
}

SwitchOutcome measure_control(const DensityMatrix& joint, const SwitchSpec& spec) {
  const Dims& dims = joint.dims();
  if (!(dims == spec.joint_dims())) throw std::invalid_argument("joint state dims mismatch");
  const int control_index = static_cast<int>(dims.subsystems()) - 1;
  std::vector<int> message;
  for (int k = 0; k < control_index; ++k) message.push_back(k);

  const Matrix minus_part =
      conditional_state(joint.mat(), dims, {control_index}, control_minus(spec.control_dim).amps());
  const Matrix total = partial_trace(joint, message).mat();
  const Matrix plus_part = total - minus_part;
  const double p_minus = std::clamp(minus_part.trace().real(), 0.0, 1.0);
  const double p_plus = 1.0 - p_minus;

  const Dims& msg = spec.message_dims();
  std::optional<DensityMatrix> rho_minus;
  std::optional<DensityMatrix> rho_plus;
  if (p_minus > kTol.unreachable) rho_minus = normalized(minus_part, p_minus, msg);
  if (p_plus > kTol.unreachable) rho_plus = normalized(plus_part, p_plus, msg);
  return SwitchOutcome{joint, p_minus, rho_minus, rho_minus, p_plus, rho_plus,
                       DensityMatrix((total + total.adjoint()) / 2.0, msg)};
}

double double_sum_kraus_residual(const KrausChannel& a, const KrausChannel& b, int control_dim) {
  std::vector<Operator> ops;
  const Matrix id_c = Matrix::Identity(control_dim, control_dim);
  const Dims joint = a.dims().concat(Dims::qudit(control_dim));
  for (const auto& as : a.ops()) {
    for (const auto& bt : b.ops()) {
      Matrix w = Matrix::Zero(joint.total(), joint.total());
      for (int k = 0; k < control_dim; ++k) {
        for (int k2 = 0; k2 < control_dim; ++k2) {
          Matrix pk = Matrix::Zero(control_dim, control_dim);
          Matrix pk2 = pk;
          pk(k, k) = 1.0;
          pk2(k2, k2) = 1.0;
          w += kron(as.mat() * bt.mat(), pk) + kron(bt.mat() * as.mat(), pk2);
        }
      }
      ops.emplace_back(std::move(w), joint);
    }
  }
  return completeness_residual(ops);
}

SwitchOutcome distribute_epr_switch(int d, double p, double q, int control_dim) {
  const Dims pair = Dims::uniform(d, 2);
  const auto a = lift_one_sided(cyclic_shift_channel(d, p), 2, pair);
  const auto b = lift_one_sided(cyclic_clock_channel(d, q), 2, pair);
  const SwitchSpec spec = SwitchSpec::with_control(a, b, control_dim);
  const DensityMatrix epr = DensityMatrix::pure(maximally_entangled(d));

  SwitchOutcome out = measure_control(switch_apply(spec, epr), spec);
  if (out.rho_minus) {
    const Matrix recovery =
        kron(Matrix::Identity(d, d), (pauli_x(d) * pauli_z(d)).adjoint().mat());
    out.rho_minus = DensityMatrix(sandwich(recovery, out.rho_minus->mat()), pair);
    Matrix avg = out.p_minus * out.rho_minus->mat();
    if (out.rho_plus) avg += out.p_plus * out.rho_plus->mat();
    out.rho_avg = DensityMatrix((avg + avg.adjoint()) / 2.0, pair);
  }
  return out;
}

DensityMatrix distribute_epr_classical(int d, double p, double q) {
  const Dims pair = Dims::uniform(d, 2);
  const auto a = lift_one_sided(cyclic_shift_channel(d, p), 2, pair);
  const auto b = lift_one_sided(cyclic_clock_channel(d, q), 2, pair);
  return apply(b, apply(a, DensityMatrix::pure(maximally_entangled(d))));
}

double predicted_minus_probability(int d, double p, double q) {
  const double s = std::sin(std::numbers::pi / d);
  return p * q * s * s;
}

}  // namespace qudit
