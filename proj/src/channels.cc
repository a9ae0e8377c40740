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

#include "qudit/channels.h"

#include <cmath>
#include <stdexcept>

#include "qudit/gates.h"

namespace qudit {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

double completeness_residual(std::span<const Operator> ops) {
  if (ops.empty()) return INFINITY;
  const auto n = ops.front().dims().total();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& k : ops) sum += product(k.mat().adjoint(), k.mat());
  return (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

KrausChannel::KrausChannel(std::vector<Operator> ops, std::string label)
    : ops_(std::move(ops)), label_(std::move(label)) {
  if (ops_.empty()) throw std::invalid_argument("Kraus set is empty");
  for (const auto& k : ops_) {
    if (!(k.dims() == ops_.front().dims())) throw std::invalid_argument("Kraus dims mismatch");
  }
  const double r = completeness_residual(ops_);
  if (r > kTol.structural) {
    throw std::invalid_argument("Kraus set " + label_ + " is incomplete, residual " + std::to_string(r));
  }
}

KrausChannel KrausChannel::identity(const Dims& dims) {
  return KrausChannel({Operator::identity(dims)}, "I");
}

KrausChannel cyclic_shift_channel(int d, double p) {
  check_probability(p, "p");
  const Dims dims = Dims::qudit(d);
  return KrausChannel({Operator::identity(dims) * std::sqrt(1.0 - p), pauli_x(d) * std::sqrt(p)},
                      "shift(p=" + std::to_string(p) + ")");
}

KrausChannel cyclic_clock_channel(int d, double q) {
  check_probability(q, "q");
  const Dims dims = Dims::qudit(d);
  return KrausChannel({Operator::identity(dims) * std::sqrt(1.0 - q), pauli_z(d) * std::sqrt(q)},
                      "clock(q=" + std::to_string(q) + ")");
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (!(ch.dims() == rho.dims())) {
    throw std::invalid_argument("channel dims " + ch.dims().str() + " do not match state " +
                                rho.dims().str());
  }
  const auto n = rho.dims().total();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& k : ch.ops()) out += sandwich(k.mat(), rho.mat());
  return DensityMatrix((out + out.adjoint()) / 2.0, rho.dims());
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (!(first.dims() == second.dims())) throw std::invalid_argument("compose dims mismatch");
  std::vector<Operator> ops;
  ops.reserve(first.ops().size() * second.ops().size());
  for (const auto& b : second.ops()) {
    for (const auto& a : first.ops()) ops.push_back(b * a);
  }
  return KrausChannel(std::move(ops), second.label() + "*" + first.label());
}

KrausChannel lift_one_sided(const KrausChannel& ch, int member, const Dims& pair_dims) {
  if (member != 1 && member != 2) throw std::invalid_argument("member must be 1 or 2");
  if (pair_dims.subsystems() != 2) throw std::invalid_argument("pair_dims must have two factors");
  const Dims target = pair_dims.select(std::vector<int>{member - 1});
  if (!(target == ch.dims())) throw std::invalid_argument("channel does not act on that member");
  const Operator other = Operator::identity(pair_dims.select(std::vector<int>{2 - member}));
  std::vector<Operator> ops;
  ops.reserve(ch.ops().size());
  for (const auto& k : ch.ops()) ops.push_back(member == 2 ? tensor(other, k) : tensor(k, other));
  return KrausChannel(std::move(ops), ch.label() + "@" + std::to_string(member));
}

}  // namespace qudit
