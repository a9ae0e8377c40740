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

#include <string>
#include <vector>

#include "qudit/core.h"

namespace qudit {

/// Finite Kraus decomposition. Construction rejects sets whose
/// completeness residual || sum K^dagger K - I ||_max exceeds the
/// structural tolerance.
class KrausChannel {
 public:
  KrausChannel(std::vector<Operator> ops, std::string label);

  static KrausChannel identity(const Dims& dims);

  const std::vector<Operator>& ops() const { return ops_; }
  const std::string& label() const { return label_; }
  const Dims& dims() const { return ops_.front().dims(); }

 private:
  std::vector<Operator> ops_;
  std::string label_;
};

double completeness_residual(std::span<const Operator> ops);

/// {sqrt(1-p) I, sqrt(p) X_d}.
KrausChannel cyclic_shift_channel(int d, double p);

/// {sqrt(1-q) I, sqrt(q) Z_d}.
KrausChannel cyclic_clock_channel(int d, double q);

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// `first` then `second`: Kraus elements second_t * first_s.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

/// Lifts a single-qudit channel onto a pair; `member` is 1 (K (x) I) or
/// 2 (I (x) K).
KrausChannel lift_one_sided(const KrausChannel& ch, int member, const Dims& pair_dims);

}  // namespace qudit
