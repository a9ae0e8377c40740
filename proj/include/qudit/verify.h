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
#include <string>
#include <vector>

namespace qudit {

struct CheckResult {
  std::string name;
  int d;
  double residual;
  double tolerance;
  bool passed;
};

struct CheckTable {
  std::vector<CheckResult> rows;

  std::size_t failures() const;
  void add(std::string name, int d, double residual, double tolerance);
  void append(const CheckTable& other);
};

/// Gate algebra, unitarity, SWAP constructions and shift eigenstates.
CheckTable gate_property_suite(const std::vector<int>& dims);

/// Core, channel, switch and teleportation invariants. Random inputs are
/// drawn from `seed`.
CheckTable invariant_suite(const std::vector<int>& dims, std::uint64_t seed = 0);

/// One line per check, then `ALL CHECKS PASSED` or `FAILURES: n`.
std::string render_table(const CheckTable& table);

}  // namespace qudit
