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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qudit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical thresholds shared by every module.
struct Tolerances {
  /// Exact-algebra identities (unitarity, completeness, Hermiticity, trace).
  double structural = 1e-12;
  /// Physically derived quantities (probabilities, fidelities, idempotence).
  double physical = 1e-10;
  /// Smallest admissible eigenvalue of a density matrix.
  double min_eigenvalue = -1e-10;
  /// Branches with probability below this are reported unreachable.
  double unreachable = 1e-14;
};

inline constexpr Tolerances kTol{};

/// Ordered local dimensions of a composite Hilbert space.
class Dims {
 public:
  explicit Dims(std::vector<int> factors);
  static Dims qudit(int d) { return Dims({d}); }
  static Dims uniform(int d, int count);

  const std::vector<int>& factors() const { return factors_; }
  int factor(std::size_t i) const { return factors_.at(i); }
  std::size_t subsystems() const { return factors_.size(); }
  Eigen::Index total() const { return total_; }

  Dims concat(const Dims& other) const;
  Dims select(std::span<const int> indices) const;

  bool operator==(const Dims& other) const { return factors_ == other.factors_; }
  std::string str() const;

 private:
  std::vector<int> factors_;
  Eigen::Index total_ = 1;
};

/// Normalized pure state.
class Ket {
 public:
  Ket(Vector amps, Dims dims);

  static Ket basis(int d, int label);
  static Ket basis(const Dims& dims, std::span<const int> labels);

  const Vector& amps() const { return amps_; }
  const Dims& dims() const { return dims_; }

 private:
  Vector amps_;
  Dims dims_;
};

/// Square complex matrix on a composite space.
class Operator {
 public:
  Operator(Matrix mat, Dims dims);

  static Operator identity(const Dims& dims);

  const Matrix& mat() const { return mat_; }
  const Dims& dims() const { return dims_; }

  Operator adjoint() const { return Operator(mat_.adjoint(), dims_); }
  Operator operator*(const Operator& rhs) const;
  Operator operator*(Complex scale) const { return Operator(mat_ * scale, dims_); }

  bool is_unitary(double tol = kTol.structural) const;
  bool is_hermitian(double tol = kTol.structural) const;

 private:
  Matrix mat_;
  Dims dims_;
};

/// Hermitian, unit-trace operator. Construction checks Hermiticity and
/// trace; positivity is checked by `checked()` or on demand, because
/// outputs of CPTP maps applied to valid states are positive by
/// construction.
class DensityMatrix {
 public:
  DensityMatrix(Matrix mat, Dims dims);

  /// Full validation including the eigenvalue bound.
  static DensityMatrix checked(Matrix mat, Dims dims);
  static DensityMatrix pure(const Ket& ket);
  static DensityMatrix maximally_mixed(const Dims& dims);

  const Matrix& mat() const { return mat_; }
  const Dims& dims() const { return dims_; }

  double min_eigenvalue() const;
  bool is_positive(double tol = kTol.min_eigenvalue) const {
    return min_eigenvalue() >= tol;
  }

 private:
  Matrix mat_;
  Dims dims_;
};

Ket tensor(const Ket& a, const Ket& b);
Operator tensor(const Operator& a, const Operator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Kronecker product of raw matrices, first operand is the major index.
Matrix kron(const Matrix& a, const Matrix& b);

/// Reduced state on `keep` (subsystem indices, any order; output keeps the
/// original subsystem order). Throws std::out_of_range on a bad index.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);

/// Unnormalized state of the complement of `measured` after projecting
/// those subsystems onto the pure state `v`:
/// Tr_measured[(|v><v| (x) I) rho].
Matrix conditional_state(const Matrix& rho, const Dims& dims,
                         std::vector<int> measured, const Vector& v);

struct MeasurementBranch {
  double probability = 0.0;
  /// Empty when the branch is unreachable.
  std::optional<DensityMatrix> state;
};

/// Projective measurement. Projectors must be Hermitian, idempotent, and
/// sum to identity within the physical tolerance; throws
/// std::invalid_argument otherwise.
std::vector<MeasurementBranch> projective_measure(
    const DensityMatrix& rho, std::span<const Operator> projectors);

/// K rho K^dagger. Monomial K (one nonzero per row and column, e.g. Weyl
/// operators and their lifts) is applied in O(n^2).
Matrix sandwich(const Matrix& k, const Matrix& rho);

/// Matrix product with the same monomial fast path as `sandwich`.
Matrix product(const Matrix& a, const Matrix& b);

/// Re <psi| rho |psi>.
double overlap(const Ket& psi, const Matrix& rho);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// (1/sqrt(d)) sum_k |k>|k>.
Ket maximally_entangled(int d);

/// Hermitian traceless generator of su(d), normalized to Tr(G^2) = 1.
struct Generator {
  enum class Kind { kDiagonal, kSymmetric, kAntisymmetric };
  Kind kind;
  /// kDiagonal: `j` is the level m in 1..d-1 and `u` is unused (-1).
  /// Off-diagonal kinds: basis labels 0 <= j < u <= d-1.
  int j;
  int u;
  Operator op;
};

/// d-1 diagonal, d(d-1)/2 symmetric and d(d-1)/2 antisymmetric generators.
std::vector<Generator> gell_mann_generators(int d);

/// |row><col| rebuilt from the generator set. The diagonal case uses the
/// coefficient 1/sqrt(m(m+1)) on each higher diagonal generator.
Matrix matrix_unit_from_generators(int d, int row, int col);

/// Diagonal inversion with the single prefactor 1/sqrt(j(j-1)) applied to
/// the whole bracket, `j` being the 1-based label. Defined for j >= 2.
Matrix diagonal_unit_single_prefactor(int d, int one_based_j);

struct EprDecomposition {
  /// Reconstruction from projection coefficients.
  DensityMatrix reconstruction;
  /// Frobenius residual of the projection reconstruction.
  double projection_residual;
  /// Frobenius residual of I/d^2 + (1/d) sum_G G (x) G.
  double uniform_coefficient_residual;
  /// Projection coefficient Tr[(G (x) G) rho] / Tr[G^2]^2 per generator,
  /// aligned with gell_mann_generators(d).
  std::vector<double> coefficients;
};

EprDecomposition epr_density_decomposition(int d);

}  // namespace qudit
