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

#include "qudit/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qudit {

namespace {

// Offsets into the full index for every multi-index over `subs`. The first
// subsystem of `dims` is the most significant digit.
std::vector<Eigen::Index> subsystem_offsets(const Dims& dims,
                                            const std::vector<int>& subs) {
  const auto n = dims.subsystems();
  std::vector<Eigen::Index> stride(n, 1);
  for (std::size_t k = n; k-- > 1;) {
    stride[k - 1] = stride[k] * dims.factor(k);
  }
  std::vector<Eigen::Index> offsets{0};
  for (int s : subs) {
    std::vector<Eigen::Index> next;
    next.reserve(offsets.size() * dims.factor(s));
    for (auto base : offsets) {
      for (int i = 0; i < dims.factor(s); ++i) {
        next.push_back(base + i * stride[s]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<int> complement(const Dims& dims, const std::vector<int>& subs) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(dims.subsystems()); ++k) {
    if (std::find(subs.begin(), subs.end(), k) == subs.end()) out.push_back(k);
  }
  return out;
}

std::vector<int> normalize_subsystems(const Dims& dims, std::vector<int> subs) {
  std::sort(subs.begin(), subs.end());
  if (std::adjacent_find(subs.begin(), subs.end()) != subs.end()) {
    throw std::invalid_argument("duplicate subsystem index");
  }
  for (int s : subs) {
    if (s < 0 || s >= static_cast<int>(dims.subsystems())) {
      throw std::out_of_range("subsystem index " + std::to_string(s) +
                              " outside " + dims.str());
    }
  }
  return subs;
}

struct Monomial {
  std::vector<Eigen::Index> row_of_col;
  std::vector<Complex> value;
};

// At most one nonzero per row and column; empty columns map to row -1.
std::optional<Monomial> as_monomial(const Matrix& m) {
  const auto n = m.cols();
  if (m.rows() != n) return std::nullopt;
  Monomial out;
  out.row_of_col.assign(n, -1);
  out.value.assign(n, Complex(0.0, 0.0));
  std::vector<char> row_used(n, 0);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (m(r, c) != Complex(0.0, 0.0)) {
        if (out.row_of_col[c] >= 0 || row_used[r]) return std::nullopt;
        row_used[r] = 1;
        out.row_of_col[c] = r;
        out.value[c] = m(r, c);
      }
    }
  }
  return out;
}

}  // namespace

Dims::Dims(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("Dims needs at least one factor");
  for (int f : factors_) {
    if (f < 2) throw std::invalid_argument("local dimension must be >= 2, got " + std::to_string(f));
    total_ *= f;
  }
}

Dims Dims::uniform(int d, int count) {
  return Dims(std::vector<int>(static_cast<std::size_t>(count), d));
}

Dims Dims::concat(const Dims& other) const {
  auto f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return Dims(std::move(f));
}

Dims Dims::select(std::span<const int> indices) const {
  std::vector<int> f;
  for (int i : indices) f.push_back(factors_.at(static_cast<std::size_t>(i)));
  return Dims(std::move(f));
}

std::string Dims::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i];
  os << ']';
  return os.str();
}

Ket::Ket(Vector amps, Dims dims) : amps_(std::move(amps)), dims_(std::move(dims)) {
  if (amps_.size() != dims_.total()) {
    throw std::invalid_argument("ket length does not match " + dims_.str());
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kTol.structural) {
    throw std::invalid_argument("ket is not normalized");
  }
}

Ket Ket::basis(int d, int label) {
  const int labels[] = {label};
  return basis(Dims::qudit(d), labels);
}

Ket Ket::basis(const Dims& dims, std::span<const int> labels) {
  if (labels.size() != dims.subsystems()) {
    throw std::invalid_argument("basis label count does not match " + dims.str());
  }
  Eigen::Index index = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] < 0 || labels[k] >= dims.factor(k)) {
      throw std::out_of_range("basis label out of range");
    }
    index = index * dims.factor(k) + labels[k];
  }
  Vector v = Vector::Zero(dims.total());
  v(index) = 1.0;
  return Ket(std::move(v), dims);
}

Operator::Operator(Matrix mat, Dims dims) : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (mat_.rows() != dims_.total() || mat_.cols() != dims_.total()) {
    throw std::invalid_argument("operator shape does not match " + dims_.str());
  }
}

Operator Operator::identity(const Dims& dims) {
  return Operator(Matrix::Identity(dims.total(), dims.total()), dims);
}

Operator Operator::operator*(const Operator& rhs) const {
  if (!(dims_ == rhs.dims_)) throw std::invalid_argument("operator dims mismatch");
  return Operator(product(mat_, rhs.mat_), dims_);
}

bool Operator::is_unitary(double tol) const {
  const auto n = mat_.rows();
  return (mat_.adjoint() * mat_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_hermitian(double tol) const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(Matrix mat, Dims dims)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (mat_.rows() != dims_.total() || mat_.cols() != dims_.total()) {
    throw std::invalid_argument("density matrix shape does not match " + dims_.str());
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kTol.structural) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > kTol.structural) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
}

DensityMatrix DensityMatrix::checked(Matrix mat, Dims dims) {
  DensityMatrix rho(std::move(mat), std::move(dims));
  if (!rho.is_positive()) throw std::invalid_argument("density matrix is not positive semidefinite");
  return rho;
}

DensityMatrix DensityMatrix::pure(const Ket& ket) {
  return DensityMatrix(ket.amps() * ket.amps().adjoint(), ket.dims());
}

DensityMatrix DensityMatrix::maximally_mixed(const Dims& dims) {
  const auto n = dims.total();
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n), dims);
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix sym = (mat_ + mat_.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  const Matrix k = kron(a.amps(), b.amps());
  return Ket(k.col(0), a.dims().concat(b.dims()));
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(kron(a.mat(), b.mat()), a.dims().concat(b.dims()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.mat(), b.mat()), a.dims().concat(b.dims()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const auto& dims = rho.dims();
  keep = normalize_subsystems(dims, std::move(keep));
  if (keep.empty()) throw std::invalid_argument("partial_trace must keep at least one subsystem");
  const auto traced = complement(dims, keep);
  const auto kept_off = subsystem_offsets(dims, keep);
  const auto traced_off = subsystem_offsets(dims, traced);
  const auto n = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(n, n);
  const Matrix& m = rho.mat();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      Complex acc = 0.0;
      for (auto t : traced_off) acc += m(kept_off[a] + t, kept_off[b] + t);
      out(a, b) = acc;
    }
  }
  return DensityMatrix(std::move(out), dims.select(keep));
}

Matrix conditional_state(const Matrix& rho, const Dims& dims,
                         std::vector<int> measured, const Vector& v) {
  measured = normalize_subsystems(dims, std::move(measured));
  const auto rest = complement(dims, measured);
  const auto m_off = subsystem_offsets(dims, measured);
  const auto r_off = subsystem_offsets(dims, rest);
  if (v.size() != static_cast<Eigen::Index>(m_off.size())) {
    throw std::invalid_argument("measurement vector length mismatch");
  }
  const auto n = static_cast<Eigen::Index>(r_off.size());
  const auto mm = static_cast<Eigen::Index>(m_off.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < mm; ++i) {
    const Complex ci = std::conj(v(i));
    if (ci == Complex(0.0, 0.0)) continue;
    for (Eigen::Index j = 0; j < mm; ++j) {
      const Complex w = ci * v(j);
      if (w == Complex(0.0, 0.0)) continue;
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
          out(a, b) += w * rho(r_off[a] + m_off[i], r_off[b] + m_off[j]);
        }
      }
    }
  }
  return out;
}

std::vector<MeasurementBranch> projective_measure(
    const DensityMatrix& rho, std::span<const Operator> projectors) {
  if (projectors.empty()) throw std::invalid_argument("empty projector set");
  const auto n = rho.dims().total();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& p : projectors) {
    if (!(p.dims() == rho.dims())) throw std::invalid_argument("projector dims mismatch");
    if (!p.is_hermitian(kTol.physical)) throw std::invalid_argument("projector is not Hermitian");
    if ((p.mat() * p.mat() - p.mat()).cwiseAbs().maxCoeff() > kTol.physical) {
      throw std::invalid_argument("projector is not idempotent");
    }
    sum += p.mat();
  }
  if ((sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kTol.physical) {
    throw std::invalid_argument("projector set does not sum to identity");
  }
  std::vector<MeasurementBranch> out;
  out.reserve(projectors.size());
  for (const auto& p : projectors) {
    Matrix post = p.mat() * rho.mat() * p.mat();
    MeasurementBranch branch;
    branch.probability = post.trace().real();
    if (branch.probability > kTol.unreachable) {
      post /= branch.probability;
      post = (post + post.adjoint()).eval() / 2.0;
      branch.state.emplace(std::move(post), rho.dims());
    }
    out.push_back(std::move(branch));
  }
  return out;
}

Matrix sandwich(const Matrix& k, const Matrix& rho) {
  if (auto mono = as_monomial(k)) {
    const auto n = k.rows();
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index c2 = 0; c2 < n; ++c2) {
      const auto r2 = mono->row_of_col[c2];
      if (r2 < 0) continue;
      const Complex v2 = std::conj(mono->value[c2]);
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto r = mono->row_of_col[c];
        if (r < 0) continue;
        out(r, r2) = mono->value[c] * rho(c, c2) * v2;
      }
    }
    return out;
  }
  return k * rho * k.adjoint();
}

Matrix product(const Matrix& a, const Matrix& b) {
  if (a.rows() == a.cols() && a.cols() == b.rows() && b.rows() == b.cols()) {
    auto ma = as_monomial(a);
    if (ma) {
      if (auto mb = as_monomial(b)) {
        const auto n = a.rows();
        Matrix out = Matrix::Zero(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
          const auto mid = mb->row_of_col[c];
          if (mid < 0 || ma->row_of_col[mid] < 0) continue;
          out(ma->row_of_col[mid], c) = ma->value[mid] * mb->value[c];
        }
        return out;
      }
    }
  }
  return a * b;
}

double overlap(const Ket& psi, const Matrix& rho) {
  return (psi.amps().adjoint() * rho * psi.amps())(0, 0).real();
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

Ket maximally_entangled(int d) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  return Ket(std::move(v), Dims::uniform(d, 2));
}

std::vector<Generator> gell_mann_generators(int d) {
  const Dims dims = Dims::qudit(d);
  std::vector<Generator> out;
  out.reserve(static_cast<std::size_t>(d) * d - 1);
  for (int m = 1; m < d; ++m) {
    Matrix g = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m) * (m + 1));
    for (int u = 0; u < m; ++u) g(u, u) = norm;
    g(m, m) = -m * norm;
    out.push_back({Generator::Kind::kDiagonal, m, -1, Operator(std::move(g), dims)});
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int u = j + 1; u < d; ++u) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, u) = r;
      sym(u, j) = r;
      out.push_back({Generator::Kind::kSymmetric, j, u, Operator(std::move(sym), dims)});
      Matrix anti = Matrix::Zero(d, d);
      anti(j, u) = Complex(0.0, -r);
      anti(u, j) = Complex(0.0, r);
      out.push_back({Generator::Kind::kAntisymmetric, j, u, Operator(std::move(anti), dims)});
    }
  }
  return out;
}

namespace {

const Matrix& find_generator(const std::vector<Generator>& gens, Generator::Kind kind,
                             int j, int u) {
  for (const auto& g : gens) {
    if (g.kind == kind && g.j == j && g.u == u) return g.op.mat();
  }
  throw std::out_of_range("no such generator");
}

}  // namespace

Matrix matrix_unit_from_generators(int d, int row, int col) {
  if (row < 0 || col < 0 || row >= d || col >= d) throw std::out_of_range("matrix unit label");
  const auto gens = gell_mann_generators(d);
  using K = Generator::Kind;
  if (row == col) {
    Matrix out = Matrix::Identity(d, d) / static_cast<double>(d);
    const int j = row;
    if (j >= 1) {
      out -= (j / std::sqrt(static_cast<double>(j) * (j + 1))) *
             find_generator(gens, K::kDiagonal, j, -1);
    }
    for (int m = j + 1; m < d; ++m) {
      out += (1.0 / std::sqrt(static_cast<double>(m) * (m + 1))) *
             find_generator(gens, K::kDiagonal, m, -1);
    }
    return out;
  }
  const int j = std::min(row, col);
  const int u = std::max(row, col);
  const Complex sign = row < col ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  return (find_generator(gens, K::kSymmetric, j, u) +
          sign * find_generator(gens, K::kAntisymmetric, j, u)) /
         std::sqrt(2.0);
}

Matrix diagonal_unit_single_prefactor(int d, int one_based_j) {
  if (one_based_j < 2 || one_based_j > d) throw std::out_of_range("label must be in 2..d");
  const auto gens = gell_mann_generators(d);
  const int jj = one_based_j;
  Matrix bracket = -(jj - 1.0) * find_generator(gens, Generator::Kind::kDiagonal, jj - 1, -1);
  for (int uu = jj + 1; uu <= d; ++uu) {
    bracket += find_generator(gens, Generator::Kind::kDiagonal, uu - 1, -1);
  }
  return Matrix::Identity(d, d) / static_cast<double>(d) +
         bracket / std::sqrt(static_cast<double>(jj) * (jj - 1));
}

EprDecomposition epr_density_decomposition(int d) {
  const Ket phi = maximally_entangled(d);
  const Matrix direct = phi.amps() * phi.amps().adjoint();
  const auto n = static_cast<Eigen::Index>(d) * d;
  const auto gens = gell_mann_generators(d);

  Matrix projected = Matrix::Identity(n, n) / static_cast<double>(n);
  Matrix uniform = projected;
  std::vector<double> coefficients;
  coefficients.reserve(gens.size());
  for (const auto& g : gens) {
    const Matrix gg = kron(g.op.mat(), g.op.mat());
    const double norm = (g.op.mat() * g.op.mat()).trace().real();
    const double c = (gg * direct).trace().real() / (norm * norm);
    coefficients.push_back(c);
    projected += c * gg;
    uniform += gg / static_cast<double>(d);
  }
  const double projection_residual = frobenius_distance(projected, direct);
  const double uniform_residual = frobenius_distance(uniform, direct);
  projected = (projected + projected.adjoint()).eval() / 2.0;
  return EprDecomposition{DensityMatrix(std::move(projected), Dims::uniform(d, 2)),
                          projection_residual, uniform_residual, std::move(coefficients)};
}

}  // namespace qudit
