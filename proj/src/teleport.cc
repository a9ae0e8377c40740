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

#include "qudit/teleport.h"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "qudit/gates.h"

namespace qudit {

namespace {

int mod(int a, int d) { return ((a % d) + d) % d; }

Complex omega_pow(int d, int k) { return std::polar(1.0, 2.0 * std::numbers::pi * mod(k, d) / d); }

void check_pair(const Ket& psi, const DensityMatrix& shared) {
  if (psi.dims().subsystems() != 1) throw std::invalid_argument("teleported state must be a single qudit");
  const int d = psi.dims().factor(0);
  if (!(shared.dims() == Dims::uniform(d, 2))) {
    throw std::invalid_argument("shared state must be two qudits of dimension " + std::to_string(d));
  }
}

// Builds the outcome record for an unnormalized receiver state.
OutcomeRecord corrected_record(int y, int z, const Matrix& receiver, int d, Matrix& rho_tau) {
  const Correction c = correction_map(d)[static_cast<std::size_t>(y * d + z)];
  const Matrix corrected = sandwich(correction_unitary(d, c.v, c.w).mat(), receiver);
  rho_tau += corrected;
  OutcomeRecord rec{y, z, receiver.trace().real(), std::nullopt};
  if (rec.probability > kTol.unreachable) {
    Matrix m = corrected / rec.probability;
    rec.corrected_state.emplace((m + m.adjoint()) / 2.0, Dims::qudit(d));
  }
  return rec;
}

}  // namespace

Ket epr_pure(int d) { return maximally_entangled(d); }

BellBasis::BellBasis(int d) : d_(d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  const Dims pair = Dims::uniform(d, 2);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  vectors_.reserve(static_cast<std::size_t>(d) * d);
  for (int y = 0; y < d; ++y) {
    for (int z = 0; z < d; ++z) {
      Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
      for (int k = 0; k < d; ++k) v(mod(k + z, d) * d + k) = s * omega_pow(d, y * k);
      vectors_.emplace_back(std::move(v), pair);
    }
  }
}

Vector BellBasis::inversion(int s, int t) const {
  if (s < 0 || t < 0 || s >= d_ || t >= d_) throw std::out_of_range("basis label");
  Vector out = Vector::Zero(static_cast<Eigen::Index>(d_) * d_);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d_));
  for (int y = 0; y < d_; ++y) out += norm * omega_pow(d_, -y * t) * vector(y, mod(s - t, d_)).amps();
  return out;
}

BellBasis bell_basis(int d) { return BellBasis(d); }

Operator correction_unitary(int d, int v, int w) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (v < 0 || w < 0 || v >= d || w >= d) throw std::out_of_range("correction indices must lie in 0..d-1");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, mod(k + w, d)) = omega_pow(d, v * k);
  return Operator(std::move(m), Dims::qudit(d));
}

const std::vector<Correction>& correction_map(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<Correction>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(d); it != cache.end()) return it->second;

  const BellBasis basis(d);
  const double step = 2.0 * std::numbers::pi / d;
  std::vector<Correction> map;
  map.reserve(static_cast<std::size_t>(d) * d);
  for (int y = 0; y < d; ++y) {
    for (int z = 0; z < d; ++z) {
      // Over |Phi+> the receiver holds R psi with R = M^dagger / sqrt(d), M the
      // Bell vector reshaped to d x d; the correction must be proportional
      // to M.
      const Vector& bv = basis.vector(y, z).amps();
      Matrix target(d, d);
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) target(j, k) = bv(j * d + k);
      }
      int w = -1;
      for (int c = 0; c < d; ++c) {
        if (std::abs(target(0, c)) > kTol.physical) w = c;
      }
      if (w < 0) throw std::logic_error("correction calibration found no support");
      target /= target(0, w);
      const double arg = std::arg(target(1, mod(1 + w, d)));
      const int v = mod(static_cast<int>(std::lround(arg / step)), d);
      const Operator u = correction_unitary(d, v, w);
      if ((u.mat() - target).cwiseAbs().maxCoeff() > kTol.physical) {
        throw std::logic_error("outcome has no matching correction unitary");
      }
      map.push_back({v, w});
    }
  }
  return cache.emplace(d, std::move(map)).first->second;
}

TeleportResult teleport(const Ket& psi, const DensityMatrix& shared) {
  check_pair(psi, shared);
  const int d = psi.dims().factor(0);
  const BellBasis basis(d);
  Matrix rho_tau = Matrix::Zero(d, d);
  std::vector<OutcomeRecord> outcomes;
  outcomes.reserve(static_cast<std::size_t>(d) * d);
  const Vector& amps = psi.amps();
  for (int y = 0; y < d; ++y) {
    for (int z = 0; z < d; ++z) {
      const Vector& bv = basis.vector(y, z).amps();
      Vector sender(d);
      for (int a = 0; a < d; ++a) {
        Complex acc = 0.0;
        for (int j = 0; j < d; ++j) acc += bv(j * d + a) * std::conj(amps(j));
        sender(a) = acc;
      }
      const Matrix receiver = conditional_state(shared.mat(), shared.dims(), {0}, sender);
      outcomes.push_back(corrected_record(y, z, receiver, d, rho_tau));
    }
  }
  rho_tau = (rho_tau + rho_tau.adjoint()).eval() / 2.0;
  DensityMatrix tau(std::move(rho_tau), Dims::qudit(d));
  const double fidelity = overlap(psi, tau.mat());
  return TeleportResult{std::move(outcomes), std::move(tau), fidelity};
}

TeleportResult teleport_gate_level(const Ket& psi, const DensityMatrix& shared) {
  check_pair(psi, shared);
  const int d = psi.dims().factor(0);
  const Dims three = Dims::uniform(d, 3);
  const Matrix id = Matrix::Identity(d, d);
  Matrix state = kron(psi.amps() * psi.amps().adjoint(), shared.mat());
  state = sandwich(kron(build({GateKind::kCnotLeft, d}).mat(), id), state);
  state = sandwich(kron(kron(fourier(d).mat().adjoint(), id), id), state);

  std::vector<OutcomeRecord> outcomes(static_cast<std::size_t>(d) * d);
  Matrix rho_tau = Matrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const int labels[] = {m, n};
      const Ket readout = Ket::basis(Dims::uniform(d, 2), labels);
      const Matrix receiver = conditional_state(state, three, {0, 1}, readout.amps());
      // The readout (m, n) corresponds to Bell outcome (y, z) = (m, -n).
      const int y = m;
      const int z = mod(-n, d);
      outcomes[static_cast<std::size_t>(y * d + z)] = corrected_record(y, z, receiver, d, rho_tau);
    }
  }
  rho_tau = (rho_tau + rho_tau.adjoint()).eval() / 2.0;
  DensityMatrix tau(std::move(rho_tau), Dims::qudit(d));
  const double fidelity = overlap(psi, tau.mat());
  return TeleportResult{std::move(outcomes), std::move(tau), fidelity};
}

Ket haar_random_ket(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(d);
  for (int k = 0; k < d; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  v.normalize();
  return Ket(std::move(v), Dims::qudit(d));
}

DensityMatrix random_density_matrix(const Dims& dims, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto n = dims.total();
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix((rho + rho.adjoint()) / 2.0, dims);
}

double entanglement_fidelity(const DensityMatrix& shared) {
  const int d = shared.dims().factor(0);
  return overlap(maximally_entangled(d), shared.mat());
}

double average_fidelity_from_entanglement(int d, double f_e) { return (d * f_e + 1.0) / (d + 1.0); }

AverageFidelity average_fidelity_sim(const DensityMatrix& shared, int n_samples,
                                     std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const int d = shared.dims().factor(0);
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double f = teleport(haar_random_ket(d, rng), shared).fidelity;
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / n_samples;
  double stderr_ = 0.0;
  if (n_samples > 1) {
    const double var = std::max(0.0, (sum_sq - n_samples * mean * mean) / (n_samples - 1));
    stderr_ = std::sqrt(var / n_samples);
  }
  return {mean, stderr_, average_fidelity_from_entanglement(d, entanglement_fidelity(shared))};
}

double fidelity_formula_conditional(int d, double p, double q) {
  const double pq = p * q;
  if (pq == 1.0) throw std::domain_error("conditional fidelity formula is singular at pq = 1");
  return (d - d * p - d * q + pq + 1.0) / ((1.0 - pq) * (d + 1.0));
}

AverageFormula fidelity_formula_average(int d, double p, double q) {
  const double pq = p * q;
  AverageFormula out{(d - d * p - d * q + static_cast<double>(d) * d * pq + 1.0) / (d + 1.0), NAN};
  if (pq != 1.0) out.from_conditional_formula = average_from_conditional(p, q, fidelity_formula_conditional(d, p, q));
  return out;
}

double average_from_conditional(double p, double q, double f_plus) {
  return p * q + (1.0 - p * q) * f_plus;
}

BlockFormulaResult rho_tau_blocks(const DensityMatrix& rho_psi, const DensityMatrix& shared,
                                  OutcomeClass outcome_class) {
  const int d = rho_psi.dims().factor(0);
  if (rho_psi.dims().subsystems() != 1 || !(shared.dims() == Dims::uniform(d, 2))) {
    throw std::invalid_argument("rho_tau_blocks dimension mismatch");
  }
  const auto block = [&](int v, int u) { return shared.mat().block(v * d, u * d, d, d); };
  Matrix diag = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) diag += rho_psi.mat()(k, k) * block(k, k);
  Matrix off = Matrix::Zero(d, d);
  for (int v = 0; v < d; ++v) {
    for (int u = v + 1; u < d; ++u) off += rho_psi.mat()(v, u) * block(v, u);
  }
  const double sign = outcome_class == OutcomeClass::kDiagonal ? 1.0 : -1.0;
  Matrix rho = static_cast<double>(d) * (diag + sign * off);
  const double trace = rho.trace().real();
  return {std::move(rho), trace};
}

}  // namespace qudit
