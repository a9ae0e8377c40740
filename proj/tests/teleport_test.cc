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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qudit/gates.h"
#include "qudit/quantum_switch.h"
#include "test_util.h"

namespace qudit {
namespace {

using testing::max_abs;

Complex omega(int d, int k) { return std::polar(1.0, 2.0 * std::numbers::pi * k / d); }

/// Complete set of mutually unbiased bases for d = 2 or an odd prime; the
/// uniform average over these d(d + 1) states is a 2-design.
std::vector<Ket> mub_states(int d) {
  std::vector<Ket> out;
  for (int k = 0; k < d; ++k) out.push_back(Ket::basis(d, k));
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int b = 0; b < d; ++b) {
    for (int m = 0; m < d; ++m) {
      Vector v(d);
      for (int j = 0; j < d; ++j) {
        if (d == 2) {
          v(j) = s * std::pow(Complex(0, 1), b * j) * omega(2, m * j);
        } else {
          v(j) = s * omega(d, (b * j * j + m * j) % d);
        }
      }
      out.emplace_back(v, Dims::qudit(d));
    }
  }
  return out;
}

double design_average_fidelity(const DensityMatrix& shared) {
  const int d = shared.dims().factor(0);
  double sum = 0.0;
  const auto states = mub_states(d);
  for (const auto& psi : states) sum += teleport(psi, shared).fidelity;
  return sum / static_cast<double>(states.size());
}

TEST(EprTest, QubitBellPair) {
  const Vector v = epr_pure(2).amps();
  EXPECT_NEAR(std::abs(v(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(3) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(1)) + std::abs(v(2)), 0.0, 1e-15);
}

TEST(EprTest, ReducedStatesAreMaximallyMixed) {
  for (int d = 2; d <= 6; ++d) {
    const auto rho = DensityMatrix::pure(epr_pure(d));
    EXPECT_LT(max_abs(partial_trace(rho, {1}).mat() - Matrix::Identity(d, d) / d), 1e-15);
    EXPECT_NEAR(epr_pure(d).amps().squaredNorm(), 1.0, 1e-15);
  }
}

TEST(BellBasisTest, ZeroLabelIsEpr) {
  for (int d = 2; d <= 6; ++d) EXPECT_LT((BellBasis(d).vector(0, 0).amps() - epr_pure(d).amps()).norm(), 1e-15);
}

TEST(BellBasisTest, GramIsIdentity) {
  for (int d = 2; d <= 7; ++d) {
    const auto basis = bell_basis(d);
    Matrix g(d * d, d * d);
    for (int i = 0; i < d * d; ++i)
      for (int j = 0; j < d * d; ++j) g(i, j) = basis.vectors()[i].amps().dot(basis.vectors()[j].amps());
    EXPECT_LT(max_abs(g - Matrix::Identity(d * d, d * d)), 1e-12);
  }
}

TEST(BellBasisTest, QubitCaseIsTheFourBellStates) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Vector> bell(4, Vector::Zero(4));
  bell[0](0) = r, bell[0](3) = r;
  bell[1](0) = r, bell[1](3) = -r;
  bell[2](1) = r, bell[2](2) = r;
  bell[3](1) = r, bell[3](2) = -r;
  const auto basis = bell_basis(2);
  for (const auto& v : basis.vectors()) {
    int matches = 0;
    for (const auto& b : bell) matches += std::abs(std::abs(b.dot(v.amps())) - 1.0) < 1e-14;
    EXPECT_EQ(matches, 1);
  }
}

TEST(BellBasisTest, InversionRecoversProductBasis) {
  for (int d = 2; d <= 5; ++d) {
    const BellBasis basis(d);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        Vector st = Vector::Zero(d * d);
        st(s * d + t) = 1.0;
        EXPECT_LT((basis.inversion(s, t) - st).norm(), 1e-14);
      }
  }
  EXPECT_THROW(BellBasis(3).inversion(3, 0), std::out_of_range);
}

TEST(CorrectionTest, ZeroLabelIsIdentity) {
  EXPECT_LT(max_abs(correction_unitary(4, 0, 0).mat() - Matrix::Identity(4, 4)), 1e-15);
}

TEST(CorrectionTest, QubitCorrectionsArePaulis) {
  const Matrix x = pauli_x(2).mat(), z = pauli_z(2).mat();
  const std::vector<Matrix> paulis{Matrix::Identity(2, 2), x, z, x * z};
  for (int v = 0; v < 2; ++v)
    for (int w = 0; w < 2; ++w) {
      const Matrix u = correction_unitary(2, v, w).mat();
      int matches = 0;
      for (const auto& p : paulis) matches += std::abs(std::abs((p.adjoint() * u).trace()) - 2.0) < 1e-14;
      EXPECT_EQ(matches, 1);
    }
}

TEST(CorrectionTest, TraceOrthogonality) {
  EXPECT_NEAR(std::abs((correction_unitary(5, 1, 2).mat().adjoint() * correction_unitary(5, 1, 2).mat()).trace() - 5.0),
              0.0, 1e-14);
  for (int d = 2; d <= 7; ++d) {
    for (int v = 0; v < d; ++v)
      for (int w = 0; w < d; ++w)
        for (int y = 0; y < d; ++y)
          for (int z = 0; z < d; ++z) {
            const Complex tr = (correction_unitary(d, v, w).mat().adjoint() * correction_unitary(d, y, z).mat()).trace();
            EXPECT_LT(std::abs(tr - ((v == y && w == z) ? static_cast<double>(d) : 0.0)), 1e-12);
          }
  }
  EXPECT_THROW(correction_unitary(3, 3, 0), std::out_of_range);
}

TEST(CorrectionTest, CalibratedMapIsAffineInOutcome) {
  for (int d = 2; d <= 7; ++d) {
    const auto& map = correction_map(d);
    ASSERT_EQ(map.size(), static_cast<std::size_t>(d * d));
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        EXPECT_EQ(map[y * d + z].v, y);
        EXPECT_EQ(map[y * d + z].w, (d - z) % d);
      }
    EXPECT_EQ(&correction_map(d), &map);
  }
}

TEST(TeleportTest, PerfectPairIsExactWithUniformOutcomes) {
  std::mt19937_64 rng(42);
  for (int d = 2; d <= 7; ++d) {
    const auto epr = DensityMatrix::pure(epr_pure(d));
    for (int i = 0; i < 20; ++i) {
      const Ket psi = haar_random_ket(d, rng);
      const auto res = teleport(psi, epr);
      EXPECT_NEAR(res.fidelity, 1.0, 1e-10);
      ASSERT_EQ(res.per_outcome.size(), static_cast<std::size_t>(d * d));
      for (const auto& o : res.per_outcome) {
        EXPECT_NEAR(o.probability, 1.0 / (d * d), 1e-10);
        ASSERT_TRUE(o.corrected_state.has_value());
        EXPECT_NEAR(overlap(psi, o.corrected_state->mat()), 1.0, 1e-10);
      }
    }
  }
}

TEST(TeleportTest, ShiftedPairSendsOrthogonalState) {
  const int d = 3;
  const Vector corrupted = kron(Matrix::Identity(d, d), pauli_x(d).mat()) * epr_pure(d).amps();
  const auto shared = DensityMatrix::pure(Ket(corrupted, Dims::uniform(d, 2)));
  EXPECT_NEAR(entanglement_fidelity(shared), 0.0, 1e-15);
  EXPECT_NEAR(teleport(Ket::basis(d, 0), shared).fidelity, 0.0, 1e-12);
}

TEST(TeleportTest, MaximallyMixedPairGivesInverseDimension) {
  std::mt19937_64 rng(8);
  for (int d = 2; d <= 6; ++d) {
    const auto mixed = DensityMatrix::maximally_mixed(Dims::uniform(d, 2));
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(teleport(haar_random_ket(d, rng), mixed).fidelity, 1.0 / d, 1e-12);
    const auto avg = average_fidelity_sim(mixed, 50, 1);
    EXPECT_NEAR(avg.closed_form, 1.0 / d, 1e-12);
    EXPECT_LE(std::abs(avg.monte_carlo - avg.closed_form), std::max(3.0 * avg.standard_error, 1e-12));
  }
}

TEST(TeleportTest, GateLevelMatchesBellProjection) {
  std::mt19937_64 rng(13);
  for (int d = 2; d <= 4; ++d) {
    for (int i = 0; i < 3; ++i) {
      const Ket psi = haar_random_ket(d, rng);
      for (const auto& shared : {DensityMatrix::pure(epr_pure(d)), random_density_matrix(Dims::uniform(d, 2), rng)}) {
        const auto a = teleport(psi, shared);
        const auto b = teleport_gate_level(psi, shared);
        EXPECT_LT(max_abs(a.rho_tau.mat() - b.rho_tau.mat()), 1e-12);
        for (std::size_t k = 0; k < a.per_outcome.size(); ++k) {
          EXPECT_NEAR(a.per_outcome[k].probability, b.per_outcome[k].probability, 1e-12);
        }
      }
    }
  }
}

TEST(TeleportTest, RejectsMismatchedDimensions) {
  EXPECT_THROW(teleport(Ket::basis(2, 0), DensityMatrix::pure(epr_pure(3))), std::invalid_argument);
}

TEST(AverageFidelityTest, EntanglementRelationMatchesTwoDesign) {
  std::mt19937_64 rng(21);
  for (int d : {2, 3, 5}) {
    for (int i = 0; i < 3; ++i) {
      const auto shared = random_density_matrix(Dims::uniform(d, 2), rng);
      EXPECT_NEAR(design_average_fidelity(shared),
                  average_fidelity_from_entanglement(d, entanglement_fidelity(shared)), 1e-12);
    }
    const auto ct = distribute_epr_classical(d, 0.3, 0.6);
    EXPECT_NEAR(design_average_fidelity(ct), average_fidelity_from_entanglement(d, (1 - 0.3) * (1 - 0.6)), 1e-12);
  }
}

TEST(AverageFidelityTest, MonteCarloAgreesWithinThreeStandardErrors) {
  // At p = q = 0.5 the qubit pair is maximally mixed, so every input scores 1/2.
  const auto half = average_fidelity_sim(distribute_epr_classical(2, 0.5, 0.5), 200, 0);
  EXPECT_NEAR(half.closed_form, 0.5, 1e-12);
  EXPECT_NEAR(half.monte_carlo, 0.5, 1e-12);
  const auto ct = distribute_epr_classical(2, 0.3, 0.6);
  const auto avg = average_fidelity_sim(ct, 2000, 0);
  EXPECT_GT(avg.standard_error, 0.0);
  EXPECT_LE(std::abs(avg.monte_carlo - avg.closed_form), 3.0 * avg.standard_error);
  std::mt19937_64 rng(4);
  const auto shared = random_density_matrix(Dims::uniform(3, 2), rng);
  const auto r = average_fidelity_sim(shared, 2000, 3);
  EXPECT_LE(std::abs(r.monte_carlo - r.closed_form), 3.0 * r.standard_error);
}

TEST(AverageFidelityTest, DeterministicUnderSeed) {
  const auto ct = distribute_epr_classical(3, 0.2, 0.4);
  const auto a = average_fidelity_sim(ct, 100, 77);
  const auto b = average_fidelity_sim(ct, 100, 77);
  EXPECT_EQ(a.monte_carlo, b.monte_carlo);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_NE(a.monte_carlo, average_fidelity_sim(ct, 100, 78).monte_carlo);
  EXPECT_THROW(average_fidelity_sim(ct, 0, 1), std::invalid_argument);
}

TEST(AverageFidelityTest, PerfectPairIsOne) {
  EXPECT_DOUBLE_EQ(average_fidelity_from_entanglement(4, 1.0), 1.0);
  EXPECT_NEAR(average_fidelity_sim(DensityMatrix::pure(epr_pure(3)), 10, 0).closed_form, 1.0, 1e-14);
}

TEST(FormulaTest, ConditionalValues) {
  for (int d = 2; d <= 20; ++d) EXPECT_DOUBLE_EQ(fidelity_formula_conditional(d, 0, 0), 1.0);
  EXPECT_NEAR(fidelity_formula_conditional(2, 0.5, 0.5), 1.25 / 2.25, 1e-15);
  EXPECT_NEAR(fidelity_formula_conditional(5, 0.1, 0.2), 4.52 / (0.98 * 6), 1e-15);
  EXPECT_NEAR(fidelity_formula_conditional(5, 0.1, 0.2), 0.7687, 1e-4);
  EXPECT_THROW(fidelity_formula_conditional(3, 1.0, 1.0), std::domain_error);
}

TEST(FormulaTest, AverageValues) {
  EXPECT_DOUBLE_EQ(fidelity_formula_average(7, 0, 0).closed_form, 1.0);
  EXPECT_NEAR(fidelity_formula_average(2, 0.5, 0.5).closed_form, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(fidelity_formula_average(20, 0.5, 0.5).closed_form, 101.0 / 21.0, 1e-14);
  EXPECT_NEAR(fidelity_formula_average(5, 0.5, 0.5).closed_form, 7.25 / 6.0, 1e-14);
  EXPECT_TRUE(std::isnan(fidelity_formula_average(2, 1.0, 1.0).from_conditional_formula));
  EXPECT_NEAR(fidelity_formula_average(2, 0.3, 0.7).from_conditional_formula,
              fidelity_formula_average(2, 0.3, 0.7).closed_form, 1e-14);
  EXPECT_NEAR(average_from_conditional(0.5, 0.5, 0.2), 0.25 + 0.75 * 0.2, 1e-15);
}

TEST(PipelineTest, QubitFormulasMatchSimulation) {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double p = i / 10.0, q = j / 10.0;
      const auto out = distribute_epr_switch(2, p, q);
      const double f_avg = average_fidelity_from_entanglement(2, entanglement_fidelity(out.rho_avg));
      EXPECT_NEAR(f_avg, fidelity_formula_average(2, p, q).closed_form, 1e-9);
      if (p * q < 1.0) {
        const double f_plus = average_fidelity_from_entanglement(2, entanglement_fidelity(*out.rho_plus));
        EXPECT_NEAR(f_plus, fidelity_formula_conditional(2, p, q), 1e-9);
      }
    }
  }
}

TEST(PipelineTest, QubitConditionalMatchesTwoDesignTeleportation) {
  for (double p : {0.2, 0.5, 0.8}) {
    for (double q : {0.1, 0.5}) {
      const auto out = distribute_epr_switch(2, p, q);
      EXPECT_NEAR(design_average_fidelity(*out.rho_plus), fidelity_formula_conditional(2, p, q), 1e-10);
    }
  }
}

TEST(BlockFormulaTest, PerfectPairBasisInput) {
  for (int d = 2; d <= 5; ++d) {
    const auto res = rho_tau_blocks(DensityMatrix::pure(Ket::basis(d, 0)), DensityMatrix::pure(epr_pure(d)),
                                    OutcomeClass::kDiagonal);
    EXPECT_LT(max_abs(res.rho - DensityMatrix::pure(Ket::basis(d, 0)).mat()), 1e-14);
    EXPECT_NEAR(res.trace, 1.0, 1e-14);
  }
}

TEST(BlockFormulaTest, TraceReportedOnRandomCases) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 3;
    const auto res = rho_tau_blocks(random_density_matrix(Dims::qudit(d), rng),
                                    random_density_matrix(Dims::uniform(d, 2), rng),
                                    i % 2 ? OutcomeClass::kDiagonal : OutcomeClass::kOffDiagonal);
    EXPECT_TRUE(std::isfinite(res.trace));
    EXPECT_NEAR(res.trace, res.rho.trace().real(), 1e-14);
  }
  EXPECT_THROW(rho_tau_blocks(DensityMatrix::maximally_mixed(Dims::qudit(2)),
                              DensityMatrix::maximally_mixed(Dims::uniform(3, 2)), OutcomeClass::kDiagonal),
               std::invalid_argument);
}

TEST(BlockFormulaTest, DiagonalPartAgreesWithSimulationOnPerfectPair) {
  // The diagonal sum alone reproduces the populations of the teleported state.
  std::mt19937_64 rng(19);
  const int d = 2;
  const auto rho_psi = DensityMatrix::pure(haar_random_ket(d, rng));
  const auto res = rho_tau_blocks(rho_psi, DensityMatrix::pure(epr_pure(d)), OutcomeClass::kDiagonal);
  EXPECT_LT((res.rho.diagonal() - rho_psi.mat().diagonal()).cwiseAbs().maxCoeff(), 1e-14);
}

}  // namespace
}  // namespace qudit
