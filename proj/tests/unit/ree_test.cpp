// Copyright 2026 The qre Authors
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


#include <chrono>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qre/presets.hpp"
#include "qre/quantum.hpp"
#include "qre/random.hpp"
#include "qre/ree.hpp"

namespace qre {
namespace {

/// For pure states E equals the entropy of either marginal.
double reduced_entropy(const DensityMatrix& pure) { return von_neumann_entropy(partial_trace(pure, {0})); }

DensityMatrix bell_diagonal(const std::vector<double>& w) {
  const Matrix b = bell_basis();
  return DensityMatrix({2, 2}, b * RealVector::Map(w.data(), 4).cast<Complex>().asDiagonal() * b.adjoint());
}

void expect_result_invariants(const DensityMatrix& sigma, const ReeResult& r) {
  EXPECT_GE(r.value, -1e-9);
  EXPECT_LE(max_abs_diff(r.closest_state.matrix(), assemble_density(r.certificate).matrix()), 1e-10);
  EXPECT_NEAR(r.value, quantum_relative_entropy(sigma, r.closest_state), 1e-9);
  EXPECT_TRUE(r.certificate.fully_separable());
}

OptimizerBudget light_budget(std::uint64_t seed = 0) {
  OptimizerBudget b = OptimizerBudget::entanglement_defaults();
  b.restarts = 12;
  b.seed = seed;
  return b;
}

TEST(ReeObjective, GradientMatchesFiniteDifferences) {
  Rng rng(6);
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}}) {
    const DensityMatrix sigma = random_density(dims, rng);
    const detail::ProductEnsembleObjective obj(sigma, sigma.dim() * sigma.dim());
    const Eigen::VectorXd x = obj.random_point(rng);
    Eigen::VectorXd g(x.size());
    obj(x, g);
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const double fd = (obj.value(xp) - obj.value(xm)) / (2 * h);
      EXPECT_NEAR(g(i), fd, 1e-6 * std::max(1.0, std::abs(fd))) << i;
    }
  }
}

TEST(Ree, ProductStateIsZero) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  const DensityMatrix sigma({2, 2}, m);
  const ReeResult r = relative_entropy_of_entanglement(sigma);
  EXPECT_NEAR(r.value, 0.0, 1e-6);
  expect_result_invariants(sigma, r);
}

TEST(Ree, BellState) {
  const auto sigma = presets::bell_state().density();
  const ReeResult r = relative_entropy_of_entanglement(sigma);
  EXPECT_NEAR(r.value, std::log(2.0), 1e-3);
  EXPECT_NEAR(r.value, reduced_entropy(sigma), 1e-3);
  EXPECT_TRUE(r.converged);
  expect_result_invariants(sigma, r);
}

TEST(Ree, SchmidtState) {
  const auto sigma = presets::schmidt_state(std::numbers::pi / 6).density();
  const double oracle = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  EXPECT_NEAR(oracle, 0.562335, 5e-7);
  EXPECT_NEAR(reduced_entropy(sigma), oracle, 1e-12);
  const ReeResult r = relative_entropy_of_entanglement(sigma);
  EXPECT_NEAR(r.value, oracle, 2e-3);
  expect_result_invariants(sigma, r);
}

TEST(Ree, WernerAtThreshold) {
  const auto sigma = presets::werner(0.5);
  const ReeResult r = relative_entropy_of_entanglement(sigma);
  EXPECT_LE(r.value, 1e-4);
  expect_result_invariants(sigma, r);
}

TEST(Ree, EntangledWernerIsPositive) {
  const auto sigma = presets::werner(0.8);
  const ReeResult r = relative_entropy_of_entanglement(sigma);
  EXPECT_GT(r.value, 0.1);
  EXPECT_LE(r.value, ree_oracle_bell_diagonal(sigma, 10000) + 1e-9);
}

TEST(Ree, UnsupportedDims) {
  EXPECT_THROW(relative_entropy_of_entanglement(presets::ghz(3).density()), UnsupportedError);
  EXPECT_THROW(relative_entropy_of_entanglement(DensityMatrix::maximally_mixed({2, 4})), UnsupportedError);
  EXPECT_THROW(relative_entropy_of_entanglement(DensityMatrix::maximally_mixed({4})), UnsupportedError);
}

TEST(Ree, QubitQutritPureState) {
  Rng rng(31);
  const auto sigma = random_pure_state({2, 3}, rng).density();
  const ReeResult r = relative_entropy_of_entanglement(sigma);
  EXPECT_NEAR(r.value, reduced_entropy(sigma), 2e-3);
  expect_result_invariants(sigma, r);
}

TEST(Ree, QutritPairWithinTimeBudget) {
  Vector v = Vector::Zero(9);
  for (int i = 0; i < 3; ++i) v(4 * i) = 1.0;
  const auto sigma = PureState::normalized({3, 3}, v).density();
  const auto start = std::chrono::steady_clock::now();
  const ReeResult r = relative_entropy_of_entanglement(sigma);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_NEAR(r.value, std::log(3.0), 2e-3);
  EXPECT_LE(secs, 30.0);
  expect_result_invariants(sigma, r);
}

TEST(Ree, IndependentOfWorkerCount) {
  const auto sigma = presets::werner(0.7);
  OptimizerBudget one = light_budget(3), four = light_budget(3);
  four.workers = 4;
  const ReeResult a = relative_entropy_of_entanglement(sigma, one);
  const ReeResult b = relative_entropy_of_entanglement(sigma, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(max_abs_diff(a.closest_state.matrix(), b.closest_state.matrix()), 0.0);
}

TEST(EntanglementConfusion, Examples) {
  EXPECT_NEAR(entanglement_confusion_probability(presets::classical_mixture(), 1), 1.0, 1e-4);
  EXPECT_NEAR(entanglement_confusion_probability(presets::classical_mixture(), 50), 1.0, 1e-4);
  const auto bell = presets::bell_state().density();
  EXPECT_NEAR(entanglement_confusion_probability(bell, 1), 0.5, 1e-3);
  double previous = 1.0;
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const double p = entanglement_confusion_probability(presets::werner(0.75), n, light_budget());
    EXPECT_LE(p, previous);
    previous = p;
  }
}

TEST(BellOracle, Examples) {
  EXPECT_NEAR(ree_oracle_bell_diagonal(DensityMatrix::maximally_mixed({2, 2}), 100), 0.0, 1e-12);
  const auto bell = presets::bell_state().density();
  double previous = INFINITY;
  for (std::size_t n : {10u, 1000u, 1000000u}) {
    const double v = ree_oracle_bell_diagonal(bell, n);
    EXPECT_GE(v, std::log(2.0) - 1e-12);
    EXPECT_LE(v, previous);
    previous = v;
  }
  EXPECT_LE(previous - std::log(2.0), 5e-3);
}

TEST(BellOracle, CertificateAssemblesToCandidate) {
  const auto sigma = bell_diagonal({0.6, 0.2, 0.15, 0.05});
  const BellOracleResult r = bell_diagonal_oracle(sigma, 2000);
  EXPECT_NEAR(quantum_relative_entropy(sigma, assemble_density(r.certificate)), r.value, 1e-9);
  EXPECT_TRUE(ppt_test(assemble_density(r.certificate)).is_ppt);
}

TEST(BellOracle, RejectsOtherStates) {
  EXPECT_THROW(ree_oracle_bell_diagonal(presets::schmidt_state(0.3).density(), 10), DomainError);
  EXPECT_THROW(ree_oracle_bell_diagonal(DensityMatrix::maximally_mixed({2, 3}), 10), DomainError);
  EXPECT_THROW(ree_oracle_bell_diagonal(presets::bell_state().density(), 0), DomainError);
}

TEST(BellOracle, OptimizerNeverLoses) {
  std::vector<DensityMatrix> fixtures{presets::bell_state().density(), presets::bell_state(true).density(),
                                      presets::werner(0.6), presets::werner(0.95)};
  Rng rng(17);
  for (int k = 0; k < 4; ++k) fixtures.push_back(bell_diagonal(random_simplex(4, rng)));
  for (const auto& sigma : fixtures) {
    const double oracle = ree_oracle_bell_diagonal(sigma, 20000);
    EXPECT_LE(relative_entropy_of_entanglement(sigma, light_budget()).value, oracle + 1e-9);
  }
}

// Properties over seeded random inputs.

TEST(ReeProperties, UpperBoundConsistency) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    const DensityMatrix sigma = random_density({2, 2}, rng);
    const ReeResult r = relative_entropy_of_entanglement(sigma, light_budget(s));
    expect_result_invariants(sigma, r);
    for (std::uint64_t k = 0; k < 10; ++k) {
      const auto rho0 = assemble_density(random_separable({2, 2}, 1 + k % 6, 100 * s + k));
      EXPECT_LE(r.value, quantum_relative_entropy(sigma, rho0) + 1e-9) << s << " " << k;
    }
  }
}

TEST(ReeProperties, SeparableStatesVanish) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sigma = assemble_density(random_separable({2, 2}, 1 + seed % 4, 300 + seed));
    EXPECT_LE(relative_entropy_of_entanglement(sigma).value, 1e-4) << seed;
  }
}

TEST(ReeProperties, LocalUnitaryInvariance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(40 + seed);
    const DensityMatrix sigma = random_density({2, 2}, rng, 2);
    const Matrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
    const double e = relative_entropy_of_entanglement(sigma).value;
    const double e_rot = relative_entropy_of_entanglement(conjugate(sigma, u)).value;
    EXPECT_NEAR(e, e_rot, 2e-3) << seed;
  }
}

TEST(ReeProperties, PureStatesMatchReducedEntropy) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(60 + seed);
    const auto sigma = random_pure_state({2, 2}, rng).density();
    EXPECT_NEAR(relative_entropy_of_entanglement(sigma).value, reduced_entropy(sigma), 2e-3) << seed;
  }
}

}  // namespace
}  // namespace qre
