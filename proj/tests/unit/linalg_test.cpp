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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qre/linalg.hpp"
#include "qre/presets.hpp"
#include "qre/random.hpp"

namespace qre {
namespace {

DensityMatrix diag2(double a, double b) { return DensityMatrix::diagonal({2}, std::vector<double>{a, b}); }

Matrix random_hermitian(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

TEST(Tensor, IdentityFactors) {
  const auto half = DensityMatrix::maximally_mixed({2});
  const DensityMatrix t = tensor(half, half);
  EXPECT_EQ(t.dims(), (Dims{2, 2}));
  EXPECT_LE(max_abs_diff(t.matrix(), Matrix::Identity(4, 4) / 4.0), 1e-15);
}

TEST(Tensor, KroneckerOfDiagonals) {
  const DensityMatrix s = diag2(0.7, 0.3);
  const DensityMatrix t = tensor(s, s);
  Matrix expect = Matrix::Zero(4, 4);
  expect.diagonal() << 0.49, 0.21, 0.21, 0.09;
  EXPECT_LE(max_abs_diff(t.matrix(), expect), 1e-15);
  EXPECT_NEAR(t.matrix().trace().real(), 1.0, 1e-14);
}

TEST(Tensor, DimensionCap) {
  const auto q = DensityMatrix::maximally_mixed({2});
  EXPECT_EQ(tensor_power(q, 6).dim(), 64u);
  EXPECT_THROW(tensor_power(q, 7), UnsupportedError);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const DensityMatrix r = partial_trace(presets::bell_state().density(), {0});
  EXPECT_EQ(r.dims(), (Dims{2}));
  EXPECT_LE(max_abs_diff(r.matrix(), Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, ProductDiagonal) {
  const DensityMatrix t = tensor(diag2(0.7, 0.3), diag2(0.7, 0.3));
  EXPECT_LE(max_abs_diff(partial_trace(t, {0}).matrix(), diag2(0.7, 0.3).matrix()), 1e-15);
}

TEST(PartialTrace, ThreePartiesKeepsOrder) {
  Rng rng(11);
  const DensityMatrix a = random_density({2}, rng), b = random_density({3}, rng), c = random_density({2}, rng);
  const DensityMatrix abc = tensor(tensor(a, b), c);
  const DensityMatrix ac = partial_trace(abc, {2, 0});
  EXPECT_EQ(ac.dims(), (Dims{2, 2}));
  EXPECT_LE(max_abs_diff(ac.matrix(), tensor(a, c).matrix()), 1e-12);
  EXPECT_LE(max_abs_diff(partial_trace(abc, {1}).matrix(), b.matrix()), 1e-12);
}

TEST(PartialTrace, InvalidKeepSet) {
  const auto rho = presets::bell_state().density();
  EXPECT_THROW(partial_trace(rho, {}), DomainError);
  EXPECT_THROW(partial_trace(rho, {2}), DomainError);
  EXPECT_THROW(partial_trace(rho, {0, 0}), DomainError);
}

TEST(PartialTranspose, BellSpectrum) {
  const Matrix pt = partial_transpose(presets::bell_state().density(), 1);
  const RealVector ev = herm_eig(pt).eigenvalues;
  EXPECT_NEAR(ev(0), -0.5, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.5, 1e-12);
}

TEST(PartialTranspose, ProductStatesStayPositive) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix ab = tensor(random_density({2}, rng), random_density({3}, rng));
    for (std::size_t party : {0u, 1u}) EXPECT_GE(herm_eig(partial_transpose(ab, party)).eigenvalues(0), -1e-12);
  }
}

TEST(PartialTranspose, RequiresTwoParties) {
  const auto ghz = presets::ghz(3).density();
  EXPECT_THROW(partial_transpose(ghz, 0), UnsupportedError);
  EXPECT_THROW(partial_transpose(presets::bell_state().density(), 2), DomainError);
}

TEST(HermEig, Examples) {
  const HermitianEig id = herm_eig(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(id.eigenvalues(i), 1.0, 1e-15);

  const HermitianEig d = herm_eig(diag2(0.3, 0.7).matrix());
  EXPECT_NEAR(d.eigenvalues(0), 0.3, 1e-15);
  EXPECT_NEAR(d.eigenvalues(1), 0.7, 1e-15);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.eigenvectors(1, 1)), 1.0, 1e-15);

  const RealVector bell = herm_eig(presets::bell_state().density().matrix()).eigenvalues;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(bell(i), 0.0, 1e-15);
  EXPECT_NEAR(bell(3), 1.0, 1e-15);
}

TEST(HermEig, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(herm_eig(m), DomainError);
  EXPECT_THROW(herm_eig(Matrix::Zero(2, 3)), DomainError);
}

TEST(HermEig, RandomReconstruction) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::size_t d = 2 + seed % 31;
    const Matrix h = random_hermitian(d, rng);
    const HermitianEig e = herm_eig(h);
    const Matrix v = e.eigenvectors;
    EXPECT_LE(max_abs_diff(v * e.eigenvalues.asDiagonal() * v.adjoint(), h), 1e-10);
    EXPECT_LE(max_abs_diff(v.adjoint() * v, Matrix::Identity(v.rows(), v.cols())), 1e-10);
    for (Eigen::Index i = 1; i < e.eigenvalues.size(); ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
  }
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(von_neumann_entropy(presets::bell_state().density()), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed({2})), std::log(2.0), 1e-14);
  // -0.7 ln 0.7 - 0.3 ln 0.3
  EXPECT_NEAR(von_neumann_entropy(diag2(0.7, 0.3)), 0.6108643020548935, 1e-14);
}

TEST(Entropy, BoundedByLogDimension) {
  Rng rng(2);
  for (std::size_t d : {2u, 3u, 5u, 8u}) {
    const double s = von_neumann_entropy(random_density({d}, rng));
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, std::log(static_cast<double>(d)) + 1e-12);
  }
}

TEST(DensityMatrixValidation, NamesTheViolatedInvariant) {
  auto invariant_of = [](Dims dims, Matrix m) {
    try {
      DensityMatrix rho(std::move(dims), std::move(m));
    } catch (const ValidationError& e) {
      return e.invariant();
    }
    return std::string("none");
  };
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  EXPECT_EQ(invariant_of({2}, m), "none");
  EXPECT_EQ(invariant_of({3}, m), "dims");
  EXPECT_EQ(invariant_of({2}, 2.0 * m), "unit_trace");
  Matrix nh = m;
  nh(0, 1) = 0.1;
  EXPECT_EQ(invariant_of({2}, nh), "hermitian");
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_EQ(invariant_of({2}, neg), "psd");
  EXPECT_THROW(DensityMatrix::maximally_mixed({65}), UnsupportedError);
  EXPECT_THROW(DensityMatrix::maximally_mixed({2, 0}), ValidationError);
}

TEST(DensityMatrixValidation, ClampToleratesRoundOff) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 + 5e-11;
  m(1, 1) = -5e-11;
  const DensityMatrix rho({2}, m);
  EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-9);
  RealVector bad(2);
  bad << -2e-10, 1.0;
  EXPECT_THROW(clamp_spectrum(bad), ValidationError);
}

TEST(PureStateValidation, UnitNorm) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureState({2}, v), ValidationError);
  EXPECT_NO_THROW(PureState::normalized({2}, v));
  EXPECT_THROW(PureState::normalized({2}, Vector::Zero(2)), ValidationError);
}

TEST(PermuteParties, SwapsFactors) {
  Rng rng(9);
  const DensityMatrix a = random_density({2}, rng), b = random_density({3}, rng);
  const Matrix swapped = permute_parties(tensor(a, b).matrix(), {2, 3}, {1, 0});
  EXPECT_LE(max_abs_diff(swapped, tensor(b, a).matrix()), 1e-15);
}

// Properties over seeded random inputs.

TEST(LinalgProperties, PartialTraceInvertsTensor) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::size_t da = 2 + seed % 3, db = 2 + (seed / 3) % 3;
    const DensityMatrix a = random_density({da}, rng), b = random_density({db}, rng);
    EXPECT_LE(max_abs_diff(partial_trace(tensor(a, b), {0}).matrix(), a.matrix()), 1e-12) << seed;
  }
}

TEST(LinalgProperties, PartialTransposeTraceAndInvolution) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(1000 + seed);
    const DensityMatrix rho = random_density({2, 2 + seed % 2}, rng);
    const std::size_t party = seed % 2;
    const Matrix pt = partial_transpose(rho, party);
    EXPECT_NEAR(std::abs(pt.trace() - rho.matrix().trace()), 0.0, 1e-12);
    EXPECT_LE(hermiticity_error(pt), 1e-12);
    EXPECT_LE(max_abs_diff(partial_transpose(pt, rho.dims(), party), rho.matrix()), 1e-15);
  }
}

TEST(LinalgProperties, EntropyUnitaryInvariance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(2000 + seed);
    const std::size_t d = 2 + seed % 6;
    const DensityMatrix rho = random_density({d}, rng);
    const Matrix u = random_unitary(d, rng);
    EXPECT_NEAR(von_neumann_entropy(conjugate(rho, u)), von_neumann_entropy(rho), 1e-9);
  }
}

}  // namespace
}  // namespace qre
