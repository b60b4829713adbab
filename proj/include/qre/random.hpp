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


#pragma once

// Seeded random states and operators for fixtures and optimizer restarts.

#include <cstddef>
#include <vector>

#include "qre/linalg.hpp"
#include "qre/rng.hpp"

namespace qre {

inline Vector random_complex_gaussian(std::size_t n, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  return v;
}

inline Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = random_complex_gaussian(rows, rng);
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal phases
/// moved into Q.
inline Matrix random_unitary(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

/// Haar-random unit vector on the total space of `dims`.
inline PureState random_pure_state(const Dims& dims, Rng& rng) {
  return PureState::normalized(dims, random_complex_gaussian(total_dimension(dims), rng));
}

/// Random mixed state G G† / tr with G a d×rank Ginibre matrix (rank 0 means full rank).
inline DensityMatrix random_density(const Dims& dims, Rng& rng, std::size_t rank = 0) {
  const std::size_t d = total_dimension(dims);
  const Matrix g = ginibre(d, rank == 0 ? d : rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return {dims, std::move(m)};
}

/// Flat Dirichlet sample on the (n-1)-simplex.
inline std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(rng.uniform_pos());
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace qre
