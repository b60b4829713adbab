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

// Unitary parametrization by two-level rotations.
//
// For dimension d the parameter vector has d² entries: one (θ, ϕ) pair for
// each index pair j < k (in lexicographic order), followed by d diagonal
// phases. The unitary is diag(e^{iφ}) · Π_{j<k} G_jk(θ, ϕ), where G_jk acts
// as [[cos θ, -e^{iϕ} sin θ], [e^{-iϕ} sin θ, cos θ]] on span{e_j, e_k}.
// All parameters zero gives the identity.

#include <cmath>
#include <cstddef>
#include <span>

#include "qre/linalg.hpp"

namespace qre {

inline constexpr std::size_t unitary_parameter_count(std::size_t d) { return d * d; }

inline Matrix unitary_from_parameters(std::span<const double> params, std::size_t d) {
  if (params.size() != unitary_parameter_count(d)) throw DomainError("unitary_from_parameters: wrong parameter count");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix u = Matrix::Identity(n, n);
  std::size_t p = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double c = std::cos(params[p]);
      const double s = std::sin(params[p]);
      const Complex e = std::polar(1.0, params[p + 1]);
      p += 2;
      // right-multiply by G_jk: only columns j and k change
      for (Eigen::Index r = 0; r < n; ++r) {
        const Complex uj = u(r, j);
        const Complex uk = u(r, k);
        u(r, j) = c * uj + std::conj(e) * s * uk;
        u(r, k) = -e * s * uj + c * uk;
      }
    }
  }
  for (Eigen::Index r = 0; r < n; ++r) u.row(r) *= std::polar(1.0, params[p++]);
  return u;
}

}  // namespace qre
