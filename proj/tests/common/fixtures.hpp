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

#include <cmath>
#include <numbers>

#include "qre/linalg.hpp"

namespace qre::fixtures {

/// σ = |0><0|, ρ = diag(0.8, 0.2) turned by 0.5 rad about the Bloch y axis.
inline DensityMatrix qubit_sigma() { return DensityMatrix::diagonal({2}, std::vector<double>{1.0, 0.0}); }

inline Matrix y_rotation(double angle) {
  Matrix r(2, 2);
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  r << c, -s, s, c;
  return r;
}

inline DensityMatrix qubit_rho() {
  const Matrix r = y_rotation(0.5);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.8;
  d(1, 1) = 0.2;
  return DensityMatrix({2}, r * d * r.adjoint());
}

/// Projective-measurement KL maximized over a uniform grid of Bloch angles in
/// the x-z plane, which contains both Bloch vectors.
inline double qubit_grid_oracle(std::size_t points) {
  const double rz = 0.6 * std::cos(0.5), rx = 0.6 * std::sin(0.5);
  double best = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double phi = std::numbers::pi * static_cast<double>(i) / static_cast<double>(points);
    const double ps = 0.5 * (1 + std::cos(phi));
    const double pr = 0.5 * (1 + rz * std::cos(phi) + rx * std::sin(phi));
    double kl = 0.0;
    if (ps > 0) kl += ps * std::log(ps / pr);
    if (ps < 1) kl += (1 - ps) * std::log((1 - ps) / (1 - pr));
    best = std::max(best, kl);
  }
  return best;
}

}  // namespace qre::fixtures
