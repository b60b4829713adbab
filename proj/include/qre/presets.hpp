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

// Named states: every state the CLI can refer to by tag.
//
//   bell         |φ+> = (|00> + |11>)/√2
//   bell-minus   |φ-> = (|00> - |11>)/√2
//   cc-mix       (|00><00| + |11><11|)/2
//   werner:F     F|φ+><φ+| + (1-F)(I - |φ+><φ+|)/3
//   pure:θ       cos θ|00> + sin θ|11>
//   mixed:d      I/d on one party; mixed:AxB for I/(AB) on two parties
//   ghz:n        (|0...0> + |1...1>)/√2 on n qubits
//   diag:p,q,..  diagonal single-party state

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qre/errors.hpp"
#include "qre/linalg.hpp"

namespace qre::presets {

inline PureState bell_state(bool minus = false) {
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  v(3) = minus ? -1.0 : 1.0;
  return PureState::normalized({2, 2}, v);
}

inline DensityMatrix classical_mixture() {
  const std::vector<double> p{0.5, 0.0, 0.0, 0.5};
  return DensityMatrix::diagonal({2, 2}, p);
}

inline DensityMatrix werner(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ValidationError("werner", "F must lie in [0,1]");
  const Matrix phi = bell_state().density().matrix();
  const Matrix m = fidelity * phi + (1.0 - fidelity) / 3.0 * (Matrix::Identity(4, 4) - phi);
  return {{2, 2}, m};
}

inline PureState schmidt_state(double theta) {
  Vector v = Vector::Zero(4);
  v(0) = std::cos(theta);
  v(3) = std::sin(theta);
  return PureState::normalized({2, 2}, v);
}

inline PureState ghz(std::size_t qubits) {
  if (qubits < 2) throw ValidationError("ghz", "need at least two qubits");
  Dims dims(qubits, 2);
  const std::size_t d = total_dimension(dims);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v(0) = 1.0;
  v(static_cast<Eigen::Index>(d) - 1) = 1.0;
  return PureState::normalized(dims, v);
}

namespace detail {

inline double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("preset", "cannot parse " + what + " from '" + s + "'");
  }
}

inline std::size_t parse_count(const std::string& s, const std::string& what) {
  const double x = parse_number(s, what);
  if (x < 1 || x != std::floor(x)) throw ValidationError("preset", what + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

}  // namespace detail

inline const std::vector<std::string>& registered() {
  static const std::vector<std::string> names{"bell", "bell-minus", "cc-mix", "werner:F", "pure:theta",
                                              "mixed:d",  "ghz:n",      "diag:p1,p2,..."};
  return names;
}

inline DensityMatrix from_tag(const std::string& tag) {
  const auto colon = tag.find(':');
  const std::string name = tag.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : tag.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw ValidationError("preset", "preset '" + name + "' needs a parameter");
  };
  if (name == "bell" && arg.empty()) return bell_state().density();
  if (name == "bell-minus" && arg.empty()) return bell_state(true).density();
  if (name == "cc-mix" && arg.empty()) return classical_mixture();
  if (name == "werner") {
    need_arg();
    return werner(detail::parse_number(arg, "F"));
  }
  if (name == "pure") {
    need_arg();
    return schmidt_state(detail::parse_number(arg, "theta")).density();
  }
  if (name == "mixed") {
    need_arg();
    Dims dims;
    std::size_t start = 0;
    while (true) {
      const auto x = arg.find('x', start);
      dims.push_back(detail::parse_count(arg.substr(start, x - start), "dimension"));
      if (x == std::string::npos) break;
      start = x + 1;
    }
    return DensityMatrix::maximally_mixed(dims);
  }
  if (name == "ghz") {
    need_arg();
    return ghz(detail::parse_count(arg, "qubit count")).density();
  }
  if (name == "diag") {
    need_arg();
    std::vector<double> p;
    std::size_t start = 0;
    while (true) {
      const auto c = arg.find(',', start);
      p.push_back(detail::parse_number(arg.substr(start, c - start), "probability"));
      if (c == std::string::npos) break;
      start = c + 1;
    }
    return DensityMatrix::diagonal({p.size()}, p);
  }
  throw ValidationError("preset", "unknown state preset '" + tag + "'");
}

}  // namespace qre::presets
