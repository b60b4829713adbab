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

// Dense complex linear algebra for small multipartite Hilbert spaces.
//
// Everything here works on row-major-ordered tensor products: for dims
// [d0, d1, ..., dn-1] the basis index of |i0 i1 ... in-1> is
// ((i0 * d1 + i1) * d2 + i2) ... with party 0 most significant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qre/errors.hpp"

namespace qre {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

inline constexpr std::size_t kMaxDimension = 64;

namespace tol {
inline constexpr double kHermitian = 1e-12;    // DensityMatrix entrywise
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-10;          // smallest admissible eigenvalue is -kPsd
inline constexpr double kEigInput = 1e-10;     // herm_eig input Hermiticity
inline constexpr double kPureNorm = 1e-12;
}  // namespace tol

/// Entrywise max |a - b|; the comparison norm used across the library.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const Matrix& h) {
  if (h.rows() != h.cols()) return INFINITY;
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// Product of the local dimensions. Rejects empty lists, zero entries, and
/// totals above kMaxDimension.
inline std::size_t total_dimension(const Dims& dims) {
  if (dims.empty()) throw ValidationError("dims", "dimension list is empty");
  std::size_t d = 1;
  for (std::size_t k : dims) {
    if (k == 0) throw ValidationError("dims", "local dimensions must be positive");
    d *= k;
    if (d > kMaxDimension) {
      throw UnsupportedError("total dimension exceeds the cap of " + std::to_string(kMaxDimension));
    }
  }
  return d;
}

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, unitary
};

inline HermitianEig herm_eig(const Matrix& h) {
  if (h.rows() != h.cols()) throw DomainError("herm_eig: matrix is not square");
  if (hermiticity_error(h) > tol::kEigInput) throw DomainError("herm_eig: matrix is not Hermitian");
  if (h.size() == 0) return {};
  // The solver reads only the lower triangle; pass the Hermitian part so both
  // triangles contribute symmetrically.
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw DomainError("herm_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// f applied to the spectrum: V f(Λ) V†.
inline Matrix spectral_function(const Matrix& h, const std::function<double(double)>& f) {
  const HermitianEig eig = herm_eig(h);
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(eig.eigenvalues(i));
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

/// Eigenvalues in [-kPsd, 0) become 0; anything more negative is a genuine
/// PSD violation.
inline RealVector clamp_spectrum(RealVector eigenvalues) {
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    double& v = eigenvalues(i);
    if (v < -tol::kPsd) {
      throw ValidationError("psd", "eigenvalue " + std::to_string(v) + " below -1e-10");
    }
    if (v < 0.0) v = 0.0;
  }
  return eigenvalues;
}

/// -Σ λ ln λ in nats with 0 ln 0 = 0.
inline double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues(i);
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

class DensityMatrix {
 public:
  /// Tag for constructing from operations known to preserve the invariants.
  struct Unchecked {};

  DensityMatrix(Dims dims, Matrix entries) : dims_(std::move(dims)), rho_(std::move(entries)) {
    validate();
    rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  }

  DensityMatrix(Unchecked, Dims dims, Matrix entries) : dims_(std::move(dims)), rho_(std::move(entries)) {}

  static DensityMatrix maximally_mixed(Dims dims) {
    const auto d = static_cast<Eigen::Index>(total_dimension(dims));
    return {Unchecked{}, std::move(dims), Matrix::Identity(d, d) / static_cast<double>(d)};
  }

  static DensityMatrix diagonal(Dims dims, std::span<const double> probs) {
    const auto d = static_cast<Eigen::Index>(total_dimension(dims));
    if (static_cast<Eigen::Index>(probs.size()) != d) {
      throw ValidationError("dims", "diagonal length does not match the dimension list");
    }
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = probs[static_cast<std::size_t>(i)];
    return {std::move(dims), std::move(m)};
  }

  const Dims& dims() const noexcept { return dims_; }
  std::size_t parties() const noexcept { return dims_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const Matrix& matrix() const noexcept { return rho_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return rho_(i, j); }

 private:
  void validate() const {
    const std::size_t d = total_dimension(dims_);
    if (rho_.rows() != rho_.cols() || static_cast<std::size_t>(rho_.rows()) != d) {
      throw ValidationError("dims", "matrix shape does not match product of dims");
    }
    if (!rho_.allFinite()) throw ValidationError("finite", "matrix has non-finite entries");
    if (hermiticity_error(rho_) > tol::kHermitian) throw ValidationError("hermitian", "matrix is not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > tol::kTrace) {
      throw ValidationError("unit_trace", "trace deviates from 1 by more than 1e-10");
    }
    const double lo = herm_eig(rho_).eigenvalues(0);
    if (lo < -tol::kPsd) throw ValidationError("psd", "smallest eigenvalue " + std::to_string(lo) + " below -1e-10");
  }

  Dims dims_;
  Matrix rho_;
};

class PureState {
 public:
  PureState(Dims dims, Vector amplitudes) : dims_(std::move(dims)), psi_(std::move(amplitudes)) {
    const std::size_t d = total_dimension(dims_);
    if (static_cast<std::size_t>(psi_.size()) != d) {
      throw ValidationError("dims", "amplitude length does not match product of dims");
    }
    if (std::abs(psi_.norm() - 1.0) > tol::kPureNorm) throw ValidationError("unit_norm", "state vector is not normalized");
  }

  /// Normalizes `amplitudes` first; throws on a zero vector.
  static PureState normalized(Dims dims, Vector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) throw ValidationError("unit_norm", "cannot normalize a zero vector");
    return {std::move(dims), amplitudes / n};
  }

  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(psi_.size()); }
  const Vector& amplitudes() const noexcept { return psi_; }

  DensityMatrix density() const { return {DensityMatrix::Unchecked{}, dims_, psi_ * psi_.adjoint()}; }

 private:
  Dims dims_;
  Vector psi_;
};

namespace detail {

/// Digits of `index` in the mixed radix `dims` (party 0 most significant).
inline void to_digits(std::size_t index, const Dims& dims, std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

inline std::size_t from_digits(const std::vector<std::size_t>& digits, const Dims& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

inline Matrix partial_transpose_any(const Matrix& m, const Dims& dims, std::size_t party) {
  const auto d = static_cast<std::size_t>(m.rows());
  Matrix out(m.rows(), m.cols());
  std::vector<std::size_t> a, b;
  for (std::size_t i = 0; i < d; ++i) {
    to_digits(i, dims, a);
    for (std::size_t j = 0; j < d; ++j) {
      to_digits(j, dims, b);
      std::swap(a[party], b[party]);
      out(static_cast<Eigen::Index>(from_digits(a, dims)), static_cast<Eigen::Index>(from_digits(b, dims))) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      std::swap(a[party], b[party]);
    }
  }
  return out;
}

}  // namespace detail

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Dims concat_dims(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = concat_dims(a.dims(), b.dims());
  total_dimension(dims);
  return {DensityMatrix::Unchecked{}, std::move(dims), kron(a.matrix(), b.matrix())};
}

inline PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = concat_dims(a.dims(), b.dims());
  total_dimension(dims);
  return {std::move(dims), kron(a.amplitudes(), b.amplitudes())};
}

/// rho^{⊗n}; n >= 1.
inline DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t n) {
  if (n == 0) throw DomainError("tensor_power: n must be at least 1");
  DensityMatrix out = rho;
  for (std::size_t k = 1; k < n; ++k) out = tensor(out, rho);
  return out;
}

/// Reorders tensor factors: party k of the result is party order[k] of `m`.
inline Matrix permute_parties(const Matrix& m, const Dims& dims, const std::vector<std::size_t>& order) {
  if (order.size() != dims.size()) throw DomainError("permute_parties: order has wrong length");
  Dims out_dims(dims.size());
  for (std::size_t k = 0; k < order.size(); ++k) out_dims[k] = dims.at(order[k]);
  const auto d = static_cast<std::size_t>(m.rows());
  // old index for each new index
  std::vector<Eigen::Index> old_of_new(d);
  std::vector<std::size_t> nd, od(dims.size());
  for (std::size_t i = 0; i < d; ++i) {
    detail::to_digits(i, out_dims, nd);
    for (std::size_t k = 0; k < order.size(); ++k) od[order[k]] = nd[k];
    old_of_new[i] = static_cast<Eigen::Index>(detail::from_digits(od, dims));
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(old_of_new[i], old_of_new[j]);
    }
  }
  return out;
}

/// Traces out every party not in `keep`. Result parties are ordered by index.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  const Dims& dims = rho.dims();
  std::sort(keep.begin(), keep.end());
  if (keep.empty()) throw DomainError("partial_trace: keep set is empty");
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw DomainError("partial_trace: duplicate party index");
  }
  if (keep.back() >= dims.size()) throw DomainError("partial_trace: party index out of range");

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) kept[k] = true;
  Dims keep_dims, trace_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? keep_dims : trace_dims).push_back(dims[k]);

  const std::size_t d = rho.dim();
  std::vector<std::size_t> kidx(d), tidx(d);
  std::vector<std::size_t> digits, kd, td;
  for (std::size_t i = 0; i < d; ++i) {
    detail::to_digits(i, dims, digits);
    kd.clear();
    td.clear();
    for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? kd : td).push_back(digits[k]);
    kidx[i] = detail::from_digits(kd, keep_dims);
    tidx[i] = td.empty() ? 0 : detail::from_digits(td, trace_dims);
  }
  std::size_t dk = 1;
  for (std::size_t k : keep_dims) dk *= k;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (tidx[i] != tidx[j]) continue;
      out(static_cast<Eigen::Index>(kidx[i]), static_cast<Eigen::Index>(kidx[j])) +=
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return {DensityMatrix::Unchecked{}, std::move(keep_dims), std::move(out)};
}

/// Transposes the indices of `party` in a bipartite operator. The result is
/// Hermitian with the same trace but possibly indefinite.
inline Matrix partial_transpose(const Matrix& m, const Dims& dims, std::size_t party) {
  if (dims.size() != 2) throw UnsupportedError("partial_transpose: exactly two parties required");
  if (party > 1) throw DomainError("partial_transpose: party must be 0 or 1");
  if (static_cast<std::size_t>(m.rows()) != total_dimension(dims) || m.rows() != m.cols()) {
    throw DomainError("partial_transpose: matrix shape does not match dims");
  }
  return detail::partial_transpose_any(m, dims, party);
}

inline Matrix partial_transpose(const DensityMatrix& rho, std::size_t party) {
  return partial_transpose(rho.matrix(), rho.dims(), party);
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(clamp_spectrum(herm_eig(rho.matrix()).eigenvalues));
}

/// Conjugation U ρ U† returned as a new state on the same dims.
inline DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != static_cast<Eigen::Index>(rho.dim()) || u.cols() != u.rows()) {
    throw DomainError("conjugate: operator dimension mismatch");
  }
  if (max_abs_diff(u.adjoint() * u, Matrix::Identity(u.rows(), u.cols())) > 1e-9) {
    throw DomainError("conjugate: operator is not unitary");
  }
  Matrix m = u * rho.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return {DensityMatrix::Unchecked{}, rho.dims(), std::move(m)};
}

}  // namespace qre
