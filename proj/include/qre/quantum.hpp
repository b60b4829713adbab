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

// Quantum relative entropy, POVM statistics, and the measured (one-copy and
// N-copy) relative entropies obtained by optimizing over projective
// measurements.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "qre/classical.hpp"
#include "qre/linalg.hpp"
#include "qre/optimize.hpp"
#include "qre/parallel.hpp"
#include "qre/random.hpp"
#include "qre/unitary.hpp"

namespace qre {

/// Eigenvalues at or below kSupport × (largest eigenvalue) are outside the support.
inline constexpr double kSupport = 1e-12;
/// σ-weight outside the support of ρ above this makes S(σ||ρ) infinite.
inline constexpr double kSupportLeak = 1e-10;

/// tr σ(ln σ - ln ρ) in nats; kInfinity when supp σ ⊄ supp ρ.
inline double quantum_relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim()) throw DomainError("quantum_relative_entropy: dimension mismatch");
  const HermitianEig es = herm_eig(sigma.matrix());
  const HermitianEig er = herm_eig(rho.matrix());
  const RealVector ls = clamp_spectrum(es.eigenvalues);
  const RealVector lr = clamp_spectrum(er.eigenvalues);
  const double s_cut = kSupport * ls.maxCoeff();
  const double r_cut = kSupport * lr.maxCoeff();

  double s_log_s = 0.0;
  for (Eigen::Index i = 0; i < ls.size(); ++i) {
    if (ls(i) > s_cut) s_log_s += ls(i) * std::log(ls(i));
  }
  double cross = 0.0;  // tr σ ln ρ restricted to supp ρ
  double inside = 0.0;
  for (Eigen::Index j = 0; j < lr.size(); ++j) {
    if (lr(j) <= r_cut) continue;
    const auto v = er.eigenvectors.col(j);
    const double w = (v.adjoint() * sigma.matrix() * v)(0, 0).real();
    inside += w;
    cross += w * std::log(lr(j));
  }
  const double outside = sigma.matrix().trace().real() - inside;
  if (outside > kSupportLeak) return kInfinity;
  return std::max(0.0, s_log_s - cross);
}

/// exp(-N S(σ||ρ)); 0 when S is infinite.
inline double quantum_confusion_probability(const DensityMatrix& sigma, const DensityMatrix& rho, std::size_t copies) {
  const double s = quantum_relative_entropy(sigma, rho);
  if (is_infinite(s)) return 0.0;
  return std::exp(-static_cast<double>(copies) * s);
}

class Povm {
 public:
  explicit Povm(std::vector<Matrix> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw ValidationError("nonempty", "POVM has no effects");
    const auto d = effects_.front().rows();
    Matrix total = Matrix::Zero(d, d);
    for (const Matrix& a : effects_) {
      if (a.rows() != d || a.cols() != d) throw ValidationError("shape", "POVM effects differ in dimension");
      if (herm_eig(a).eigenvalues(0) < -tol::kPsd) throw ValidationError("psd", "POVM effect is not PSD");
      total += a;
    }
    if (max_abs_diff(total, Matrix::Identity(d, d)) > 1e-9) {
      throw ValidationError("completeness", "POVM effects do not sum to the identity");
    }
  }

  /// Rank-1 projective measurement onto the columns of a unitary.
  static Povm projective(const Matrix& basis) {
    std::vector<Matrix> effects;
    effects.reserve(static_cast<std::size_t>(basis.cols()));
    for (Eigen::Index i = 0; i < basis.cols(); ++i) effects.emplace_back(basis.col(i) * basis.col(i).adjoint());
    return Povm(std::move(effects));
  }

  std::size_t size() const noexcept { return effects_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(effects_.front().rows()); }
  const std::vector<Matrix>& effects() const noexcept { return effects_; }

 private:
  std::vector<Matrix> effects_;
};

/// p_i = tr(A_i ρ).
inline ProbDist povm_outcome_dist(const Povm& povm, const DensityMatrix& state) {
  if (povm.dim() != state.dim()) throw DomainError("povm_outcome_dist: dimension mismatch");
  std::vector<double> p;
  p.reserve(povm.size());
  double total = 0.0;
  for (const Matrix& a : povm.effects()) {
    double x = (a * state.matrix()).trace().real();
    if (x < 0.0 && x >= -1e-12) x = 0.0;
    total += x;
    p.push_back(x);
  }
  if (std::abs(total - 1.0) > 1e-10) throw ValidationError("normalized", "outcome probabilities do not sum to 1");
  for (double& x : p) x = std::min(1.0, x / total);
  return ProbDist(std::move(p));
}

struct MeasuredRelEntropyResult {
  double value = 0.0;  // nats; kInfinity on a support-mismatch witness
  Povm best_povm{std::vector<Matrix>{Matrix::Identity(1, 1)}};
  std::size_t n_restarts = 0;
  bool converged = false;
  Matrix best_basis;  // columns of the optimal projective measurement
};

namespace detail {

/// KL divergence of the outcome statistics of the basis `w` (columns).
inline double projective_kl(const Matrix& w, const Matrix& sigma, const Matrix& rho) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.cols(); ++i) {
    const auto v = w.col(i);
    const double p = (v.adjoint() * sigma * v)(0, 0).real();
    const double q = (v.adjoint() * rho * v)(0, 0).real();
    if (p <= kSupport) continue;
    if (q <= kSupport) {
      if (p > kSupportLeak) return kInfinity;
      continue;
    }
    s += p * std::log(p / q);
  }
  return s;
}

/// Eigenbasis of ρ, rotated inside each degenerate eigenspace to diagonalize
/// the compression of σ onto it.
inline Matrix pinched_eigenbasis(const Matrix& rho, const Matrix& sigma) {
  const HermitianEig e = herm_eig(rho);
  Matrix v = e.eigenvectors;
  const auto d = v.cols();
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && e.eigenvalues(end) - e.eigenvalues(end - 1) <= 1e-9) ++end;
    const Eigen::Index len = end - start;
    if (len > 1) {
      const Matrix block = v.middleCols(start, len);
      Matrix c = block.adjoint() * sigma * block;
      c = 0.5 * (c + c.adjoint()).eval();
      const HermitianEig ec = herm_eig(c);
      v.middleCols(start, len) = block * ec.eigenvectors;
    }
    start = end;
  }
  return v;
}

inline bool top_values_agree(std::vector<double> values, bool maximize, double tol) {
  if (values.empty()) return false;
  if (maximize) {
    std::sort(values.begin(), values.end(), std::greater<>());
  } else {
    std::sort(values.begin(), values.end());
  }
  const std::size_t k = std::min<std::size_t>(3, values.size());
  if (std::isinf(values[0])) return true;
  return std::abs(values[0] - values[k - 1]) <= tol;
}

/// Multistart maximization of the projective KL over unitaries V0·U(params).
/// Restart i < seeds.size() starts at seeds[i]; the rest start at Haar-random
/// bases drawn from (budget.seed, i).
inline MeasuredRelEntropyResult maximize_projective_kl(const Matrix& sigma, const Matrix& rho,
                                                       const std::vector<Matrix>& seeds,
                                                       const OptimizerBudget& budget) {
  if (budget.restarts < 1) throw DomainError("measured relative entropy: budget.restarts must be at least 1");
  const auto d = static_cast<std::size_t>(sigma.rows());
  const std::size_t n_restarts = std::max(budget.restarts, seeds.size());

  struct Local {
    double value;
    Matrix basis;
  };
  const auto locals = parallel_map(n_restarts, budget.workers, [&](std::size_t i) {
    Matrix v0;
    if (i < seeds.size()) {
      v0 = seeds[i];
    } else {
      Rng rng(derive_seed(budget.seed, i));
      v0 = random_unitary(d, rng);
    }
    const double start = projective_kl(v0, sigma, rho);
    if (is_infinite(start)) return Local{kInfinity, v0};
    auto objective = [&](const Eigen::VectorXd& x) {
      const Matrix w = v0 * unitary_from_parameters(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), d);
      return -projective_kl(w, sigma, rho);
    };
    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(unitary_parameter_count(d)));
    const LocalResult r = nelder_mead(objective, x0, 0.2, budget.max_iters, budget.tolerance);
    if (-r.value <= start) return Local{start, v0};
    const Matrix w = v0 * unitary_from_parameters(std::span<const double>(r.x.data(), static_cast<std::size_t>(r.x.size())), d);
    return Local{-r.value, w};
  });

  std::size_t best = 0;
  std::vector<double> values;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    values.push_back(locals[i].value);
    if (locals[i].value > locals[best].value) best = i;
  }
  MeasuredRelEntropyResult out;
  out.value = std::max(0.0, locals[best].value);
  out.best_basis = locals[best].basis;
  out.best_povm = Povm::projective(out.best_basis);
  out.n_restarts = n_restarts;
  out.converged = top_values_agree(values, true, 1e-6);
  return out;
}

inline std::vector<Matrix> spectral_seeds(const Matrix& sigma, const Matrix& rho) {
  const Matrix diff = sigma - rho;
  return {pinched_eigenbasis(rho, sigma), herm_eig(sigma).eigenvectors, herm_eig(diff).eigenvectors};
}

}  // namespace detail

/// Best projective-measurement relative entropy of σ against ρ (a lower bound
/// on the supremum over all POVMs).
inline MeasuredRelEntropyResult measured_relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho,
                                                          const OptimizerBudget& budget = {}) {
  if (sigma.dim() != rho.dim()) throw DomainError("measured_relative_entropy: dimension mismatch");
  return detail::maximize_projective_kl(sigma.matrix(), rho.matrix(), detail::spectral_seeds(sigma.matrix(), rho.matrix()),
                                        budget);
}

/// (1/N) × best projective relative entropy of σ^{⊗N} against ρ^{⊗N}.
///
/// Lower-copy optima are computed first and their tensor products join the
/// spectral seeds, so Ŝ_N ≥ Ŝ_1 holds by construction.
inline MeasuredRelEntropyResult n_copy_measured_relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho,
                                                                 std::size_t copies, const OptimizerBudget& budget = {}) {
  if (copies == 0) throw DomainError("n_copy_measured_relative_entropy: N must be at least 1");
  if (sigma.dim() != rho.dim()) throw DomainError("n_copy_measured_relative_entropy: dimension mismatch");
  std::size_t total = 1;
  for (std::size_t k = 0; k < copies; ++k) {
    total *= sigma.dim();
    if (total > kMaxDimension) throw UnsupportedError("n_copy_measured_relative_entropy: d^N exceeds the dimension cap");
  }
  std::vector<Matrix> best_basis;  // best_basis[k] for k+1 copies
  MeasuredRelEntropyResult result;
  Matrix s = sigma.matrix();
  Matrix r = rho.matrix();
  for (std::size_t n = 1; n <= copies; ++n) {
    if (n > 1) {
      s = kron(s, sigma.matrix());
      r = kron(r, rho.matrix());
    }
    std::vector<Matrix> seeds = detail::spectral_seeds(s, r);
    for (std::size_t k = 1; k < n; ++k) {
      // (k copies) ⊗ (n-k copies) and its mirror
      seeds.push_back(kron(best_basis[k - 1], best_basis[n - k - 1]));
    }
    if (n > 1) {
      Matrix power = best_basis[0];
      for (std::size_t k = 1; k < n; ++k) power = kron(power, best_basis[0]);
      seeds.push_back(std::move(power));
    }
    result = detail::maximize_projective_kl(s, r, seeds, budget);
    best_basis.push_back(result.best_basis);
  }
  result.value /= static_cast<double>(copies);
  return result;
}

}  // namespace qre
