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

// Relative entropy of entanglement for bipartite states: the smallest
// S(σ||ρ) over separable ρ, searched over explicit ensembles of pure product
// states. Every returned value is an upper bound carried by a certificate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qre/classical.hpp"
#include "qre/linalg.hpp"
#include "qre/optimize.hpp"
#include "qre/parallel.hpp"
#include "qre/quantum.hpp"
#include "qre/random.hpp"
#include "qre/separable.hpp"

namespace qre {

struct ReeResult {
  double value = 0.0;  // nats
  DensityMatrix closest_state;
  SeparableEnsemble certificate;
  OptimizerBudget budget;
  bool converged = false;
};

/// Columns |φ+>, |φ->, |ψ+>, |ψ->.
inline Matrix bell_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix b = Matrix::Zero(4, 4);
  b(0, 0) = h, b(3, 0) = h;
  b(0, 1) = h, b(3, 1) = -h;
  b(1, 2) = h, b(2, 2) = h;
  b(1, 3) = h, b(2, 3) = -h;
  return b;
}

struct BellOracleResult {
  double value = kInfinity;
  SeparableEnsemble certificate;
};

namespace detail {

inline PureState qubit(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return PureState::normalized({2}, v);
}

/// The six separable states (B_a + B_b)/2 that are equal mixtures of two Bell
/// states, each as two pure product terms. Their convex hull is the separable
/// Bell-diagonal set.
struct BellVertex {
  int bell_a, bell_b;
  PureState a0, b0, a1, b1;
};

inline std::vector<BellVertex> bell_vertices() {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  const PureState z0 = qubit(1, 0), z1 = qubit(0, 1);
  const PureState xp = qubit(h, h), xm = qubit(h, -h);
  const PureState yp = qubit(h, i * h), ym = qubit(h, -i * h);
  return {
      {0, 1, z0, z0, z1, z1},  // ZZ = +1
      {2, 3, z0, z1, z1, z0},  // ZZ = -1
      {0, 2, xp, xp, xm, xm},  // XX = +1
      {1, 3, xp, xm, xm, xp},  // XX = -1
      {1, 2, yp, yp, ym, ym},  // YY = +1
      {0, 3, yp, ym, ym, yp},  // YY = -1
  };
}

inline SeparableEnsemble bell_vertex_mixture(const std::vector<double>& w) {
  const auto verts = bell_vertices();
  std::vector<ProductTerm> terms;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (w[v] / 2.0 < kDropWeight) continue;
    for (int half = 0; half < 2; ++half) {
      ProductTerm t;
      t.weight = w[v] / 2.0;
      t.grouping = singleton_grouping(2);
      t.factors.emplace_back(half == 0 ? verts[v].a0 : verts[v].a1);
      t.factors.emplace_back(half == 0 ? verts[v].b0 : verts[v].b1);
      terms.push_back(std::move(t));
    }
  }
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  for (auto& t : terms) t.weight /= total;
  return SeparableEnsemble({2, 2}, std::move(terms));
}

inline RealVector bell_weights_checked(const DensityMatrix& sigma) {
  if (sigma.dims() != Dims{2, 2}) throw DomainError("ree_oracle_bell_diagonal: dims must be [2,2]");
  const Matrix b = bell_basis();
  const Matrix m = b.adjoint() * sigma.matrix() * b;
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      if (i != j && std::abs(m(i, j)) > 1e-10) throw DomainError("ree_oracle_bell_diagonal: state is not Bell-diagonal");
    }
  }
  return m.diagonal().real();
}

}  // namespace detail

inline bool is_bell_diagonal(const DensityMatrix& sigma) {
  try {
    detail::bell_weights_checked(sigma);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

/// Brute-force sweep over separable Bell-diagonal candidates: the six vertices
/// and the centroid first, then flat-simplex mixtures of the vertices drawn
/// from `seed`. Both σ and every candidate are Bell-diagonal, so S reduces to
/// the classical divergence of Bell weights. Returns the sweep minimum, an
/// upper bound on the relative entropy of entanglement.
inline BellOracleResult bell_diagonal_oracle(const DensityMatrix& sigma, std::size_t grid_points,
                                             std::uint64_t seed = 0x5eed) {
  if (grid_points == 0) throw DomainError("ree_oracle_bell_diagonal: grid_points must be at least 1");
  const RealVector lam = detail::bell_weights_checked(sigma);
  std::vector<double> sw(4);
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += (sw[static_cast<std::size_t>(i)] = std::max(0.0, lam(i)));
  for (double& x : sw) x /= total;
  const ProbDist sigma_w(sw);
  const auto verts = detail::bell_vertices();

  Rng rng(seed);
  std::vector<double> best_w;
  double best = kInfinity;
  std::vector<double> w(6), cand(4);
  for (std::size_t n = 0; n < grid_points; ++n) {
    if (n < 6) {
      std::fill(w.begin(), w.end(), 0.0);
      w[n] = 1.0;
    } else if (n == 6) {
      std::fill(w.begin(), w.end(), 1.0 / 6.0);
    } else {
      w = random_simplex(6, rng);
    }
    std::fill(cand.begin(), cand.end(), 0.0);
    for (std::size_t v = 0; v < 6; ++v) {
      cand[static_cast<std::size_t>(verts[v].bell_a)] += w[v] / 2.0;
      cand[static_cast<std::size_t>(verts[v].bell_b)] += w[v] / 2.0;
    }
    double ct = 0.0;
    for (double x : cand) ct += x;
    for (double& x : cand) x /= ct;
    const double s = kl_divergence(sigma_w, ProbDist(cand));
    if (s < best || best_w.empty()) {
      best = s;
      best_w = w;
    }
  }
  return {best, detail::bell_vertex_mixture(best_w)};
}

inline double ree_oracle_bell_diagonal(const DensityMatrix& sigma, std::size_t grid_points) {
  return bell_diagonal_oracle(sigma, grid_points).value;
}

namespace detail {

inline constexpr double kBarrier = 1e-9;

/// Objective S(σ || (1-ε) Σ_k w_k |a_k b_k><a_k b_k| + ε I/d) over raw
/// parameters. Per term the layout is [t, Re a (dA), Im a (dA), Re b (dB),
/// Im b (dB)] with w_k = t_k² / Σ t² and a, b normalized on evaluation.
class ProductEnsembleObjective {
 public:
  ProductEnsembleObjective(const DensityMatrix& sigma, std::size_t terms)
      : sigma_(sigma.matrix()),
        da_(sigma.dims()[0]),
        db_(sigma.dims()[1]),
        d_(da_ * db_),
        terms_(terms),
        stride_(1 + 2 * da_ + 2 * db_) {
    s_log_s_ = -entropy_of_spectrum(clamp_spectrum(herm_eig(sigma_).eigenvalues));
  }

  std::size_t parameter_count() const { return terms_ * stride_; }
  std::size_t terms() const { return terms_; }

  struct Decoded {
    std::vector<double> weights;
    std::vector<Vector> a, b;
    double t_total = 0.0;
    std::vector<double> a_norm, b_norm;
  };

  Decoded decode(const Eigen::VectorXd& x) const {
    Decoded dec;
    dec.weights.resize(terms_);
    dec.a.resize(terms_);
    dec.b.resize(terms_);
    dec.a_norm.resize(terms_);
    dec.b_norm.resize(terms_);
    for (std::size_t k = 0; k < terms_; ++k) {
      const double* p = x.data() + k * stride_;
      dec.t_total += p[0] * p[0];
      Vector a(static_cast<Eigen::Index>(da_)), b(static_cast<Eigen::Index>(db_));
      for (std::size_t i = 0; i < da_; ++i) a(static_cast<Eigen::Index>(i)) = Complex(p[1 + i], p[1 + da_ + i]);
      const double* q = p + 1 + 2 * da_;
      for (std::size_t j = 0; j < db_; ++j) b(static_cast<Eigen::Index>(j)) = Complex(q[j], q[db_ + j]);
      dec.a_norm[k] = std::max(a.norm(), 1e-300);
      dec.b_norm[k] = std::max(b.norm(), 1e-300);
      dec.a[k] = a / dec.a_norm[k];
      dec.b[k] = b / dec.b_norm[k];
    }
    for (std::size_t k = 0; k < terms_; ++k) {
      const double t = x(static_cast<Eigen::Index>(k * stride_));
      dec.weights[k] = t * t / dec.t_total;
    }
    return dec;
  }

  Matrix state(const Decoded& dec) const {
    const auto n = static_cast<Eigen::Index>(d_);
    Matrix rho = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < terms_; ++k) {
      const Vector psi = kron(dec.a[k], dec.b[k]);
      rho.noalias() += dec.weights[k] * psi * psi.adjoint();
    }
    return (1.0 - kBarrier) * rho + (kBarrier / static_cast<double>(d_)) * Matrix::Identity(n, n);
  }

  double value(const Eigen::VectorXd& x) const {
    return evaluate(x, nullptr);
  }

  double operator()(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const { return evaluate(x, &grad); }

  double evaluate(const Eigen::VectorXd& x, Eigen::VectorXd* grad) const {
    const Decoded dec = decode(x);
    if (!(dec.t_total > 0.0)) return kInfinity;
    Matrix rho = state(dec);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const RealVector& lam = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    if (lam(0) <= 0.0) return kInfinity;
    const Matrix st = v.adjoint() * sigma_ * v;
    double cross = 0.0;
    for (Eigen::Index j = 0; j < lam.size(); ++j) cross += std::log(lam(j)) * st(j, j).real();
    const double f = s_log_s_ - cross;
    if (grad == nullptr) return f;

    // M = V (Γ ∘ V†σV) V† with Γ the divided differences of ln; d(tr σ ln ρ) = tr(M dρ)
    const auto n = lam.size();
    Matrix gam(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double li = lam(i), lj = lam(j);
        const double diff = li - lj;
        gam(i, j) = std::abs(diff) > 1e-10 * std::max(li, lj) ? (std::log(li) - std::log(lj)) / diff : 2.0 / (li + lj);
      }
    }
    const Matrix m = v * gam.cwiseProduct(st) * v.adjoint();
    const double scale = -(1.0 - kBarrier);

    grad->resize(static_cast<Eigen::Index>(parameter_count()));
    std::vector<double> h(terms_);
    std::vector<Vector> mpsi(terms_);
    double mean_h = 0.0;
    for (std::size_t k = 0; k < terms_; ++k) {
      const Vector psi = kron(dec.a[k], dec.b[k]);
      mpsi[k] = m * psi;
      h[k] = psi.dot(mpsi[k]).real();
      mean_h += dec.weights[k] * h[k];
    }
    for (std::size_t k = 0; k < terms_; ++k) {
      double* g = grad->data() + k * stride_;
      const double t = x(static_cast<Eigen::Index>(k * stride_));
      g[0] = scale * (2.0 * t / dec.t_total) * (h[k] - mean_h);
      // contractions of M|a b> against <b| and <a|
      Vector na = Vector::Zero(static_cast<Eigen::Index>(da_));
      Vector nb = Vector::Zero(static_cast<Eigen::Index>(db_));
      for (std::size_t i = 0; i < da_; ++i) {
        for (std::size_t j = 0; j < db_; ++j) {
          const Complex val = mpsi[k](static_cast<Eigen::Index>(i * db_ + j));
          na(static_cast<Eigen::Index>(i)) += std::conj(dec.b[k](static_cast<Eigen::Index>(j))) * val;
          nb(static_cast<Eigen::Index>(j)) += std::conj(dec.a[k](static_cast<Eigen::Index>(i))) * val;
        }
      }
      const Vector ga = (na - h[k] * dec.a[k]) / dec.a_norm[k];
      const Vector gb = (nb - h[k] * dec.b[k]) / dec.b_norm[k];
      const double c = scale * dec.weights[k] * 2.0;
      for (std::size_t i = 0; i < da_; ++i) {
        g[1 + i] = c * ga(static_cast<Eigen::Index>(i)).real();
        g[1 + da_ + i] = c * ga(static_cast<Eigen::Index>(i)).imag();
      }
      double* q = g + 1 + 2 * da_;
      for (std::size_t j = 0; j < db_; ++j) {
        q[j] = c * gb(static_cast<Eigen::Index>(j)).real();
        q[db_ + j] = c * gb(static_cast<Eigen::Index>(j)).imag();
      }
    }
    return f;
  }

  /// Encodes an explicit list of product terms; missing terms are filled with
  /// random directions at negligible weight, and every weight is floored so
  /// no term is frozen at t = 0.
  Eigen::VectorXd encode(const std::vector<double>& weights, const std::vector<Vector>& a,
                         const std::vector<Vector>& b, Rng& rng) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(parameter_count()));
    for (std::size_t k = 0; k < terms_; ++k) {
      double* p = x.data() + k * stride_;
      const bool given = k < weights.size();
      const Vector ak = given ? a[k] : random_complex_gaussian(da_, rng).normalized();
      const Vector bk = given ? b[k] : random_complex_gaussian(db_, rng).normalized();
      p[0] = std::sqrt((given ? std::max(weights[k], 0.0) : 0.0) + 1e-8);
      for (std::size_t i = 0; i < da_; ++i) {
        p[1 + i] = ak(static_cast<Eigen::Index>(i)).real();
        p[1 + da_ + i] = ak(static_cast<Eigen::Index>(i)).imag();
      }
      double* q = p + 1 + 2 * da_;
      for (std::size_t j = 0; j < db_; ++j) {
        q[j] = bk(static_cast<Eigen::Index>(j)).real();
        q[db_ + j] = bk(static_cast<Eigen::Index>(j)).imag();
      }
    }
    return x;
  }

  Eigen::VectorXd random_point(Rng& rng) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(parameter_count()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
    return x;
  }

  std::size_t dim_a() const { return da_; }
  std::size_t dim_b() const { return db_; }

 private:
  Matrix sigma_;
  std::size_t da_, db_, d_, terms_, stride_;
  double s_log_s_ = 0.0;
};

struct TermList {
  std::vector<double> w;
  std::vector<Vector> a, b;
};

inline Vector basis_vector(std::size_t d, std::size_t i) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

/// σ dephased in the product basis {u_i ⊗ v_j} (columns of ua, ub).
inline TermList dephased_in(const Matrix& sigma, const Matrix& ua, const Matrix& ub) {
  TermList t;
  for (Eigen::Index i = 0; i < ua.cols(); ++i) {
    for (Eigen::Index j = 0; j < ub.cols(); ++j) {
      const Vector psi = kron(Vector(ua.col(i)), Vector(ub.col(j)));
      t.w.push_back(psi.dot(sigma * psi).real());
      t.a.push_back(ua.col(i));
      t.b.push_back(ub.col(j));
    }
  }
  return t;
}

inline TermList warm_start_terms(std::size_t which, const DensityMatrix& sigma,
                                 const std::optional<SeparableEnsemble>& oracle_point) {
  const std::size_t da = sigma.dims()[0], db = sigma.dims()[1];
  const auto ia = static_cast<Eigen::Index>(da), ib = static_cast<Eigen::Index>(db);
  switch (which) {
    case 0: {  // maximally mixed
      TermList t = dephased_in(Matrix::Identity(ia * ib, ia * ib), Matrix::Identity(ia, ia), Matrix::Identity(ib, ib));
      for (double& w : t.w) w /= static_cast<double>(da * db);
      return t;
    }
    case 1:  // computational-basis dephasing
      return dephased_in(sigma.matrix(), Matrix::Identity(ia, ia), Matrix::Identity(ib, ib));
    case 2: {  // dephasing in the marginal eigenbases
      const Matrix ua = herm_eig(partial_trace(sigma, {0}).matrix()).eigenvectors;
      const Matrix ub = herm_eig(partial_trace(sigma, {1}).matrix()).eigenvectors;
      return dephased_in(sigma.matrix(), ua, ub);
    }
    case 3: {  // product of marginals
      const HermitianEig ea = herm_eig(partial_trace(sigma, {0}).matrix());
      const HermitianEig eb = herm_eig(partial_trace(sigma, {1}).matrix());
      TermList t;
      for (Eigen::Index i = 0; i < ia; ++i) {
        for (Eigen::Index j = 0; j < ib; ++j) {
          t.w.push_back(std::max(0.0, ea.eigenvalues(i)) * std::max(0.0, eb.eigenvalues(j)));
          t.a.push_back(ea.eigenvectors.col(i));
          t.b.push_back(eb.eigenvectors.col(j));
        }
      }
      return t;
    }
    default: {  // oracle point
      TermList t;
      for (const ProductTerm& term : oracle_point->terms()) {
        t.w.push_back(term.weight);
        t.a.push_back(std::get<PureState>(term.factors[0]).amplitudes());
        t.b.push_back(std::get<PureState>(term.factors[1]).amplitudes());
      }
      return t;
    }
  }
}

inline SeparableEnsemble certificate_from(const ProductEnsembleObjective& obj, const Eigen::VectorXd& x) {
  const auto dec = obj.decode(x);
  const std::size_t da = obj.dim_a(), db = obj.dim_b();
  std::vector<ProductTerm> terms;
  for (std::size_t k = 0; k < obj.terms(); ++k) {
    const double w = (1.0 - kBarrier) * dec.weights[k];
    if (w < kDropWeight) continue;
    ProductTerm t;
    t.weight = w;
    t.grouping = singleton_grouping(2);
    t.factors.emplace_back(PureState::normalized({da}, dec.a[k]));
    t.factors.emplace_back(PureState::normalized({db}, dec.b[k]));
    terms.push_back(std::move(t));
  }
  ProductTerm mix;
  mix.weight = kBarrier;
  mix.grouping = singleton_grouping(2);
  mix.factors.emplace_back(DensityMatrix::maximally_mixed({da}));
  mix.factors.emplace_back(DensityMatrix::maximally_mixed({db}));
  terms.push_back(std::move(mix));
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  for (auto& t : terms) t.weight /= total;
  return SeparableEnsemble({da, db}, std::move(terms));
}

inline void check_ree_dims(const DensityMatrix& sigma) {
  const Dims& d = sigma.dims();
  const bool ok = d.size() == 2 && d[0] >= 2 && d[0] <= 3 && d[1] >= 2 && d[1] <= 3;
  if (!ok) throw UnsupportedError("relative_entropy_of_entanglement: dims must be [2,2], [2,3], [3,2] or [3,3]");
}

inline constexpr std::size_t kWarmStarts = 4;
inline constexpr std::size_t kOracleSeedPoints = 4096;

}  // namespace detail

/// Upper bound on min_{ρ separable} S(σ||ρ) by multistart L-BFGS over
/// ensembles of (dA·dB)² pure product terms.
inline ReeResult relative_entropy_of_entanglement(const DensityMatrix& sigma,
                                                  const OptimizerBudget& budget = OptimizerBudget::entanglement_defaults()) {
  detail::check_ree_dims(sigma);
  if (budget.restarts < 1) throw DomainError("relative_entropy_of_entanglement: budget.restarts must be at least 1");
  const std::size_t d = sigma.dim();
  const detail::ProductEnsembleObjective objective(sigma, d * d);

  std::optional<SeparableEnsemble> oracle_point;
  if (sigma.dims() == Dims{2, 2} && is_bell_diagonal(sigma)) {
    oracle_point = bell_diagonal_oracle(sigma, detail::kOracleSeedPoints).certificate;
  }
  const std::size_t warm = detail::kWarmStarts + (oracle_point ? 1 : 0);
  const std::size_t n_restarts = std::max(budget.restarts, warm);

  struct Local {
    double value;
    Eigen::VectorXd x;
  };
  const auto locals = parallel_map(n_restarts, budget.workers, [&](std::size_t i) {
    Rng rng(derive_seed(budget.seed, i));
    Eigen::VectorXd x0;
    if (i < warm) {
      const auto t = detail::warm_start_terms(i, sigma, oracle_point);
      x0 = objective.encode(t.w, t.a, t.b, rng);
    } else {
      x0 = objective.random_point(rng);
    }
    const double start = objective.value(x0);
    LocalResult r = lbfgs(objective, x0, budget.max_iters, budget.tolerance);
    if (!(r.value <= start)) return Local{start, x0};
    return Local{r.value, std::move(r.x)};
  });

  std::size_t best = 0;
  std::vector<double> values;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    values.push_back(locals[i].value);
    if (locals[i].value < locals[best].value) best = i;
  }

  SeparableEnsemble cert = detail::certificate_from(objective, locals[best].x);
  DensityMatrix closest = assemble_density(cert);
  const double value = quantum_relative_entropy(sigma, closest);
  return {value, std::move(closest), std::move(cert), budget, detail::top_values_agree(values, false, 1e-6)};
}

/// exp(-N E(σ)).
inline double entanglement_confusion_probability(const DensityMatrix& sigma, std::size_t copies,
                                                 const OptimizerBudget& budget = OptimizerBudget::entanglement_defaults()) {
  const double e = relative_entropy_of_entanglement(sigma, budget).value;
  return std::exp(-static_cast<double>(copies) * e);
}

}  // namespace qre
