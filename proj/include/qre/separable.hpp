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

// Disentangled states as explicit convex combinations of products over a
// partition of the parties, the PPT test for the bipartite dimensions where it
// decides separability, and local Kraus channels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "qre/linalg.hpp"
#include "qre/random.hpp"
#include "qre/rng.hpp"

namespace qre {

/// State of one block of parties.
using BlockState = std::variant<DensityMatrix, PureState>;

inline const Dims& block_dims(const BlockState& s) {
  return std::visit([](const auto& v) -> const Dims& { return v.dims(); }, s);
}

inline Matrix block_matrix(const BlockState& s) {
  if (const auto* pure = std::get_if<PureState>(&s)) return pure->amplitudes() * pure->amplitudes().adjoint();
  return std::get<DensityMatrix>(s).matrix();
}

/// Parties grouped into blocks; factors[b] is the state on grouping[b]
/// (its parties taken in increasing index order).
struct ProductTerm {
  double weight = 0.0;
  std::vector<BlockState> factors;
  std::vector<std::vector<std::size_t>> grouping;
};

inline std::vector<std::vector<std::size_t>> singleton_grouping(std::size_t parties) {
  std::vector<std::vector<std::size_t>> g(parties);
  for (std::size_t k = 0; k < parties; ++k) g[k] = {k};
  return g;
}

class SeparableEnsemble {
 public:
  SeparableEnsemble(Dims dims, std::vector<ProductTerm> terms) : dims_(std::move(dims)), terms_(std::move(terms)) {
    validate();
  }

  const Dims& dims() const noexcept { return dims_; }
  const std::vector<ProductTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool fully_separable() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const ProductTerm& t) {
      return std::all_of(t.grouping.begin(), t.grouping.end(), [](const auto& b) { return b.size() == 1; });
    });
  }

 private:
  void validate() {
    total_dimension(dims_);
    if (terms_.empty()) throw ValidationError("nonempty", "ensemble has no terms");
    double total = 0.0;
    for (ProductTerm& t : terms_) {
      if (!(t.weight > 0.0)) throw ValidationError("positive_weights", "term weight must be positive");
      total += t.weight;
      if (t.factors.size() != t.grouping.size()) {
        throw ValidationError("grouping", "one factor per grouping block is required");
      }
      std::vector<int> seen(dims_.size(), 0);
      for (std::size_t b = 0; b < t.grouping.size(); ++b) {
        auto& block = t.grouping[b];
        if (block.empty()) throw ValidationError("grouping", "empty grouping block");
        std::sort(block.begin(), block.end());
        Dims expect;
        for (std::size_t party : block) {
          if (party >= dims_.size()) throw ValidationError("grouping", "party index out of range");
          ++seen[party];
          expect.push_back(dims_[party]);
        }
        if (block_dims(t.factors[b]) != expect) {
          throw ValidationError("factor_dims", "factor dims do not match its grouping block");
        }
      }
      if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
        throw ValidationError("grouping", "grouping blocks must partition the parties");
      }
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("weights_sum", "weights do not sum to 1");
  }

  Dims dims_;
  std::vector<ProductTerm> terms_;
};

namespace detail {

/// Tensor of the term's block states, reordered into party order.
inline Matrix assemble_term(const ProductTerm& term, const Dims& dims) {
  Matrix m = Matrix::Identity(1, 1);
  Dims stacked;
  std::vector<std::size_t> stacked_parties;
  for (std::size_t b = 0; b < term.factors.size(); ++b) {
    m = kron(m, block_matrix(term.factors[b]));
    const Dims& bd = block_dims(term.factors[b]);
    stacked.insert(stacked.end(), bd.begin(), bd.end());
    stacked_parties.insert(stacked_parties.end(), term.grouping[b].begin(), term.grouping[b].end());
  }
  // stacked position of each party
  std::vector<std::size_t> order(dims.size());
  for (std::size_t pos = 0; pos < stacked_parties.size(); ++pos) order[stacked_parties[pos]] = pos;
  const bool identity_order = std::is_sorted(stacked_parties.begin(), stacked_parties.end());
  return identity_order ? m : permute_parties(m, stacked, order);
}

}  // namespace detail

inline DensityMatrix assemble_density(const SeparableEnsemble& e) {
  const auto d = static_cast<Eigen::Index>(total_dimension(e.dims()));
  Matrix rho = Matrix::Zero(d, d);
  for (const ProductTerm& t : e.terms()) rho += t.weight * detail::assemble_term(t, e.dims());
  return {e.dims(), std::move(rho)};
}

struct PptReport {
  bool is_ppt = false;
  double min_eigenvalue = 0.0;
  bool conclusive = false;  // PPT ⇔ separable only for 2×2, 2×3 and 3×2
};

inline PptReport ppt_test(const DensityMatrix& rho) {
  if (rho.parties() != 2) throw UnsupportedError("ppt_test: exactly two parties required");
  const Matrix pt = partial_transpose(rho, 1);
  PptReport r;
  r.min_eigenvalue = herm_eig(pt).eigenvalues(0);
  r.is_ppt = r.min_eigenvalue >= -tol::kPsd;
  const Dims& dm = rho.dims();
  r.conclusive = (dm[0] == 2 && (dm[1] == 2 || dm[1] == 3)) || (dm[0] == 3 && dm[1] == 2);
  return r;
}

/// One Kraus list per party. Each list must satisfy Σ K†K = I.
class LocalChannel {
 public:
  explicit LocalChannel(std::vector<std::vector<Matrix>> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("nonempty", "channel has no parties");
    for (std::size_t p = 0; p < kraus_.size(); ++p) {
      const auto& ops = kraus_[p];
      if (ops.empty()) throw ValidationError("nonempty", "party " + std::to_string(p) + " has no Kraus operators");
      const auto d = ops.front().rows();
      Matrix total = Matrix::Zero(d, d);
      for (const Matrix& k : ops) {
        if (k.rows() != d || k.cols() != d) throw ValidationError("shape", "Kraus operators must be square of equal size");
        total += k.adjoint() * k;
      }
      if (max_abs_diff(total, Matrix::Identity(d, d)) > 1e-9) {
        throw ValidationError("trace_preserving", "party " + std::to_string(p) + " Kraus operators do not sum to identity");
      }
    }
  }

  std::size_t parties() const noexcept { return kraus_.size(); }
  const std::vector<Matrix>& kraus(std::size_t party) const { return kraus_.at(party); }
  std::size_t local_dim(std::size_t party) const { return static_cast<std::size_t>(kraus_.at(party).front().rows()); }

  void check_dims(const Dims& dims) const {
    if (dims.size() != kraus_.size()) throw DomainError("local channel: party count mismatch");
    for (std::size_t p = 0; p < dims.size(); ++p) {
      if (local_dim(p) != dims[p]) throw DomainError("local channel: local dimension mismatch for party " + std::to_string(p));
    }
  }

  static LocalChannel identity(const Dims& dims) {
    std::vector<std::vector<Matrix>> k;
    for (std::size_t d : dims) k.push_back({Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))});
    return LocalChannel(std::move(k));
  }

 private:
  std::vector<std::vector<Matrix>> kraus_;
};

/// Single-qudit channels used by fixtures and CLI presets.
namespace channels {

/// ρ → (1-p) ρ + p I/d, as d² + 1 generalized-Pauli Kraus operators.
inline std::vector<Matrix> depolarizing(std::size_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing: p outside [0,1]");
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<Matrix> ops;
  ops.emplace_back(std::sqrt(1.0 - p) * Matrix::Identity(n, n));
  const double w = std::sqrt(p) / static_cast<double>(d);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(d));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      Matrix x = Matrix::Zero(n, n);  // X^a Z^b
      for (Eigen::Index k = 0; k < n; ++k) x((k + a) % n, k) = std::pow(omega, static_cast<double>(b * k));
      ops.emplace_back(w * x);
    }
  }
  return ops;
}

inline std::vector<Matrix> bit_flip(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bit_flip: p outside [0,1]");
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return {std::sqrt(1.0 - p) * Matrix::Identity(2, 2), std::sqrt(p) * x};
}

inline std::vector<Matrix> amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("amplitude_damping: gamma outside [0,1]");
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return {k0, k1};
}

/// Random channel with `n_ops` Kraus operators from a Haar isometry.
inline std::vector<Matrix> random_kraus(std::size_t d, std::size_t n_ops, Rng& rng) {
  const Matrix u = random_unitary(d * n_ops, rng);
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < n_ops; ++k) ops.emplace_back(u.block(static_cast<Eigen::Index>(k) * n, 0, n, n));
  return ops;
}

}  // namespace channels

namespace detail {

/// Advances a mixed-radix counter; false once it wraps around.
inline bool next_multi_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < radix[k]) return true;
    idx[k] = 0;
  }
  return false;
}

inline std::vector<std::size_t> kraus_counts(const LocalChannel& ch) {
  std::vector<std::size_t> r(ch.parties());
  for (std::size_t p = 0; p < r.size(); ++p) r[p] = ch.kraus(p).size();
  return r;
}

}  // namespace detail

/// Σ over Kraus multi-indices of (A_i ⊗ B_j ⊗ ...) ρ (A_i ⊗ B_j ⊗ ...)†,
/// formed on the full space.
inline DensityMatrix apply_channel_to_density(const DensityMatrix& rho, const LocalChannel& ch) {
  ch.check_dims(rho.dims());
  const std::vector<std::size_t> counts = detail::kraus_counts(ch);
  std::vector<std::size_t> idx(counts.size(), 0);
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  do {
    Matrix k = Matrix::Identity(1, 1);
    for (std::size_t p = 0; p < idx.size(); ++p) k = kron(k, ch.kraus(p)[idx[p]]);
    out += k * rho.matrix() * k.adjoint();
  } while (detail::next_multi_index(idx, counts));
  out = 0.5 * (out + out.adjoint()).eval();
  return {rho.dims(), std::move(out)};
}

inline constexpr double kDropWeight = 1e-14;

/// Applies the channel term by term: each Kraus multi-index maps every block
/// factor to K·factor·K† (K|ψ⟩ for pure factors) and scales the weight by the
/// resulting traces, so the output is again a product ensemble with the same
/// groupings. Terms below kDropWeight are dropped.
inline SeparableEnsemble apply_local_channel(const SeparableEnsemble& e, const LocalChannel& ch) {
  ch.check_dims(e.dims());
  const std::vector<std::size_t> counts = detail::kraus_counts(ch);
  std::vector<ProductTerm> out;
  for (const ProductTerm& t : e.terms()) {
    std::vector<std::size_t> idx(counts.size(), 0);
    do {
      ProductTerm nt;
      nt.weight = t.weight;
      nt.grouping = t.grouping;
      for (std::size_t b = 0; b < t.factors.size(); ++b) {
        Matrix k = Matrix::Identity(1, 1);
        for (std::size_t party : t.grouping[b]) k = kron(k, ch.kraus(party)[idx[party]]);
        const BlockState& f = t.factors[b];
        if (const auto* pure = std::get_if<PureState>(&f)) {
          const Vector v = k * pure->amplitudes();
          const double norm2 = v.squaredNorm();
          nt.weight *= norm2;
          if (norm2 > 0.0) {
            nt.factors.emplace_back(PureState::normalized(pure->dims(), v));
          } else {
            nt.factors.emplace_back(*pure);
          }
        } else {
          const auto& dm = std::get<DensityMatrix>(f);
          Matrix m = k * dm.matrix() * k.adjoint();
          const double tr = m.trace().real();
          nt.weight *= tr;
          if (tr > 0.0) {
            m /= tr;
            m = 0.5 * (m + m.adjoint()).eval();
            nt.factors.emplace_back(DensityMatrix(DensityMatrix::Unchecked{}, dm.dims(), std::move(m)));
          } else {
            nt.factors.emplace_back(dm);
          }
        }
      }
      if (nt.weight >= kDropWeight) out.push_back(std::move(nt));
    } while (detail::next_multi_index(idx, counts));
  }
  if (out.empty()) throw DomainError("apply_local_channel: every output term vanished");
  double total = 0.0;
  for (const auto& t : out) total += t.weight;
  for (auto& t : out) t.weight /= total;
  return SeparableEnsemble(e.dims(), std::move(out));
}

/// Seeded fully separable ensemble: flat-simplex weights, Haar-random pure
/// factor on each party.
inline SeparableEnsemble random_separable(const Dims& dims, std::size_t n_terms, std::uint64_t seed) {
  if (n_terms == 0) throw DomainError("random_separable: n_terms must be at least 1");
  total_dimension(dims);
  Rng rng(seed);
  const std::vector<double> w = random_simplex(n_terms, rng);
  std::vector<ProductTerm> terms;
  for (std::size_t i = 0; i < n_terms; ++i) {
    ProductTerm t;
    t.weight = w[i];
    t.grouping = singleton_grouping(dims.size());
    for (std::size_t d : dims) t.factors.emplace_back(random_pure_state({d}, rng));
    terms.push_back(std::move(t));
  }
  // the weights already sum to 1 up to round-off; fold the residue into term 0
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  terms[0].weight += 1.0 - total;
  return SeparableEnsemble(dims, std::move(terms));
}

}  // namespace qre
