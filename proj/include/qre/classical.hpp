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

// Classical relative entropy, binomial inference and its large-deviation
// exponent, and a Monte Carlo simulator of maximum-likelihood confusion.
//
// All logarithms are natural (nats). Divide by ln 2 for bits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "qre/errors.hpp"
#include "qre/parallel.hpp"
#include "qre/rng.hpp"

namespace qre {

/// +∞ marks a support mismatch (some outcome possible under the first
/// argument is impossible under the second). Never produced for finite data.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_infinite(double x) { return std::isinf(x) && x > 0; }

inline constexpr double kLn2 = 0.69314718055994530942;
inline double nats_to_bits(double nats) { return nats / kLn2; }

class ProbDist {
 public:
  explicit ProbDist(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw ValidationError("nonempty", "distribution has no outcomes");
    double total = 0.0;
    for (double x : p_) {
      if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("range", "probability outside [0,1]");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("normalized", "probabilities do not sum to 1");
  }
  ProbDist(std::initializer_list<double> probs) : ProbDist(std::vector<double>(probs)) {}

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const noexcept { return p_; }

 private:
  std::vector<double> p_;
};

/// Σ q_i ln(q_i / p_i), 0 ln 0 = 0, +∞ when q_i > 0 = p_i.
inline double kl_divergence(const ProbDist& q, const ProbDist& p) {
  if (q.size() != p.size()) throw DomainError("kl_divergence: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    if (p[i] == 0.0) return kInfinity;
    s += q[i] * (std::log(q[i]) - std::log(p[i]));
  }
  // Round-off can leave tiny negatives for q ≈ p.
  return s < 0.0 ? 0.0 : s;
}

/// ln[C(N,n) p^n (1-p)^(N-n)]; -∞ for impossible outcomes.
inline double binomial_log_prob(double p, std::size_t n, std::size_t trials) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial: p outside [0,1]");
  if (n > trials) throw DomainError("binomial: n exceeds N");
  const double nn = static_cast<double>(n);
  const double big_n = static_cast<double>(trials);
  double log_p = std::lgamma(big_n + 1.0) - std::lgamma(nn + 1.0) - std::lgamma(big_n - nn + 1.0);
  if (n > 0) {
    if (p == 0.0) return -kInfinity;
    log_p += nn * std::log(p);
  }
  if (n < trials) {
    if (p == 1.0) return -kInfinity;
    log_p += (big_n - nn) * std::log1p(-p);
  }
  return log_p;
}

inline double binomial_exact_prob(double p, std::size_t n, std::size_t trials) {
  return std::exp(binomial_log_prob(p, n, trials));
}

/// Large-N exponent of the binomial probability of observing frequency q:
/// ln P ≈ -N · S(q||p).
inline double stirling_exponent(double p, double q, std::size_t trials) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("stirling_exponent: p must lie in (0,1)");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("stirling_exponent: q outside [0,1]");
  return -static_cast<double>(trials) * kl_divergence(ProbDist{q, 1.0 - q}, ProbDist{p, 1.0 - p});
}

/// exp(-N · S(q_inferred || p_true)).
inline double confusion_probability(const ProbDist& p_true, const ProbDist& q_inferred, std::size_t trials) {
  const double s = kl_divergence(q_inferred, p_true);
  if (is_infinite(s)) return 0.0;
  return std::exp(-static_cast<double>(trials) * s);
}

struct ConfusionReport {
  std::uint64_t n_trials = 0;
  std::uint64_t n_confused = 0;
  std::uint64_t target_count = 0;  // n* = round(N q_0)
  double empirical_rate = 0.0;
  double exact_prob = 0.0;
  double asymptotic_prob = 0.0;
  double exponent_gap = 0.0;  // nats
  double standard_error = 0.0;  // sqrt(P(1-P)/trials) at P = exact_prob
};

namespace detail {
inline constexpr std::uint64_t kTrialsPerShard = 1u << 16;
}

/// Repeats `trials` experiments of N tosses of a p_true coin and counts those
/// with exactly n* = round(N q_target[0]) successes. Trials are split into
/// fixed-size shards with RNG streams derived from (seed, shard), so counts do
/// not depend on `workers`.
inline ConfusionReport simulate_inference(const ProbDist& p_true, const ProbDist& q_target, std::size_t tosses,
                                          std::uint64_t trials, std::uint64_t seed, std::size_t workers = 1) {
  if (p_true.size() != 2 || q_target.size() != 2) {
    throw UnsupportedError("simulate_inference: only binary distributions are simulated");
  }
  if (trials == 0) throw DomainError("simulate_inference: trials must be at least 1");
  const double p = p_true[0];
  const double q = q_target[0];
  const auto target = static_cast<std::uint64_t>(std::llround(static_cast<double>(tosses) * q));

  const std::uint64_t shards = (trials + detail::kTrialsPerShard - 1) / detail::kTrialsPerShard;
  const auto counts = parallel_map(static_cast<std::size_t>(shards), workers, [&](std::size_t shard) {
    Rng rng(derive_seed(seed, shard));
    const std::uint64_t begin = shard * detail::kTrialsPerShard;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + detail::kTrialsPerShard);
    std::uint64_t hits = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      std::uint64_t successes = 0;
      for (std::size_t k = 0; k < tosses; ++k) successes += rng.bernoulli(p) ? 1 : 0;
      hits += successes == target ? 1 : 0;
    }
    return hits;
  });

  ConfusionReport r;
  r.n_trials = trials;
  for (auto c : counts) r.n_confused += c;
  r.target_count = target;
  r.empirical_rate = static_cast<double>(r.n_confused) / static_cast<double>(trials);

  const double log_exact = binomial_log_prob(p, static_cast<std::size_t>(target), tosses);
  r.exact_prob = std::exp(log_exact);
  const double kl = kl_divergence(q_target, p_true);
  r.asymptotic_prob = is_infinite(kl) ? 0.0 : std::exp(-static_cast<double>(tosses) * kl);
  const double rate = tosses == 0 ? 0.0 : -log_exact / static_cast<double>(tosses);
  if (is_infinite(rate) && is_infinite(kl)) {
    r.exponent_gap = 0.0;
  } else if (is_infinite(rate) || is_infinite(kl)) {
    r.exponent_gap = kInfinity;
  } else {
    r.exponent_gap = std::abs(rate - kl);
  }
  r.standard_error = std::sqrt(r.exact_prob * (1.0 - r.exact_prob) / static_cast<double>(trials));
  return r;
}

}  // namespace qre
