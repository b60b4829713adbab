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

// JSON encodings for states, channels and results.
//
// Matrices are row-major arrays of {"re": x, "im": y}; every state object
// carries a mandatory "dims" list. Entropic quantities are emitted as
// {"nats": x, "bits": x/ln 2}, with the string "inf" for the infinite sentinel.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qre/classical.hpp"
#include "qre/linalg.hpp"
#include "qre/optimize.hpp"
#include "qre/presets.hpp"
#include "qre/separable.hpp"

namespace qre::io {

using nlohmann::json;

inline json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

inline json entropy(double nats) { return {{"nats", number(nats)}, {"bits", number(nats_to_bits(nats))}}; }

inline json complex_entry(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline json matrix_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(complex_entry(m(i, j)));
  }
  return a;
}

inline json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_entry(v(i)));
  return a;
}

inline json state_json(const DensityMatrix& rho) { return {{"dims", rho.dims()}, {"matrix", matrix_json(rho.matrix())}}; }

inline Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object() || !j.contains("re")) throw ValidationError("format", "complex entries must be {re, im} objects");
  return {j.at("re").get<double>(), j.value("im", 0.0)};
}

inline Matrix parse_matrix(const json& entries, std::size_t d) {
  if (!entries.is_array() || entries.size() != d * d) {
    throw ValidationError("format", "matrix must be a row-major array of " + std::to_string(d * d) + " entries");
  }
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = parse_complex(entries[static_cast<std::size_t>(i * n + k)]);
  }
  return m;
}

/// Square matrix with the side inferred from the entry count.
inline Matrix parse_square_matrix(const json& entries) {
  if (!entries.is_array()) throw ValidationError("format", "operator must be an array of entries");
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
  if (d * d != entries.size() || d == 0) throw ValidationError("format", "operator entry count is not a perfect square");
  return parse_matrix(entries, d);
}

inline DensityMatrix parse_state_json(const json& j) {
  if (!j.is_object()) throw ValidationError("format", "state must be a JSON object");
  if (j.contains("preset")) return presets::from_tag(j.at("preset").get<std::string>());
  if (!j.contains("dims")) throw ValidationError("dims", "the dims field is mandatory");
  if (!j.contains("matrix")) throw ValidationError("format", "the matrix field is missing");
  const Dims dims = j.at("dims").get<Dims>();
  return {dims, parse_matrix(j.at("matrix"), total_dimension(dims))};
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("format", origin + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("format", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inline JSON (starting with '{'), a path to a JSON file, or a preset tag.
inline DensityMatrix parse_state_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return parse_state_json(parse_json_text(spec, "state"));
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return parse_state_json(parse_json_text(read_file(spec), spec));
  return presets::from_tag(spec);
}

/// {"kraus": [[op, ...] per party]}, each op a row-major entry array.
inline LocalChannel parse_channel_json(const json& j) {
  if (!j.is_object() || !j.contains("kraus") || !j.at("kraus").is_array()) {
    throw ValidationError("format", "channel must be an object with a kraus array");
  }
  std::vector<std::vector<Matrix>> kraus;
  for (const json& party : j.at("kraus")) {
    if (!party.is_array()) throw ValidationError("format", "each party needs an array of Kraus operators");
    std::vector<Matrix> ops;
    for (const json& op : party) ops.push_back(parse_square_matrix(op.is_object() ? op.at("matrix") : op));
    kraus.push_back(std::move(ops));
  }
  return LocalChannel(std::move(kraus));
}

inline std::vector<Matrix> local_channel_preset(const std::string& tag, std::size_t d) {
  const auto colon = tag.find(':');
  const std::string name = tag.substr(0, colon);
  const double p = colon == std::string::npos ? 0.0 : presets::detail::parse_number(tag.substr(colon + 1), "parameter");
  if (name == "identity") return {Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))};
  if (name == "depolarizing") return channels::depolarizing(d, p);
  if (d != 2) throw UnsupportedError("channel preset '" + name + "' is defined for qubits only");
  if (name == "bitflip") return channels::bit_flip(p);
  if (name == "amp-damp") return channels::amplitude_damping(p);
  throw ValidationError("preset", "unknown channel preset '" + tag + "'");
}

inline json channel_json(const LocalChannel& ch) {
  json parties = json::array();
  for (std::size_t p = 0; p < ch.parties(); ++p) {
    json ops = json::array();
    for (const Matrix& k : ch.kraus(p)) ops.push_back(matrix_json(k));
    parties.push_back(ops);
  }
  return {{"kraus", parties}};
}

/// Channel file, inline JSON, or presets: "depolarizing:0.2" for every party,
/// or "bitflip:0.3+identity" with one preset per party.
inline LocalChannel parse_channel_spec(const std::string& spec, const Dims& dims) {
  if (!spec.empty() && spec.front() == '{') return parse_channel_json(parse_json_text(spec, "channel"));
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return parse_channel_json(parse_json_text(read_file(spec), spec));
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto plus = spec.find('+', start);
    parts.push_back(spec.substr(start, plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  if (parts.size() != 1 && parts.size() != dims.size()) {
    throw ValidationError("format", "give one channel preset, or one per party joined by '+'");
  }
  std::vector<std::vector<Matrix>> kraus;
  for (std::size_t p = 0; p < dims.size(); ++p) kraus.push_back(local_channel_preset(parts[parts.size() == 1 ? 0 : p], dims[p]));
  return LocalChannel(std::move(kraus));
}

inline json block_state_json(const BlockState& s) {
  if (const auto* pure = std::get_if<PureState>(&s)) {
    return {{"kind", "pure"}, {"dims", pure->dims()}, {"amplitudes", vector_json(pure->amplitudes())}};
  }
  const auto& dm = std::get<DensityMatrix>(s);
  return {{"kind", "density"}, {"dims", dm.dims()}, {"matrix", matrix_json(dm.matrix())}};
}

inline json ensemble_json(const SeparableEnsemble& e) {
  json terms = json::array();
  for (const ProductTerm& t : e.terms()) {
    json factors = json::array();
    for (const auto& f : t.factors) factors.push_back(block_state_json(f));
    terms.push_back({{"weight", t.weight}, {"grouping", t.grouping}, {"factors", factors}});
  }
  return {{"dims", e.dims()}, {"terms", terms}};
}

inline BlockState parse_block_state(const json& j) {
  const Dims dims = j.at("dims").get<Dims>();
  const std::string kind = j.value("kind", "density");
  if (kind == "pure") {
    const json& amps = j.at("amplitudes");
    Vector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(amps[i]);
    return PureState(dims, v);
  }
  return DensityMatrix(dims, parse_matrix(j.at("matrix"), total_dimension(dims)));
}

inline SeparableEnsemble parse_ensemble_json(const json& j) {
  if (!j.contains("dims")) throw ValidationError("dims", "the dims field is mandatory");
  std::vector<ProductTerm> terms;
  for (const json& t : j.at("terms")) {
    ProductTerm term;
    term.weight = t.at("weight").get<double>();
    term.grouping = t.at("grouping").get<std::vector<std::vector<std::size_t>>>();
    for (const json& f : t.at("factors")) term.factors.push_back(parse_block_state(f));
    terms.push_back(std::move(term));
  }
  return SeparableEnsemble(j.at("dims").get<Dims>(), std::move(terms));
}

/// Reproducibility record; `workers` is deliberately omitted.
inline json budget_json(const OptimizerBudget& b) {
  return {{"restarts", b.restarts}, {"max_iters", b.max_iters}, {"tolerance", b.tolerance}, {"seed", b.seed}};
}

inline json confusion_report_json(const ConfusionReport& r) {
  return {{"n_trials", r.n_trials},
          {"n_confused", r.n_confused},
          {"target_count", r.target_count},
          {"empirical_rate", r.empirical_rate},
          {"exact_prob", r.exact_prob},
          {"asymptotic_prob", r.asymptotic_prob},
          {"exponent_gap", entropy(r.exponent_gap)},
          {"standard_error", r.standard_error}};
}

/// Scalars keyed by dotted paths; arrays are skipped.
inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    return;
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

}  // namespace qre::io
