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


// qre: command-line front end. One JSON object per invocation on stdout, or
// CSV with --csv / --sweep. Exit codes: 0 ok, 2 validation error,
// 3 unsupported configuration, 1 anything else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qre/io.hpp"
#include "qre/qre.hpp"

namespace {

using nlohmann::json;
using namespace qre;

constexpr double kLoccTolerance = 2e-2;

struct HelpShown {};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QRE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("seed", "QRE_SEED must be a non-negative integer");
    }
  }
  return 0;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ProbDist parse_dist(const std::string& text, const char* name) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("format", std::string("--") + name + ": cannot parse '" + item + "'");
    }
  }
  return ProbDist(std::move(p));
}

json dist_json(const ProbDist& d) { return d.values(); }

struct BudgetOptions {
  std::size_t restarts;
  std::size_t max_iters;
  double tolerance;
  std::uint64_t seed;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--restarts", restarts, "multistart restarts")->capture_default_str();
    cmd->add_option("--max-iters", max_iters, "iteration cap per restart")->capture_default_str();
    cmd->add_option("--tol", tolerance, "stopping tolerance on objective improvement")->capture_default_str();
    cmd->add_option("--seed", seed, "RNG seed (default: $QRE_SEED or 0)")->capture_default_str();
  }

  OptimizerBudget budget(std::size_t workers) const {
    OptimizerBudget b;
    b.restarts = restarts;
    b.max_iters = max_iters;
    b.tolerance = tolerance;
    b.seed = seed;
    b.workers = workers;
    return b;
  }
};

/// Parses and runs one command; returns its JSON report.
json run_command(const std::vector<std::string>& args, bool& csv) {
  CLI::App app{"Quantum relative entropy and relative entropy of entanglement toolkit", "qre"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t workers = 1;
  app.add_flag("--csv", csv, "flatten the scalar report into CSV");
  app.add_option("--workers", workers, "worker threads for restarts and shards (results do not depend on it)");

  const std::uint64_t seed0 = default_seed();

  std::string q_text, p_text;
  auto* kl = app.add_subcommand("kl", "classical relative entropy S(q||p)");
  kl->add_option("--q", q_text, "inferred distribution, comma separated")->required();
  kl->add_option("--p", p_text, "true distribution, comma separated")->required();

  std::size_t tosses = 1;
  std::uint64_t trials = 100000;
  std::uint64_t sim_seed = seed0;
  auto* sim = app.add_subcommand("confuse-sim", "Monte Carlo of maximum-likelihood confusion for a binary source");
  sim->add_option("--p", p_text, "true distribution")->required();
  sim->add_option("--q", q_text, "target inferred distribution")->required();
  sim->add_option("--N", tosses, "tosses per experiment")->capture_default_str();
  sim->add_option("--trials", trials, "number of experiments")->capture_default_str();
  sim->add_option("--seed", sim_seed, "RNG seed (default: $QRE_SEED or 0)");

  std::string sigma_spec, rho_spec, channel_spec;
  std::size_t copies = 1;
  auto* qre_cmd = app.add_subcommand("qre", "quantum relative entropy S(sigma||rho)");
  qre_cmd->add_option("--sigma", sigma_spec, "state: preset, JSON file, or inline JSON")->required();
  qre_cmd->add_option("--rho", rho_spec, "state: preset, JSON file, or inline JSON")->required();
  qre_cmd->add_option("--N", copies, "copies for the confusion probability")->capture_default_str();

  BudgetOptions measured_opts{32, 2000, 1e-9, seed0};
  auto* measured = app.add_subcommand("measured-qre", "best projective-measurement relative entropy on N copies");
  measured->add_option("--sigma", sigma_spec)->required();
  measured->add_option("--rho", rho_spec)->required();
  measured->add_option("--N", copies, "copies")->capture_default_str();
  measured_opts.add_to(measured);

  const OptimizerBudget ree_defaults = OptimizerBudget::entanglement_defaults();
  BudgetOptions ree_opts{ree_defaults.restarts, ree_defaults.max_iters, ree_defaults.tolerance, seed0};
  std::size_t oracle_grid = 0;
  auto* ree = app.add_subcommand("ree", "relative entropy of entanglement (bipartite, up to 3x3)");
  ree->add_option("--sigma", sigma_spec)->required();
  ree->add_option("--N", copies, "copies for the confusion probability")->capture_default_str();
  ree->add_option("--oracle-grid", oracle_grid, "also run the Bell-diagonal sweep oracle with this many points");
  ree_opts.add_to(ree);

  auto* ppt = app.add_subcommand("ppt", "partial-transpose test (decisive for 2x2 and 2x3)");
  ppt->add_option("--rho", rho_spec)->required();

  BudgetOptions locc_opts = ree_opts;
  auto* locc = app.add_subcommand("locc-check", "entanglement before and after a local channel");
  locc->add_option("--sigma", sigma_spec)->required();
  locc->add_option("--channel", channel_spec, "channel JSON file, inline JSON, or preset(s)")->required();
  locc_opts.add_to(locc);

  app.add_subcommand("presets", "list registered state presets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    throw HelpShown{};
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    throw HelpShown{};
  }

  json out;
  if (kl->parsed()) {
    const ProbDist q = parse_dist(q_text, "q"), p = parse_dist(p_text, "p");
    out = {{"command", "kl"}, {"q", dist_json(q)}, {"p", dist_json(p)}, {"kl", io::entropy(kl_divergence(q, p))}};
  } else if (sim->parsed()) {
    const ProbDist p = parse_dist(p_text, "p"), q = parse_dist(q_text, "q");
    const ConfusionReport r = simulate_inference(p, q, tosses, trials, sim_seed, workers);
    out = {{"command", "confuse-sim"}, {"p", dist_json(p)}, {"q", dist_json(q)}, {"N", tosses}, {"seed", sim_seed}};
    out.update(io::confusion_report_json(r));
  } else if (qre_cmd->parsed()) {
    const DensityMatrix sigma = io::parse_state_spec(sigma_spec);
    const DensityMatrix rho = io::parse_state_spec(rho_spec);
    out = {{"command", "qre"},
           {"qre", io::entropy(quantum_relative_entropy(sigma, rho))},
           {"N", copies},
           {"confusion_probability", quantum_confusion_probability(sigma, rho, copies)}};
  } else if (measured->parsed()) {
    const DensityMatrix sigma = io::parse_state_spec(sigma_spec);
    const DensityMatrix rho = io::parse_state_spec(rho_spec);
    const OptimizerBudget budget = measured_opts.budget(workers);
    const auto r = n_copy_measured_relative_entropy(sigma, rho, copies, budget);
    json effects = json::array();
    for (const Matrix& a : r.best_povm.effects()) effects.push_back(io::matrix_json(a));
    out = {{"command", "measured-qre"},
           {"N", copies},
           {"measured_qre", io::entropy(r.value)},
           {"qre", io::entropy(quantum_relative_entropy(sigma, rho))},
           {"converged", r.converged},
           {"n_restarts", r.n_restarts},
           {"budget", io::budget_json(budget)},
           {"best_povm", effects}};
  } else if (ree->parsed()) {
    const DensityMatrix sigma = io::parse_state_spec(sigma_spec);
    const OptimizerBudget budget = ree_opts.budget(workers);
    const ReeResult r = relative_entropy_of_entanglement(sigma, budget);
    out = {{"command", "ree"},
           {"ree", io::entropy(r.value)},
           {"N", copies},
           {"confusion_probability", std::exp(-static_cast<double>(copies) * r.value)},
           {"converged", r.converged},
           {"budget", io::budget_json(budget)},
           {"closest_state", io::state_json(r.closest_state)},
           {"certificate", io::ensemble_json(r.certificate)}};
    if (oracle_grid > 0) out["oracle"] = io::entropy(ree_oracle_bell_diagonal(sigma, oracle_grid));
  } else if (ppt->parsed()) {
    const DensityMatrix rho = io::parse_state_spec(rho_spec);
    const PptReport r = ppt_test(rho);
    out = {{"command", "ppt"},
           {"dims", rho.dims()},
           {"is_ppt", r.is_ppt},
           {"min_eigenvalue", r.min_eigenvalue},
           {"conclusive", r.conclusive}};
  } else if (locc->parsed()) {
    const DensityMatrix sigma = io::parse_state_spec(sigma_spec);
    const LocalChannel ch = io::parse_channel_spec(channel_spec, sigma.dims());
    const OptimizerBudget budget = locc_opts.budget(workers);
    const ReeResult before = relative_entropy_of_entanglement(sigma, budget);
    const DensityMatrix mapped = apply_channel_to_density(sigma, ch);
    const ReeResult after = relative_entropy_of_entanglement(mapped, budget);
    // The mapped certificate stays separable, so S(Λσ||Λρ*) bounds E(Λσ) from above.
    const SeparableEnsemble mapped_cert = apply_local_channel(before.certificate, ch);
    const DensityMatrix mapped_closest = assemble_density(mapped_cert);
    const double form_error =
        max_abs_diff(mapped_closest.matrix(), apply_channel_to_density(before.closest_state, ch).matrix());
    out = {{"command", "locc-check"},
           {"ree_before", io::entropy(before.value)},
           {"ree_after", io::entropy(after.value)},
           {"tolerance", io::entropy(kLoccTolerance)},
           {"monotone", after.value <= before.value + kLoccTolerance},
           {"certificate_bound", io::entropy(quantum_relative_entropy(mapped, mapped_closest))},
           {"form_invariance_error", form_error},
           {"budget", io::budget_json(budget)}};
  } else {
    out = {{"command", "presets"}, {"presets", presets::registered()}};
  }
  out["timestamp"] = utc_timestamp();
  return out;
}

struct Sweep {
  std::string name;
  std::vector<double> values;
};

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("sweep", "expected name=a:b:step");
  Sweep s{text.substr(0, eq), {}};
  std::vector<double> abc;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      abc.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("sweep", "cannot parse '" + item + "'");
    }
  }
  if (abc.size() != 3 || !(abc[2] > 0.0) || abc[1] < abc[0]) throw ValidationError("sweep", "expected a:b:step with a <= b, step > 0");
  const auto count = static_cast<std::size_t>(std::floor((abc[1] - abc[0]) / abc[2] + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) s.values.push_back(abc[0] + static_cast<double>(k) * abc[2]);
  return s;
}

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Replaces "{name}" in every argument; without a placeholder, passes --name value.
std::vector<std::string> substitute(const std::vector<std::string>& args, const std::string& name, const std::string& value) {
  const std::string key = "{" + name + "}";
  std::vector<std::string> out;
  bool found = false;
  for (std::string a : args) {
    for (auto pos = a.find(key); pos != std::string::npos; pos = a.find(key, pos + value.size())) {
      a.replace(pos, key.size(), value);
      found = true;
    }
    out.push_back(std::move(a));
  }
  if (!found) {
    out.push_back("--" + name);
    out.push_back(value);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void print_csv(const std::vector<std::pair<std::string, json>>& rows, const std::string& sweep_name) {
  std::vector<std::string> header;
  std::vector<std::vector<std::pair<std::string, std::string>>> flat;
  for (const auto& row : rows) {
    std::vector<std::pair<std::string, std::string>> f;
    io::flatten(row.second, "", f);
    flat.push_back(std::move(f));
  }
  if (!sweep_name.empty()) header.push_back(sweep_name);
  for (const auto& kv : flat.front()) {
    if (kv.first != "timestamp") header.push_back(kv.first);
  }
  for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << csv_field(header[i]);
  std::cout << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool first = true;
    if (!sweep_name.empty()) {
      std::cout << csv_field(rows[r].first);
      first = false;
    }
    for (const auto& kv : flat[r]) {
      if (kv.first == "timestamp") continue;
      std::cout << (first ? "" : ",") << csv_field(kv.second);
      first = false;
    }
    std::cout << "\n";
  }
}

int report_error(const char* kind, const std::string& invariant, const std::string& message, int code) {
  json err = {{"error", {{"kind", kind}, {"message", message}}}};
  if (!invariant.empty()) err["error"]["invariant"] = invariant;
  std::cout << err.dump() << "\n";
  std::cerr << "qre: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<Sweep> sweep;
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--sweep" || args[i].rfind("--sweep=", 0) == 0) {
        std::string spec;
        if (args[i] == "--sweep") {
          if (i + 1 >= args.size()) throw ValidationError("sweep", "--sweep needs name=a:b:step");
          spec = args[i + 1];
          args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        } else {
          spec = args[i].substr(8);
          args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        }
        sweep = parse_sweep(spec);
        break;
      }
    }

    bool csv = false;
    if (!sweep) {
      const json out = run_command(args, csv);
      if (csv) {
        print_csv({{"", out}}, "");
      } else {
        std::cout << out.dump(2) << "\n";
      }
      return 0;
    }
    std::vector<std::pair<std::string, json>> rows;
    for (double v : sweep->values) {
      const std::string value = format_value(v);
      rows.emplace_back(value, run_command(substitute(args, sweep->name, value), csv));
    }
    print_csv(rows, sweep->name);
    return 0;
  } catch (const HelpShown&) {
    return 0;
  } catch (const CLI::ParseError& e) {
    return report_error("usage", "", e.what(), 2);
  } catch (const qre::ValidationError& e) {
    return report_error("validation", e.invariant(), e.what(), 2);
  } catch (const qre::DomainError& e) {
    return report_error("domain", "", e.what(), 2);
  } catch (const qre::UnsupportedError& e) {
    return report_error("unsupported", "", e.what(), 3);
  } catch (const nlohmann::json::exception& e) {
    return report_error("validation", "format", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("internal", "", e.what(), 1);
  }
}
