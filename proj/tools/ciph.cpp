// ciph: command-line front end.
//
// Exit codes: 0 pass, 1 usage or I/O error, 2 condition failure,
// 3 tensor does not split, 4 model fault during simulation.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ciph/brackets.hpp"
#include "ciph/conditions.hpp"
#include "ciph/dynamics.hpp"
#include "ciph/errors.hpp"
#include "ciph/io.hpp"
#include "ciph/splitter.hpp"
#include "ciph/verify.hpp"

namespace {

using ciph::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConditionFail = 2;
constexpr int kExitNoSplit = 3;
constexpr int kExitModelFault = 4;

std::uint64_t direction_seed() {
  const char* env = std::getenv("CIPH_SEED");
  if (env == nullptr || *env == '\0') return ciph::kDefaultDirectionSeed;
  std::size_t used = 0;
  const std::string text(env);
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw ciph::FormatError("CIPH_SEED is not an integer: " + text);
  return seed;
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

ciph::Vector parse_csv_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ciph::FormatError("--x0: cannot parse \"" + item + "\"");
    values.push_back(v);
  }
  return Eigen::Map<ciph::Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_tensor(const std::string& out, const ciph::Tensor4& t) {
  const json j = ciph::io::tensor_to_json(t);
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    ciph::io::write_json_file(out, j);
  }
}

int run_check(const std::string& path, double tol, const std::string& directions) {
  const auto t = ciph::io::tensor_from_json(ciph::io::read_json_file(path));
  const auto dirs = directions == "standard"
                        ? ciph::standard_directions(t.dim(), direction_seed())
                        : ciph::io::directions_from_json(ciph::io::read_json_file(directions), t.dim());
  const auto summary = ciph::check_all(t, dirs, tol);
  for (const auto& r : summary.reports) emit(ciph::io::report_to_json(r));
  const bool ok = summary.conservative_irreversible();
  emit({{"conservative_irreversible", ok}});
  return ok ? kExitOk : kExitConditionFail;
}

int run_split(const std::string& path, double tol) {
  const auto t = ciph::io::tensor_from_json(ciph::io::read_json_file(path));
  const auto r = ciph::split_tensor(t, tol);
  emit(ciph::io::split_to_json(r));
  return r.split() ? kExitOk : kExitNoSplit;
}

int run_simulate(const std::string& path, double t_end, double dt, const std::string& x0_text,
                 const std::string& out) {
  const auto model = ciph::io::model_from_json(ciph::io::read_json_file(path));
  const auto x0 = parse_csv_vector(x0_text);
  if (x0.size() != model.n) {
    throw ciph::FormatError("--x0 has " + std::to_string(x0.size()) + " entries, model has n = " +
                            std::to_string(model.n));
  }
  const auto tr = ciph::integrate(model, x0, t_end, dt);

  std::vector<double> defects(tr.size(), 0.0);
  json summary = {{"model", model.name}, {"samples", tr.size()}};
  std::optional<ciph::BalanceReport> audit;
  if (tr.size() >= 3) {
    audit = ciph::audit_balances(model, tr);
    defects = audit->energy_defects;
    summary["balance"] = ciph::io::balance_to_json(*audit);
  }

  if (out.empty() || out == "-") {
    ciph::io::write_trajectory_csv(std::cerr, tr, defects);
  } else {
    std::ofstream csv(out);
    if (!csv) throw ciph::FormatError("cannot write " + out);
    ciph::io::write_trajectory_csv(csv, tr, defects);
  }

  if (tr.fault) {
    summary["fault"] = {{"kind", tr.fault->kind},
                        {"last_valid_time", tr.fault->last_valid_time},
                        {"message", tr.fault->message}};
    emit(summary);
    std::cerr << "simulation stopped: " << tr.fault->message << '\n';
    return kExitModelFault;
  }
  const bool ok = audit && audit->closes();
  summary["balances_close"] = ok;
  emit(summary);
  return ok ? kExitOk : kExitConditionFail;
}

// Agreement between the primary checkers and the loop oracles.
int run_oracle(std::uint64_t seed, int trials, int n, double tol) {
  std::mt19937_64 rng(seed);
  const auto dirs = ciph::standard_directions(n, direction_seed());
  int disagreements = 0;
  const auto cons = ciph::verify::random_cons_irrev(seed, n, trials);
  for (int trial = 0; trial < 2 * trials; ++trial) {
    const ciph::Tensor4 t = trial < trials ? ciph::verify::random_tensor(rng, n)
                                           : cons[static_cast<std::size_t>(trial - trials)];
    const double abs_tol = ciph::scaled_tolerance(t, tol);
    const auto o = ciph::verify::exhaustive_condition_check(t, abs_tol, dirs);
    const bool agree = o.sym_a == ciph::check_sym_a(t, abs_tol).pass &&
                       o.cyclic_b == ciph::check_cyclic_b(t, abs_tol).pass &&
                       o.raw_iii == ciph::check_raw_iii(t, abs_tol).pass &&
                       o.quasi_poisson == ciph::check_quasi_poisson(t, abs_tol).pass &&
                       o.psd_c == ciph::check_psd_c(t, dirs, tol).pass;
    if (!agree) ++disagreements;
  }
  emit({{"n", n}, {"tensors", 2 * trials}, {"disagreements", disagreements}});
  return disagreements == 0 ? kExitOk : kExitConditionFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservative-irreversible tensors and irreversible port-Hamiltonian systems"};
  app.require_subcommand(1);

  std::string tensor_path;
  std::string out_path;
  double tol = ciph::kDefaultTolerance;

  auto* check = app.add_subcommand("check", "Check conditions (a), (b), raw (iii), (c), quasi-Poisson");
  std::string directions = "standard";
  check->add_option("tensor", tensor_path, "Tensor JSON file")->required();
  check->add_option("--tol", tol, "Relative tolerance")->capture_default_str();
  check->add_option("--directions", directions, "\"standard\" or a JSON file of directions")
      ->capture_default_str();

  auto* symmetrize = app.add_subcommand("symmetrize", "Symmetrize a tensor in its last two slots");
  symmetrize->add_option("tensor", tensor_path, "Tensor JSON file")->required();
  symmetrize->add_option("-o,--output", out_path, "Output file (stdout if omitted)");

  auto* product = app.add_subcommand("product", "Product tensor A[i,k] B[j,l] of two brackets");
  std::string a_path;
  std::string b_path;
  product->add_option("-A", a_path, "Matrix JSON file for A")->required();
  product->add_option("-B", b_path, "Matrix JSON file for B")->required();
  product->add_option("-o,--output", out_path, "Output file (stdout if omitted)");

  auto* split = app.add_subcommand("split", "Factor a tensor as gamma {s,h}_J {f,h}_J");
  split->add_option("tensor", tensor_path, "Tensor JSON file")->required();
  split->add_option("--tol", tol, "Relative tolerance")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Integrate a model and audit its balances");
  std::string model_path;
  double t_end = 0.0;
  double dt = 1e-3;
  std::string x0;
  simulate->add_option("model", model_path, "Model JSON file")->required();
  simulate->add_option("--t-end", t_end, "Final time")->required();
  simulate->add_option("--dt", dt, "Step size")->capture_default_str();
  simulate->add_option("--x0", x0, "Initial state, comma separated")->required();
  simulate->add_option("-o,--output", out_path, "Trajectory CSV (stderr if omitted)");

  auto* oracle = app.add_subcommand("oracle", "Compare checkers against loop oracles");
  oracle->group("");
  std::uint64_t seed = 1;
  int trials = 1000;
  int dim = 3;
  oracle->add_option("--seed", seed)->capture_default_str();
  oracle->add_option("--trials", trials)->capture_default_str();
  oracle->add_option("--n", dim)->capture_default_str()->check(CLI::Range(1, ciph::verify::kOracleMaxDim));
  oracle->add_option("--tol", tol)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return run_check(tensor_path, tol, directions);
    if (*symmetrize) {
      write_tensor(out_path, ciph::symmetrize_34(ciph::io::tensor_from_json(ciph::io::read_json_file(tensor_path))));
      return kExitOk;
    }
    if (*product) {
      const auto a = ciph::io::matrix_from_json(ciph::io::read_json_file(a_path));
      const auto b = ciph::io::matrix_from_json(ciph::io::read_json_file(b_path));
      write_tensor(out_path, ciph::product_tensor(a, b));
      return kExitOk;
    }
    if (*split) return run_split(tensor_path, tol);
    if (*simulate) return run_simulate(model_path, t_end, dt, x0, out_path);
    if (*oracle) return run_oracle(seed, trials, dim, tol);
  } catch (const ciph::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
