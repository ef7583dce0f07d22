#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adcon/errors.hpp"
#include "adcon/experiments.hpp"
#include "adcon/generators.hpp"
#include "adcon/io.hpp"
#include "adcon/model.hpp"
#include "adcon/randomized.hpp"
#include "adcon/report.hpp"
#include "adcon/solvers.hpp"

namespace {

using adcon::Setting;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw adcon::PreconditionViolated("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw adcon::PreconditionViolated("cannot write file: " + path);
  out << text;
}

// Loads an instance and refuses to run solvers on invalid content.
Setting load_checked(const std::string& path) {
  Setting s = adcon::load_setting_file(path);
  const adcon::ValidationReport rep = adcon::validate_setting(s);
  if (!rep.ok()) {
    std::string joined = "invalid instance: " + path;
    for (const std::string& e : rep.errors) joined += "\n  " + e;
    throw adcon::PreconditionViolated(joined);
  }
  return s;
}

int parse_target(const std::string& text, int num_actions) {
  if (text == "best") return adcon::kBestTarget;
  int index = 0;
  try {
    size_t used = 0;
    index = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw adcon::PreconditionViolated("--target expects 'best' or a 1-based action index");
  }
  if (index < 1 || index > num_actions)
    throw adcon::PreconditionViolated("--target index out of range (1.." +
                                      std::to_string(num_actions) + ")");
  return index - 1;
}

std::vector<int> parse_range(const std::string& text, const char* what) {
  const size_t colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      const int lo = std::stoi(text.substr(0, colon));
      const int hi = std::stoi(text.substr(colon + 1));
      if (lo > hi) throw std::invalid_argument(text);
      std::vector<int> range;
      for (int v = lo; v <= hi; ++v) range.push_back(v);
      return range;
    }
    return {std::stoi(text)};
  } catch (const std::exception&) {
    throw adcon::PreconditionViolated(std::string(what) + ": expected 'lo:hi' or a single count");
  }
}

std::vector<adcon::ModelProfile> load_profiles(const std::string& path) {
  if (path.empty()) return adcon::swebench_profiles();
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw adcon::PreconditionViolated(path + ": " + e.what());
  }
  if (!j.is_array() || j.empty())
    throw adcon::PreconditionViolated(path + ": expected a nonempty array of profiles");
  std::vector<adcon::ModelProfile> profiles;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("label") || !entry.contains("mu") ||
        !entry.contains("cost"))
      throw adcon::PreconditionViolated(path + ": each profile needs label, mu, cost");
    for (const auto& [key, value] : entry.items())
      if (key != "label" && key != "mu" && key != "cost")
        throw adcon::PreconditionViolated(path + ": unknown profile field '" + key + "'");
    profiles.push_back({entry["label"].get<std::string>(), entry["mu"].get<double>(),
                        entry["cost"].get<double>()});
  }
  return profiles;
}

adcon::SolveReport comi_as_report(const adcon::ComiReport& comi) {
  adcon::SolveReport rep;
  rep.algorithm = "committed-inspection supremum";
  rep.variant = "comi-sup";
  rep.feasible = comi.feasible;
  rep.best_mode = comi.best_mode;
  rep.target = comi.target;
  rep.contract = comi.witness;
  rep.expected_pay = std::numeric_limits<double>::quiet_NaN();
  rep.inspection_cost = std::numeric_limits<double>::quiet_NaN();
  rep.utility = comi.utility_sup;
  rep.total_cost = comi.total_cost_sup;
  if (comi.feasible && !comi.attained)
    rep.warnings.push_back("supremum is not attained; witness requires vanishing inspection");
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal adaptive contracts for two-tier costly evaluation"};
  app.require_subcommand(1);

  // validate
  std::string validate_path;
  CLI::App* cmd_validate = app.add_subcommand("validate", "check an instance file");
  cmd_validate->add_option("path", validate_path, "instance JSON file")->required();

  // solve
  std::string solve_path, solve_variant = "det", solve_target = "best", solve_out;
  CLI::App* cmd_solve = app.add_subcommand("solve", "compute an optimal contract");
  cmd_solve->add_option("path", solve_path, "instance JSON file")->required();
  cmd_solve->add_option("--variant", solve_variant, "det|comi-sup|coni|umi|uni")
      ->check(CLI::IsMember({"det", "comi-sup", "coni", "umi", "uni"}));
  cmd_solve->add_option("--target", solve_target, "1-based action index or 'best'");
  cmd_solve->add_option("--out", solve_out, "also write the report JSON here");

  // generate
  std::string gen_kind, gen_edge_file, gen_profiles_file, gen_out;
  int gen_initial = 2, gen_refined = 8;
  double gen_eps = 0.5, gen_delta = 125.0, gen_rho = 0.5, gen_reward_scale = 1e6;
  double gen_alpha = 0.0;
  std::uint64_t gen_seed = 0;
  bool gen_smooth = false;
  CLI::App* cmd_generate = app.add_subcommand("generate", "build a parametric instance");
  cmd_generate->add_option("--kind", gen_kind, "graph|binomial|beta-binomial")
      ->required()
      ->check(CLI::IsMember({"graph", "binomial", "beta-binomial"}));
  cmd_generate->add_option("--edge-file", gen_edge_file, "edge list, one 'u v' per line");
  cmd_generate->add_option("--eps", gen_eps, "target action cost scale in (0,1)");
  cmd_generate->add_option("--profiles", gen_profiles_file,
                           "JSON array of {label, mu, cost}; default: embedded benchmark models");
  cmd_generate->add_option("--initial", gen_initial, "initial test count");
  cmd_generate->add_option("--refined", gen_refined, "refined test count");
  cmd_generate->add_option("--delta", gen_delta, "cost per test");
  cmd_generate->add_option("--rho", gen_rho, "test correlation in (0,1)");
  cmd_generate->add_option("--reward-scale", gen_reward_scale, "reward per initial success");
  cmd_generate->add_option("--perturb-alpha", gen_alpha,
                           "resample rows from Dirichlet(alpha * row) before writing");
  cmd_generate->add_option("--seed", gen_seed, "RNG seed (required with --perturb-alpha)");
  cmd_generate->add_flag("--smooth-zeros", gen_smooth, "lift zero entries before perturbing");
  cmd_generate->add_option("--out", gen_out, "write the instance here (default: stdout)");

  // sweep
  std::string sweep_path, sweep_experiment, sweep_param = "reward", sweep_prefix;
  std::vector<double> sweep_factors, sweep_delta_grid;
  std::string sweep_initial_range = "1:8", sweep_refined_range = "0:32";
  double sweep_delta = 125.0;
  int sweep_initial = 2, sweep_refined = 8, jobs = 1;
  bool sweep_json_stdout = false;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep, CSV to stdout");
  cmd_sweep->add_option("path", sweep_path, "instance JSON file to sweep");
  cmd_sweep->add_option("--experiment", sweep_experiment, "alpaca|swebench-policy|swebench-heatmap")
      ->check(CLI::IsMember({"alpaca", "swebench-policy", "swebench-heatmap"}));
  cmd_sweep->add_option("--param", sweep_param, "reward|inspection (instance sweeps)")
      ->check(CLI::IsMember({"reward", "inspection"}));
  cmd_sweep->add_option("--factors", sweep_factors, "scale factors, strictly increasing")
      ->delimiter(',');
  cmd_sweep->add_option("--delta-grid", sweep_delta_grid, "per-test costs, strictly increasing")
      ->delimiter(',');
  cmd_sweep->add_option("--initial", sweep_initial, "initial test count (policy sweep)");
  cmd_sweep->add_option("--refined", sweep_refined, "refined test count (policy sweep)");
  cmd_sweep->add_option("--initial-range", sweep_initial_range, "lo:hi (heatmap)");
  cmd_sweep->add_option("--refined-range", sweep_refined_range, "lo:hi (heatmap)");
  cmd_sweep->add_option("--delta", sweep_delta, "cost per test (heatmap)");
  cmd_sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd_sweep->add_flag("--json", sweep_json_stdout, "print JSON instead of CSV");
  cmd_sweep->add_option("--out-dir", sweep_prefix,
                        "also write <dir>/<experiment>_<parameter>.{csv,json}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_validate) {
      adcon::ValidationReport rep;
      try {
        rep = adcon::validate_setting(adcon::load_setting_file(validate_path));
      } catch (const adcon::PreconditionViolated& e) {
        std::cerr << e.what() << '\n';
        return 2;
      }
      std::cout << adcon::validation_to_json(rep).dump(2) << '\n';
      return rep.ok() ? 0 : 2;
    }

    if (*cmd_solve) {
      const Setting s = load_checked(solve_path);
      const int target = parse_target(solve_target, s.num_actions());
      adcon::SolveReport rep;
      if (solve_variant == "det")
        rep = adcon::brute_force_optimal(s, target);
      else if (solve_variant == "comi-sup")
        rep = comi_as_report(adcon::comi_supremum(s, target));
      else if (solve_variant == "coni")
        rep = adcon::search_randomized(s, target, adcon::Variant::CoNI);
      else if (solve_variant == "umi")
        rep = adcon::search_randomized(s, target, adcon::Variant::UMI);
      else
        rep = adcon::search_randomized(s, target, adcon::Variant::UNI);
      const std::string text = adcon::report_to_json(s, rep).dump(2);
      std::cout << text << '\n';
      if (!solve_out.empty()) write_text_file(solve_out, text + "\n");
      if (!rep.feasible) {
        std::cerr << "target cannot be incentivized\n";
        return 3;
      }
      return 0;
    }

    if (*cmd_generate) {
      Setting s;
      if (gen_kind == "graph") {
        if (gen_edge_file.empty())
          throw adcon::PreconditionViolated("--kind graph requires --edge-file");
        s = adcon::gen_independent_set_instance(adcon::parse_edge_list(read_text_file(gen_edge_file)),
                                                gen_eps);
      } else {
        const std::vector<adcon::ModelProfile> profiles = load_profiles(gen_profiles_file);
        if (gen_kind == "binomial")
          s = adcon::gen_binomial_setting(profiles, gen_initial, gen_refined, gen_delta,
                                          gen_reward_scale);
        else
          s = adcon::gen_beta_binomial_setting(profiles, gen_initial, gen_refined, gen_delta,
                                               gen_rho, gen_reward_scale);
      }
      if (gen_alpha != 0.0) {
        if (cmd_generate->count("--seed") == 0)
          throw adcon::PreconditionViolated("--perturb-alpha requires an explicit --seed");
        s = adcon::perturb_dirichlet(s, gen_alpha, gen_seed, gen_smooth);
      }
      const std::string text = adcon::setting_to_json(s).dump(2) + "\n";
      if (gen_out.empty())
        std::cout << text;
      else
        write_text_file(gen_out, text);
      return 0;
    }

    if (*cmd_sweep) {
      if (sweep_path.empty() == sweep_experiment.empty())
        throw adcon::PreconditionViolated("pass exactly one of an instance path or --experiment");

      std::string name;
      adcon::SweepResult sweep;
      adcon::HeatmapResult heatmap;
      bool is_heatmap = false;
      if (sweep_experiment == "swebench-policy") {
        name = "swebench_policy_delta";
        std::vector<double> grid = sweep_delta_grid;
        if (grid.empty())
          grid = {1,    2,    5,     10,    20,    50,    100,   200,  500,
                  1000, 2000, 5000,  10000, 20000, 50000, 100000};
        sweep = adcon::swebench_policy_sweep(adcon::swebench_profiles(), sweep_initial,
                                             sweep_refined, grid, jobs);
      } else if (sweep_experiment == "swebench-heatmap") {
        name = "swebench_heatmap_tests";
        is_heatmap = true;
        heatmap = adcon::swebench_design_heatmap(
            adcon::swebench_profiles(), parse_range(sweep_initial_range, "--initial-range"),
            parse_range(sweep_refined_range, "--refined-range"), sweep_delta, jobs);
      } else {
        const Setting s =
            sweep_experiment == "alpaca" ? adcon::alpaca_setting() : load_checked(sweep_path);
        const std::string stem = sweep_experiment == "alpaca" ? "alpaca" : "instance";
        std::vector<double> factors = sweep_factors;
        if (factors.empty())
          factors = {0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0};
        if (sweep_param == "reward") {
          name = stem + "_reward";
          sweep = adcon::sweep_reward(s, factors, jobs);
        } else {
          name = stem + "_inspection_cost";
          sweep = adcon::sweep_inspection_cost(s, factors, jobs);
        }
      }

      const std::string csv = is_heatmap ? adcon::heatmap_to_csv(heatmap) : adcon::sweep_to_csv(sweep);
      const std::string json_text =
          (is_heatmap ? adcon::heatmap_to_json(heatmap) : adcon::sweep_to_json(sweep)).dump(2) +
          "\n";
      std::cout << (sweep_json_stdout ? json_text : csv);
      if (!sweep_prefix.empty()) {
        const std::string base = sweep_prefix + "/" + name;
        write_text_file(base + ".csv", csv);
        write_text_file(base + ".json", json_text);
      }
      return 0;
    }
  } catch (const adcon::PreconditionViolated& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const adcon::EnumerationTooLarge& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const adcon::SearchGuardExceeded& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
