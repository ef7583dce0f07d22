#include "adcon/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "adcon/errors.hpp"

namespace adcon {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw PreconditionViolated(message); }

void require_keys(const ordered_json& obj, const std::string& where,
                  const std::set<std::string>& required, const std::set<std::string>& optional) {
  if (!obj.is_object()) fail(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items())
    if (!required.count(key) && !optional.count(key)) fail(where + ": unknown field '" + key + "'");
  for (const std::string& key : required)
    if (!obj.contains(key)) fail(where + ": missing field '" + key + "'");
}

double number_at(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  return v.get<double>();
}

int count_at(const ordered_json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + ": expected an integer");
  const long long n = v.get<long long>();
  if (n < 0 || n > 1'000'000) fail(where + ": count out of range");
  return static_cast<int>(n);
}

std::vector<double> row_at(const ordered_json& v, size_t len, const std::string& where) {
  if (!v.is_array() || v.size() != len)
    fail(where + ": expected an array of " + std::to_string(len) + " numbers");
  std::vector<double> row;
  row.reserve(len);
  for (size_t j = 0; j < len; ++j) row.push_back(number_at(v[j], where));
  return row;
}

// Money serializer distinguishing "not computed" (NaN -> null) from
// "infeasible" (inf -> "inf").
ordered_json money(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Commas and quotes in labels would corrupt rows; escape per RFC 4180.
std::string csv_text(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string quoted = "\"";
  for (char c : v) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

ordered_json setting_to_json(const Setting& s) {
  const int n = s.num_actions();
  const int ell = s.num_signals();
  int max_m = 0;
  for (int k = 0; k < ell; ++k) max_m = std::max(max_m, s.num_outcomes(k));

  ordered_json j;
  j["schema_version"] = 1;
  j["actions"] = ordered_json::array();
  for (int i = 0; i < n; ++i) {
    const std::string label =
        i < static_cast<int>(s.action_labels.size()) ? s.action_labels[i] : "a" + std::to_string(i + 1);
    j["actions"].push_back({{"label", label}, {"cost", s.c[i]}});
  }
  j["signals"] = ordered_json::array();
  for (int k = 0; k < ell; ++k) {
    const std::string label =
        k < static_cast<int>(s.signal_labels.size()) ? s.signal_labels[k] : "s" + std::to_string(k + 1);
    j["signals"].push_back(
        {{"label", label}, {"inspection_cost", s.d[k]}, {"outcomes", s.num_outcomes(k)}});
  }
  j["q0"] = s.q0;
  j["qk"] = s.qk;
  j["rewards"] = ordered_json::array();
  for (int k = 0; k < ell; ++k) {
    ordered_json row = ordered_json::array();
    for (int jj = 0; jj < max_m; ++jj) {
      if (jj < s.num_outcomes(k))
        row.push_back(s.r[k][jj]);
      else
        row.push_back(nullptr);
    }
    j["rewards"].push_back(std::move(row));
  }
  if (s.pay_surcharge != 0.0) j["pay_surcharge"] = s.pay_surcharge;
  return j;
}

Setting setting_from_json(const ordered_json& j) {
  require_keys(j, "instance", {"schema_version", "actions", "signals", "q0", "qk", "rewards"},
               {"pay_surcharge"});
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != 1)
    fail("instance: unsupported schema_version");

  Setting s;
  if (!j["actions"].is_array() || j["actions"].empty()) fail("actions: expected a nonempty array");
  for (size_t i = 0; i < j["actions"].size(); ++i) {
    const ordered_json& a = j["actions"][i];
    const std::string where = "actions[" + std::to_string(i) + "]";
    require_keys(a, where, {"label", "cost"}, {});
    if (!a["label"].is_string()) fail(where + ".label: expected a string");
    s.action_labels.push_back(a["label"].get<std::string>());
    s.c.push_back(number_at(a["cost"], where + ".cost"));
  }
  if (!j["signals"].is_array() || j["signals"].empty()) fail("signals: expected a nonempty array");
  std::vector<int> outcomes;
  for (size_t k = 0; k < j["signals"].size(); ++k) {
    const ordered_json& g = j["signals"][k];
    const std::string where = "signals[" + std::to_string(k) + "]";
    require_keys(g, where, {"label", "inspection_cost", "outcomes"}, {});
    if (!g["label"].is_string()) fail(where + ".label: expected a string");
    s.signal_labels.push_back(g["label"].get<std::string>());
    s.d.push_back(number_at(g["inspection_cost"], where + ".inspection_cost"));
    const int m = count_at(g["outcomes"], where + ".outcomes");
    if (m < 1) fail(where + ".outcomes: must be >= 1");
    outcomes.push_back(m);
  }

  const size_t n = s.c.size();
  const size_t ell = s.d.size();
  if (!j["q0"].is_array() || j["q0"].size() != n) fail("q0: expected one row per action");
  for (size_t i = 0; i < n; ++i)
    s.q0.push_back(row_at(j["q0"][i], ell, "q0[" + std::to_string(i) + "]"));

  if (!j["qk"].is_array() || j["qk"].size() != ell) fail("qk: expected one table per signal");
  for (size_t k = 0; k < ell; ++k) {
    const ordered_json& table = j["qk"][k];
    const std::string where = "qk[" + std::to_string(k) + "]";
    if (!table.is_array() || table.size() != n) fail(where + ": expected one row per action");
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < n; ++i)
      rows.push_back(row_at(table[i], outcomes[k], where + "[" + std::to_string(i) + "]"));
    s.qk.push_back(std::move(rows));
  }

  if (!j["rewards"].is_array() || j["rewards"].size() != ell)
    fail("rewards: expected one row per signal");
  size_t max_m = 0;
  for (size_t k = 0; k < ell; ++k) max_m = std::max(max_m, static_cast<size_t>(outcomes[k]));
  for (size_t k = 0; k < ell; ++k) {
    const ordered_json& row = j["rewards"][k];
    const std::string where = "rewards[" + std::to_string(k) + "]";
    const size_t m = outcomes[k];
    if (!row.is_array() || row.size() < m || row.size() > max_m)
      fail(where + ": expected " + std::to_string(m) + " numbers, optionally null-padded");
    std::vector<double> values;
    for (size_t jj = 0; jj < row.size(); ++jj) {
      const std::string cell = where + "[" + std::to_string(jj) + "]";
      if (jj < m)
        values.push_back(number_at(row[jj], cell));
      else if (!row[jj].is_null())
        fail(cell + ": expected null beyond the signal's outcome count");
    }
    s.r.push_back(std::move(values));
  }

  if (j.contains("pay_surcharge"))
    s.pay_surcharge = number_at(j["pay_surcharge"], "pay_surcharge");
  return s;
}

Setting load_setting_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open instance file: " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path + ": " + e.what());
  }
  return setting_from_json(j);
}

void save_setting_file(const Setting& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write instance file: " + path);
  out << setting_to_json(s).dump(2) << '\n';
}

ordered_json validation_to_json(const ValidationReport& rep) {
  ordered_json j;
  j["ok"] = rep.ok();
  j["errors"] = rep.errors;
  j["warnings"] = rep.warnings;
  j["mlrp_q0"] = rep.mlrp_q0;
  j["mlrp_qk"] = rep.mlrp_qk;
  j["isop"] = rep.isop;
  j["symmetric_isop"] = rep.symmetric_isop;
  return j;
}

ordered_json contract_to_json(const Setting& s, const Contract& ct) {
  ordered_json j;
  j["inspect_prob"] = ct.p;
  j["signal_pay"] = ct.s;
  j["outcome_pay"] = ct.t;
  ordered_json inspected = ordered_json::array();
  for (int k = 0; k < s.num_signals(); ++k)
    if (ct.p[k] > 0.0)
      inspected.push_back(k < static_cast<int>(s.signal_labels.size()) ? s.signal_labels[k]
                                                                       : "s" + std::to_string(k + 1));
  j["inspects"] = std::move(inspected);
  return j;
}

ordered_json report_to_json(const Setting& s, const SolveReport& rep) {
  ordered_json j;
  j["algorithm"] = rep.algorithm;
  j["variant"] = rep.variant;
  j["feasible"] = rep.feasible;
  j["best_mode"] = rep.best_mode;
  j["target"] = rep.target >= 0 ? ordered_json(rep.target + 1) : ordered_json(nullptr);
  if (rep.target >= 0 && rep.target < static_cast<int>(s.action_labels.size()))
    j["target_label"] = s.action_labels[rep.target];
  j["contract"] = rep.feasible ? contract_to_json(s, rep.contract) : ordered_json(nullptr);
  j["expected_pay"] = money(rep.expected_pay);
  j["inspection_cost"] = money(rep.inspection_cost);
  j["utility"] = money(rep.utility);
  j["total_cost"] = money(rep.total_cost);
  ordered_json costs = ordered_json::array();
  for (double v : rep.action_costs) costs.push_back(money(v));
  j["action_costs"] = std::move(costs);
  j["lp_solves"] = rep.lp_solves;
  if (rep.points_evaluated > 0) {
    j["points_evaluated"] = rep.points_evaluated;
    j["grid_resolution"] = rep.grid_resolution;
  }
  j["warnings"] = rep.warnings;
  return j;
}

ordered_json sweep_to_json(const SweepResult& sweep) {
  ordered_json j;
  j["parameter"] = sweep.parameter;
  j["points"] = ordered_json::array();
  for (const SweepPoint& pt : sweep.points) {
    ordered_json p;
    p["value"] = pt.value;
    p["feasible"] = pt.feasible;
    p["adaptive_utility"] = money(pt.adaptive_utility);
    p["adaptive_cost"] = money(pt.adaptive_cost);
    p["policy"] = pt.policy;
    for (const auto& [name, utility] : pt.baselines) p["baseline_" + name] = money(utility);
    if (!pt.baselines.empty()) p["advantage"] = money(pt.advantage);
    j["points"].push_back(std::move(p));
  }
  return j;
}

std::string sweep_to_csv(const SweepResult& sweep) {
  // Baseline comparisons (and the advantage over their best) only exist for
  // sweeps that evaluate them; the columns disappear otherwise.
  const bool compared = !sweep.points.empty() && !sweep.points.front().baselines.empty();
  std::string csv = "value,feasible,adaptive_utility,adaptive_cost,policy";
  if (compared) {
    for (const auto& [name, utility] : sweep.points.front().baselines)
      csv += ",baseline_" + csv_text(name);
    csv += ",advantage";
  }
  csv += "\n";
  for (const SweepPoint& pt : sweep.points) {
    csv += csv_number(pt.value);
    csv += pt.feasible ? ",1," : ",0,";
    csv += csv_number(pt.adaptive_utility) + "," + csv_number(pt.adaptive_cost) + ",";
    csv += csv_text(pt.policy);
    if (compared) {
      for (const auto& [name, utility] : pt.baselines) csv += "," + csv_number(utility);
      csv += "," + csv_number(pt.advantage);
    }
    csv += "\n";
  }
  return csv;
}

ordered_json heatmap_to_json(const HeatmapResult& map) {
  ordered_json j;
  j["initial_tests"] = map.initial_tests;
  j["refined_tests"] = map.refined_tests;
  j["cost"] = map.cost;
  return j;
}

std::string heatmap_to_csv(const HeatmapResult& map) {
  std::string csv = "initial_tests,refined_tests,cost\n";
  for (size_t a = 0; a < map.initial_tests.size(); ++a)
    for (size_t b = 0; b < map.refined_tests.size(); ++b)
      csv += std::to_string(map.initial_tests[a]) + "," + std::to_string(map.refined_tests[b]) +
             "," + csv_number(map.cost[a][b]) + "\n";
  return csv;
}

}  // namespace adcon
