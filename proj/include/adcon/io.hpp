#pragma once

#include <string>

#include <json.hpp>

#include "adcon/experiments.hpp"
#include "adcon/model.hpp"
#include "adcon/report.hpp"

namespace adcon {

// Instance files are JSON objects with schema_version 1:
//   actions:  [{label, cost}, ...]
//   signals:  [{label, inspection_cost, outcomes}, ...]
//   q0:       n x ell row-stochastic matrix
//   qk:       per signal, an n x m_k row-stochastic matrix
//   rewards:  ell rows padded with null beyond each signal's outcome count
//   pay_surcharge: optional flat cost added to reported totals
// Unknown fields anywhere are rejected. Shape errors throw
// PreconditionViolated; content checks are validate_setting's job.
nlohmann::ordered_json setting_to_json(const Setting& s);
Setting setting_from_json(const nlohmann::ordered_json& j);

Setting load_setting_file(const std::string& path);
void save_setting_file(const Setting& s, const std::string& path);

nlohmann::ordered_json validation_to_json(const ValidationReport& rep);
nlohmann::ordered_json contract_to_json(const Setting& s, const Contract& ct);
// Money fields that are not finite serialize as null (not computed) or the
// string "inf" (infeasible).
nlohmann::ordered_json report_to_json(const Setting& s, const SolveReport& rep);

nlohmann::ordered_json sweep_to_json(const SweepResult& sweep);
std::string sweep_to_csv(const SweepResult& sweep);
nlohmann::ordered_json heatmap_to_json(const HeatmapResult& map);
std::string heatmap_to_csv(const HeatmapResult& map);

}  // namespace adcon
