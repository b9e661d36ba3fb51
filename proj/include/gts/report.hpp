#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gts/harness.hpp"

namespace gts {

// Shortest decimal text that parses back to exactly x.
std::string format_number(double x);

nlohmann::json to_json(const GtsConfig& config);
nlohmann::json to_json(const AgentSpec& agent);
nlohmann::json to_json(const EnvSpec& env);
nlohmann::json to_json(const ExperimentConfig& cfg);
nlohmann::json to_json(const Summary& s);

// {agent, env, mean, stderr, trials, config} plus stderr_defined and, for
// epidemic runs, a cost summary.
nlohmann::json summary_json(const ExperimentResult& result);

// Per-trial CSV: trial_index, seed, cumulative_reward, [cumulative_cost],
// reward_1 ... reward_T.
void write_trials_csv(std::ostream& os, const ExperimentResult& result);

// One row per experiment: agent, env, mean, stderr, trials.
void write_summary_csv(std::ostream& os, const std::vector<ExperimentResult>& results);

// agent, lambda, trial, mean_reward, mean_cost, budget, cases
void write_sweep_points_csv(std::ostream& os, const ParetoSweepResult& sweep);
// agent, budget, cases for each frontier point
void write_frontiers_csv(std::ostream& os, const ParetoSweepResult& sweep);
nlohmann::json sweep_json(const ParetoSweepResult& sweep);

}  // namespace gts
