#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gts/environments.hpp"
#include "gts/gts.hpp"
#include "gts/metrics.hpp"

namespace gts {

enum class AgentKind { random, random_fixed, ts, ucb1, gts, indcomb_gts, indcomb_ts };

std::string to_string(AgentKind kind);
AgentKind parse_agent_kind(const std::string& name);  // throws ConfigError

struct AgentSpec {
    AgentKind kind = AgentKind::ts;
    GtsConfig gts;                      // hyperparameters; seeds are replaced per trial
    std::optional<std::size_t> arms;    // if set, must match the environment
    std::string label;                  // display name, defaults to the kind

    std::string name() const { return label.empty() ? to_string(kind) : label; }
};

struct MabSpec {
    std::size_t arms = 10;
    Period period;
    std::vector<double> probs;  // fixed starting probabilities; empty = draw U(0,1)
};

struct EpidemicSpec {
    std::vector<std::size_t> levels{4, 4, 4};
    Period period;
    double lambda = 1.0;
    ScalarizeMode mode = ScalarizeMode::convex;
};

using EnvSpec = std::variant<MabSpec, EpidemicSpec>;

std::string describe(const EnvSpec& env);  // "MAB-10", "NS MAB-10", "EPI-4x4x4", ...

struct ExperimentConfig {
    AgentSpec agent;
    EnvSpec env = MabSpec{};
    std::size_t horizon = 100;
    std::size_t trials = 50;
    std::uint64_t base_seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;  // throws ConfigError
};

struct TrialSeeds {
    std::uint64_t trial;
    std::uint64_t env;
    std::uint64_t reward;
    std::uint64_t action;
    std::uint64_t ga;
};

TrialSeeds trial_seeds(std::uint64_t base_seed, std::size_t trial_index);

struct Trajectory {
    std::size_t trial_index = 0;
    std::uint64_t seed = 0;
    std::vector<double> rewards;
    std::vector<double> costs;  // epidemic runs only
    double cumulative_reward = 0.0;
    double cumulative_cost = 0.0;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

Trajectory run_trial(const ExperimentConfig& cfg, std::size_t trial_index);

struct ExperimentResult {
    ExperimentConfig config;
    Summary reward;
    std::optional<Summary> cost;  // epidemic runs only
    std::vector<Trajectory> trials;
};

// Runs every trial (in parallel when threads != 1); results are ordered by
// trial index and independent of scheduling.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One (agent, lambda) cell of a Pareto sweep.
struct SweepRun {
    std::string agent;
    double lambda = 0.0;
    std::vector<double> mean_reward;  // per trial, raw environment reward / T
    std::vector<double> mean_cost;    // per trial, stringency / T
    std::vector<ParetoPoint> points;  // per trial, after pooled binning
    ParetoPoint average;              // mean budget and mean cases over trials
};

struct AgentFrontier {
    std::string agent;
    std::vector<ParetoPoint> frontier;  // over the per-lambda averages
};

struct ParetoSweepResult {
    std::vector<SweepRun> runs;
    std::vector<AgentFrontier> frontiers;
    std::size_t bins = 10;
};

// Runs the epidemic experiment for every agent and lambda, bins reward and
// cost over the pooled trials of the whole sweep, and extracts frontiers.
ParetoSweepResult pareto_sweep(const ExperimentConfig& base, const std::vector<AgentSpec>& agents,
                               const std::vector<double>& lambdas, std::size_t bins = 10);

// Every budget level 0, 1/(bins-1), ..., 1 at which both frontiers have a
// point; at each one a's best cases must not exceed b's.
bool frontier_weakly_dominates(const std::vector<ParetoPoint>& a, const std::vector<ParetoPoint>& b,
                               std::size_t bins = 10);

}  // namespace gts
