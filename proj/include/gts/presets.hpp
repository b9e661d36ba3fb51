#pragma once

#include <string>
#include <vector>

#include "gts/harness.hpp"

namespace gts {

// One (agent, environment) cell of a reproduction grid.
struct Cell {
    AgentSpec agent;
    EnvSpec env;
};

AgentSpec random_agent();
AgentSpec ts_agent();
AgentSpec ucb1_agent();
AgentSpec gts_agent(std::size_t population, std::size_t mutations, std::string label = {});
AgentSpec ablation_agent(bool crossover, bool mutation);

// Stationary and nonstationary (n = 10) MAB-5/10/50.
std::vector<EnvSpec> table1_envs();
std::vector<EnvSpec> table2_envs();

// Random, TS, UCB1, GTS-p10, GTS-p25, GTS-p100 (mu = 10) on table1_envs().
std::vector<Cell> table1_cells();
// TS and the four (C+-, M+-) GTS-p100 variants on the nonstationary envs.
std::vector<Cell> table2_cells();
std::vector<Cell> population_sweep_cells(const std::vector<std::size_t>& sizes = {10, 25, 100});
std::vector<Cell> mutation_sweep_cells(const std::vector<std::size_t>& counts = {1, 5, 10, 25, 50, 100});

std::vector<double> default_lambdas();  // 0, 0.25, 0.5, 0.75, 1

}  // namespace gts
