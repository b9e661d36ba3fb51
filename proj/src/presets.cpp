#include "gts/presets.hpp"

namespace gts {

AgentSpec random_agent() { return {AgentKind::random, {}, {}, "Random"}; }
AgentSpec ts_agent() { return {AgentKind::ts, {}, {}, "TS"}; }
AgentSpec ucb1_agent() { return {AgentKind::ucb1, {}, {}, "UCB1"}; }

AgentSpec gts_agent(std::size_t population, std::size_t mutations, std::string label) {
    AgentSpec spec{AgentKind::gts, {}, {}, std::move(label)};
    spec.gts.population_size = population;
    spec.gts.mutation_count = mutations;
    if (spec.label.empty()) spec.label = "GTS-p" + std::to_string(population);
    return spec;
}

AgentSpec ablation_agent(bool crossover, bool mutation) {
    AgentSpec spec = gts_agent(100, 10);
    spec.gts.crossover = crossover;
    spec.gts.mutation = mutation;
    spec.label = std::string("GTS (C") + (crossover ? "+" : "-") + ", M" + (mutation ? "+" : "-") + ")";
    return spec;
}

std::vector<EnvSpec> table1_envs() {
    std::vector<EnvSpec> envs;
    for (Period period : {Period{}, Period{10}})
        for (std::size_t k : {5, 10, 50}) envs.push_back(MabSpec{k, period, {}});
    return envs;
}

std::vector<EnvSpec> table2_envs() {
    std::vector<EnvSpec> envs;
    for (std::size_t k : {5, 10, 50}) envs.push_back(MabSpec{k, Period{10}, {}});
    return envs;
}

std::vector<Cell> table1_cells() {
    const std::vector<AgentSpec> agents{random_agent(),   ts_agent(),        ucb1_agent(),
                                        gts_agent(10, 10), gts_agent(25, 10), gts_agent(100, 10)};
    std::vector<Cell> cells;
    for (const auto& env : table1_envs())
        for (const auto& agent : agents) cells.push_back({agent, env});
    return cells;
}

std::vector<Cell> table2_cells() {
    const std::vector<AgentSpec> agents{ts_agent(), ablation_agent(false, false),
                                        ablation_agent(true, false), ablation_agent(false, true),
                                        ablation_agent(true, true)};
    std::vector<Cell> cells;
    for (const auto& env : table2_envs())
        for (const auto& agent : agents) cells.push_back({agent, env});
    return cells;
}

std::vector<Cell> population_sweep_cells(const std::vector<std::size_t>& sizes) {
    std::vector<Cell> cells;
    for (const auto& env : table1_envs())
        for (std::size_t m : sizes) cells.push_back({gts_agent(m, 10), env});
    return cells;
}

std::vector<Cell> mutation_sweep_cells(const std::vector<std::size_t>& counts) {
    std::vector<Cell> cells;
    for (const auto& env : table1_envs())
        for (std::size_t mu : counts)
            cells.push_back({gts_agent(100, mu, "GTS-m" + std::to_string(mu)), env});
    return cells;
}

std::vector<double> default_lambdas() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

}  // namespace gts
