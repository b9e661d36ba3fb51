#include "gts/report.hpp"

#include <charconv>
#include <ostream>

namespace gts {

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

nlohmann::json to_json(const GtsConfig& c) {
    return {{"population_size", c.population_size},
            {"init_upper", c.init_upper},
            {"selection_ratio", c.selection_ratio},
            {"mutation_count", c.mutation_count},
            {"clamp_min", c.clamp_min},
            {"crossover", c.crossover},
            {"mutation", c.mutation},
            {"weighted_crossover", c.weighted_crossover}};
}

nlohmann::json to_json(const AgentSpec& agent) {
    nlohmann::json j{{"kind", to_string(agent.kind)}, {"label", agent.name()}};
    if (agent.kind == AgentKind::gts || agent.kind == AgentKind::indcomb_gts) j["gts"] = to_json(agent.gts);
    if (agent.arms) j["arms"] = *agent.arms;
    return j;
}

nlohmann::json to_json(const EnvSpec& env) {
    if (const auto* mab = std::get_if<MabSpec>(&env)) {
        nlohmann::json j{{"kind", "mab"},
                         {"arms", mab->arms},
                         {"period", mab->period ? nlohmann::json(*mab->period) : nlohmann::json(nullptr)}};
        if (!mab->probs.empty()) j["probs"] = mab->probs;
        return j;
    }
    const auto& epi = std::get<EpidemicSpec>(env);
    return {{"kind", "epidemic"},
            {"levels", epi.levels},
            {"period", epi.period ? nlohmann::json(*epi.period) : nlohmann::json(nullptr)},
            {"lambda", epi.lambda},
            {"scalarize", epi.mode == ScalarizeMode::convex ? "convex" : "literal"}};
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
    return {{"agent", to_json(cfg.agent)},
            {"env", to_json(cfg.env)},
            {"horizon", cfg.horizon},
            {"trials", cfg.trials},
            {"base_seed", cfg.base_seed}};
}

nlohmann::json to_json(const Summary& s) {
    return {{"mean", s.mean}, {"stderr", s.stderr_}, {"trials", s.trials}, {"stderr_defined", s.stderr_defined}};
}

nlohmann::json summary_json(const ExperimentResult& result) {
    nlohmann::json j{{"agent", result.config.agent.name()},
                     {"env", describe(result.config.env)},
                     {"mean", result.reward.mean},
                     {"stderr", result.reward.stderr_},
                     {"stderr_defined", result.reward.stderr_defined},
                     {"trials", result.reward.trials},
                     {"config", to_json(result.config)}};
    if (result.cost) j["cost"] = to_json(*result.cost);
    return j;
}

namespace {

// Quotes a text field when it contains a separator, quote or line break.
std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

void write_trials_csv(std::ostream& os, const ExperimentResult& result) {
    const bool with_cost = result.cost.has_value();
    os << "trial_index,seed,cumulative_reward";
    if (with_cost) os << ",cumulative_cost";
    for (std::size_t t = 1; t <= result.config.horizon; ++t) os << ",reward_" << t;
    os << '\n';
    for (const auto& tr : result.trials) {
        os << tr.trial_index << ',' << tr.seed << ',' << format_number(tr.cumulative_reward);
        if (with_cost) os << ',' << format_number(tr.cumulative_cost);
        for (double r : tr.rewards) os << ',' << format_number(r);
        os << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<ExperimentResult>& results) {
    os << "agent,env,mean,stderr,trials\n";
    for (const auto& r : results)
        os << csv_field(r.config.agent.name()) << ',' << csv_field(describe(r.config.env)) << ','
           << format_number(r.reward.mean)
           << ',' << format_number(r.reward.stderr_) << ',' << r.reward.trials << '\n';
}

void write_sweep_points_csv(std::ostream& os, const ParetoSweepResult& sweep) {
    os << "agent,lambda,trial,mean_reward,mean_cost,budget,cases\n";
    for (const auto& run : sweep.runs)
        for (std::size_t i = 0; i < run.points.size(); ++i)
            os << csv_field(run.agent) << ',' << format_number(run.lambda) << ',' << i << ','
               << format_number(run.mean_reward[i]) << ',' << format_number(run.mean_cost[i]) << ','
               << format_number(run.points[i].budget) << ',' << format_number(run.points[i].cases) << '\n';
}

void write_frontiers_csv(std::ostream& os, const ParetoSweepResult& sweep) {
    os << "agent,budget,cases\n";
    for (const auto& f : sweep.frontiers)
        for (const auto& p : f.frontier)
            os << csv_field(f.agent) << ',' << format_number(p.budget) << ',' << format_number(p.cases) << '\n';
}

nlohmann::json sweep_json(const ParetoSweepResult& sweep) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : sweep.runs)
        runs.push_back({{"agent", run.agent},
                        {"lambda", run.lambda},
                        {"budget", run.average.budget},
                        {"cases", run.average.cases},
                        {"trials", run.points.size()}});
    nlohmann::json frontiers = nlohmann::json::object();
    for (const auto& f : sweep.frontiers) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : f.frontier) pts.push_back({{"budget", p.budget}, {"cases", p.cases}});
        frontiers[f.agent] = pts;
    }
    return {{"bins", sweep.bins}, {"runs", runs}, {"frontiers", frontiers}};
}

}  // namespace gts
