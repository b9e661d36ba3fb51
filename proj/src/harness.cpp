#include "gts/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace gts {

std::string to_string(AgentKind kind) {
    switch (kind) {
        case AgentKind::random: return "random";
        case AgentKind::random_fixed: return "random-fixed";
        case AgentKind::ts: return "ts";
        case AgentKind::ucb1: return "ucb1";
        case AgentKind::gts: return "gts";
        case AgentKind::indcomb_gts: return "indcomb-gts";
        case AgentKind::indcomb_ts: return "indcomb-ts";
    }
    return "unknown";
}

AgentKind parse_agent_kind(const std::string& name) {
    for (auto k : {AgentKind::random, AgentKind::random_fixed, AgentKind::ts, AgentKind::ucb1,
                   AgentKind::gts, AgentKind::indcomb_gts, AgentKind::indcomb_ts})
        if (to_string(k) == name) return k;
    throw ConfigError("unknown agent kind '" + name + "'");
}

std::string describe(const EnvSpec& env) {
    std::ostringstream os;
    if (const auto* mab = std::get_if<MabSpec>(&env)) {
        if (mab->period) os << "NS ";
        os << "MAB-" << mab->arms;
        if (mab->period && *mab->period != 10) os << "/n" << *mab->period;
    } else {
        const auto& epi = std::get<EpidemicSpec>(env);
        if (epi.period) os << "NS ";
        os << "EPI-";
        for (std::size_t k = 0; k < epi.levels.size(); ++k) os << (k ? "x" : "") << epi.levels[k];
    }
    return os.str();
}

void ExperimentConfig::validate() const {
    if (horizon < 1) throw ConfigError("horizon must be >= 1");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    const bool joint_agent = agent.kind == AgentKind::indcomb_gts || agent.kind == AgentKind::indcomb_ts;
    if (agent.kind == AgentKind::gts || agent.kind == AgentKind::indcomb_gts) agent.gts.validate();

    if (const auto* mab = std::get_if<MabSpec>(&env)) {
        if (mab->arms < 1) throw ConfigError("bandit needs at least one arm");
        if (mab->probs.empty() && mab->arms < 2) throw ConfigError("a randomly drawn bandit needs at least two arms");
        if (!mab->probs.empty() && mab->probs.size() != mab->arms)
            throw ConfigError("fixed probabilities must list one value per arm");
        for (double p : mab->probs)
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("arm probability outside [0,1]");
        if (mab->period && *mab->period < 1) throw ConfigError("reset period must be positive");
        if (joint_agent)
            throw ConfigError("agent '" + agent.name() + "' needs a combinatorial environment");
        if (agent.arms && *agent.arms != mab->arms)
            throw ConfigError("agent expects " + std::to_string(*agent.arms) +
                              " arms but the environment has " + std::to_string(mab->arms));
    } else {
        const auto& epi = std::get<EpidemicSpec>(env);
        if (epi.levels.empty()) throw ConfigError("epidemic world needs at least one dimension");
        for (auto n : epi.levels)
            if (n < 2) throw ConfigError("every epidemic dimension needs at least two levels");
        if (!(epi.lambda >= 0.0 && epi.lambda <= 1.0)) throw ConfigError("lambda must lie in [0,1]");
        if (epi.period && *epi.period < 1) throw ConfigError("reset period must be positive");
        if (agent.kind == AgentKind::ts || agent.kind == AgentKind::ucb1 || agent.kind == AgentKind::gts)
            throw ConfigError("agent '" + agent.name() +
                              "' is single-dimension; use indcomb-gts or indcomb-ts");
        if (agent.arms)
            throw ConfigError("arm count cannot be fixed for a combinatorial environment");
    }
}

TrialSeeds trial_seeds(std::uint64_t base_seed, std::size_t trial_index) {
    return {derive_seed(base_seed, trial_index), derive_seed(base_seed, trial_index, "env"),
            derive_seed(base_seed, trial_index, "reward"), derive_seed(base_seed, trial_index, "action"),
            derive_seed(base_seed, trial_index, "ga")};
}

namespace {

GtsConfig seeded(GtsConfig config, std::uint64_t action_seed, std::uint64_t ga_seed) {
    config.action_seed = action_seed;
    config.ga_seed = ga_seed;
    return config;
}

std::unique_ptr<BanditAgent> make_bandit_agent(AgentKind kind, const GtsConfig& gts_config,
                                               std::size_t arms, std::uint64_t action_seed,
                                               std::uint64_t ga_seed) {
    switch (kind) {
        case AgentKind::random: return std::make_unique<RandomAgent>(arms, action_seed);
        case AgentKind::random_fixed: return std::make_unique<RandomFixedAgent>(arms, action_seed);
        case AgentKind::ts:
        case AgentKind::indcomb_ts: return std::make_unique<ThompsonAgent>(arms, action_seed);
        case AgentKind::ucb1: return std::make_unique<Ucb1Agent>(arms);
        case AgentKind::gts:
        case AgentKind::indcomb_gts:
            return std::make_unique<GtsAgent>(seeded(gts_config, action_seed, ga_seed), arms);
    }
    throw ConfigError("unknown agent kind");
}

Trajectory run_mab_trial(const ExperimentConfig& cfg, const MabSpec& spec, const TrialSeeds& seeds) {
    BernoulliMab env = spec.probs.empty() ? BernoulliMab(spec.arms, spec.period, seeds.env)
                                          : BernoulliMab(spec.probs, spec.period, seeds.env);
    Rng reward_rng(seeds.reward);
    auto agent = make_bandit_agent(cfg.agent.kind, cfg.agent.gts, spec.arms, seeds.action, seeds.ga);

    Trajectory tr;
    tr.rewards.reserve(cfg.horizon);
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const ArmIndex arm = agent->act();
        const Reward r = env.step(arm, reward_rng);
        agent->learn(arm, r);
        tr.rewards.push_back(r.value());
    }
    return tr;
}

Trajectory run_epidemic_trial(const ExperimentConfig& cfg, const EpidemicSpec& spec,
                              const TrialSeeds& seeds) {
    EpidemicEnv env(spec.levels, spec.period, seeds.env);
    Rng reward_rng(seeds.reward);
    std::vector<std::unique_ptr<BanditAgent>> dims;
    for (std::size_t k = 0; k < spec.levels.size(); ++k) {
        // Each dimension gets its own pair of streams.
        dims.push_back(make_bandit_agent(cfg.agent.kind, cfg.agent.gts, spec.levels[k],
                                         derive_seed(seeds.action, k), derive_seed(seeds.ga, k)));
    }
    IndCombAgent agent(std::move(dims));
    const double s_max = env.max_stringency();

    Trajectory tr;
    tr.rewards.reserve(cfg.horizon);
    tr.costs.reserve(cfg.horizon);
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const JointAction action = agent.act();
        const Feedback fb = env.step(action, reward_rng);
        agent.learn(action, scalarize(fb.reward, fb.stringency, spec.lambda, spec.mode, s_max));
        tr.rewards.push_back(fb.reward.value());
        tr.costs.push_back(fb.stringency);
    }
    return tr;
}

}  // namespace

Trajectory run_trial(const ExperimentConfig& cfg, std::size_t trial_index) {
    cfg.validate();
    const TrialSeeds seeds = trial_seeds(cfg.base_seed, trial_index);
    Trajectory tr = std::visit(
        [&](const auto& spec) {
            if constexpr (std::is_same_v<std::decay_t<decltype(spec)>, MabSpec>)
                return run_mab_trial(cfg, spec, seeds);
            else
                return run_epidemic_trial(cfg, spec, seeds);
        },
        cfg.env);
    tr.trial_index = trial_index;
    tr.seed = seeds.trial;
    for (double r : tr.rewards) tr.cumulative_reward += r;
    for (double c : tr.costs) tr.cumulative_cost += c;
    return tr;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult result;
    result.config = cfg;
    result.trials.resize(cfg.trials);

    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trials));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t error_trial = 0;
    auto work = [&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++) {
            try {
                result.trials[i] = run_trial(cfg, i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error || i < error_trial) {
                    first_error = std::current_exception();
                    error_trial = i;
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(error_trial) + ": " + e.what());
        }
    }

    std::vector<double> rewards, costs;
    for (const auto& tr : result.trials) {
        rewards.push_back(tr.cumulative_reward);
        costs.push_back(tr.cumulative_cost);
    }
    result.reward = summarize(rewards);
    if (std::holds_alternative<EpidemicSpec>(cfg.env)) result.cost = summarize(costs);
    return result;
}

ParetoSweepResult pareto_sweep(const ExperimentConfig& base, const std::vector<AgentSpec>& agents,
                               const std::vector<double>& lambdas, std::size_t bins) {
    if (!std::holds_alternative<EpidemicSpec>(base.env))
        throw ConfigError("pareto sweep needs an epidemic environment");
    if (agents.empty() || lambdas.empty()) throw ConfigError("pareto sweep needs agents and lambdas");
    for (double l : lambdas)
        if (!(l >= 0.0 && l <= 1.0)) throw ConfigError("lambda must lie in [0,1]");

    ParetoSweepResult out;
    out.bins = bins;
    std::vector<double> pooled_reward, pooled_cost;
    for (const auto& agent : agents) {
        for (double lambda : lambdas) {
            ExperimentConfig cfg = base;
            cfg.agent = agent;
            std::get<EpidemicSpec>(cfg.env).lambda = lambda;
            const auto result = run_experiment(cfg);

            SweepRun run;
            run.agent = agent.name();
            run.lambda = lambda;
            const auto T = static_cast<double>(cfg.horizon);
            for (const auto& tr : result.trials) {
                run.mean_reward.push_back(tr.cumulative_reward / T);
                run.mean_cost.push_back(tr.cumulative_cost / T);
            }
            pooled_reward.insert(pooled_reward.end(), run.mean_reward.begin(), run.mean_reward.end());
            pooled_cost.insert(pooled_cost.end(), run.mean_cost.begin(), run.mean_cost.end());
            out.runs.push_back(std::move(run));
        }
    }

    const auto binned_reward = quantile_bin(pooled_reward, bins);
    const auto binned_cost = quantile_bin(pooled_cost, bins);
    std::size_t offset = 0;
    for (auto& run : out.runs) {
        double budget_sum = 0.0, cases_sum = 0.0;
        for (std::size_t i = 0; i < run.mean_reward.size(); ++i) {
            const ParetoPoint p{binned_cost[offset + i], cases_metric(binned_reward[offset + i])};
            run.points.push_back(p);
            budget_sum += p.budget;
            cases_sum += p.cases;
        }
        const auto n = static_cast<double>(run.points.size());
        run.average = {budget_sum / n, cases_sum / n};
        offset += run.mean_reward.size();
    }

    for (const auto& agent : agents) {
        std::vector<ParetoPoint> averages;
        for (const auto& run : out.runs)
            if (run.agent == agent.name()) averages.push_back(run.average);
        out.frontiers.push_back({agent.name(), pareto_frontier(averages)});
    }
    return out;
}

bool frontier_weakly_dominates(const std::vector<ParetoPoint>& a, const std::vector<ParetoPoint>& b,
                               std::size_t bins) {
    std::size_t shared = 0;
    for (std::size_t j = 0; j < bins; ++j) {
        const double level = static_cast<double>(j) / static_cast<double>(bins - 1);
        const auto ca = frontier_cases_at(a, level);
        const auto cb = frontier_cases_at(b, level);
        if (!ca || !cb) continue;
        ++shared;
        if (*ca > *cb) return false;
    }
    return shared > 0;
}

}  // namespace gts
