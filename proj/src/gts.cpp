#include "gts/gts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gts {

std::size_t GtsConfig::elite_count() const {
    const auto rounded =
        static_cast<std::size_t>(std::llround(selection_ratio * static_cast<double>(population_size)));
    return std::max<std::size_t>(1, rounded);
}

void GtsConfig::validate() const {
    if (population_size < 1) throw ConfigError("population_size must be >= 1");
    if (!(init_upper >= 1.0)) throw ConfigError("init_upper must be >= 1");
    if (!(selection_ratio > 0.0 && selection_ratio <= 1.0))
        throw ConfigError("selection_ratio must lie in (0,1]");
    if (!(clamp_min > 0.0)) throw ConfigError("clamp_min must be positive");
    if (elite_count() > population_size) throw ConfigError("elite count exceeds population size");
}

Population gts_init(const GtsConfig& config, std::size_t arm_count, Rng& rng) {
    config.validate();
    require(arm_count >= 1, "need at least one arm");
    Population pop(config.population_size);
    for (auto& genome : pop) {
        genome.arms.resize(arm_count);
        for (auto& arm : genome.arms) {
            const double q = uniform(rng, 1.0, config.init_upper);
            arm = {q, q};
        }
    }
    return pop;
}

std::vector<ArmIndex> collect_recommendations(const Population& pop, Rng& action_rng) {
    std::vector<ArmIndex> recs;
    recs.reserve(pop.size());
    for (const auto& genome : pop) recs.push_back(thompson_argmax(genome.arms, action_rng));
    return recs;
}

ArmIndex majority_vote(std::span<const ArmIndex> recs, Rng& rng) {
    require(!recs.empty(), "majority_vote needs at least one recommendation");
    const ArmIndex top = *std::max_element(recs.begin(), recs.end());
    std::vector<std::size_t> counts(top + 1, 0);
    for (ArmIndex a : recs) ++counts[a];
    const std::size_t best = *std::max_element(counts.begin(), counts.end());

    std::vector<ArmIndex> modes;
    for (ArmIndex a = 0; a < counts.size(); ++a)
        if (counts[a] == best) modes.push_back(a);
    if (modes.size() == 1) return modes.front();
    return modes[uniform_index(rng, modes.size())];
}

std::vector<MemberId> update_aligned(Population& pop, ArmIndex a_star, Reward r,
                                     std::span<const ArmIndex> recs) {
    require(recs.size() == pop.size(), "one recommendation per member required");
    std::vector<MemberId> aligned;
    for (MemberId m = 0; m < pop.size(); ++m) {
        if (recs[m] != a_star) continue;
        require(a_star < pop[m].arms.size(), "arm index out of range");
        pop[m].fitness.observe(r);
        pop[m].arms[a_star].observe(r);
        aligned.push_back(m);
    }
    return aligned;
}

std::vector<double> sample_fitness(const Population& pop, Rng& rng) {
    std::vector<double> scores;
    scores.reserve(pop.size());
    for (const auto& genome : pop) scores.push_back(beta_sample(genome.fitness, rng));
    return scores;
}

std::vector<MemberId> select_elites(std::span<const double> scores, std::size_t elite_count) {
    require(elite_count <= scores.size(), "elite_count exceeds number of scores");
    std::vector<MemberId> idx(scores.size());
    std::iota(idx.begin(), idx.end(), MemberId{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](MemberId a, MemberId b) { return scores[a] > scores[b]; });
    idx.resize(elite_count);
    return idx;
}

CrossoverResult crossover_fill(std::span<const Genome> elites, std::size_t child_count, Rng& rng,
                               bool weighted) {
    CrossoverResult out;
    if (child_count == 0) return out;
    require(!elites.empty(), "crossover needs at least one elite");
    out.children.reserve(child_count);
    out.parents.reserve(child_count);
    for (std::size_t c = 0; c < child_count; ++c) {
        const std::size_t i = uniform_index(rng, elites.size());
        const std::size_t j = uniform_index(rng, elites.size());
        const Genome& a = elites[i];
        const Genome& b = elites[j];
        require(a.arms.size() == b.arms.size(), "parents disagree on arm count");

        Genome child;
        child.arms.resize(a.arms.size());
        for (ArmIndex k = 0; k < a.arms.size(); ++k) {
            if (weighted) {
                const double w = uniform(rng, 0.0, 1.0);
                child.arms[k] = {w * a.arms[k].S + (1.0 - w) * b.arms[k].S,
                                 w * a.arms[k].F + (1.0 - w) * b.arms[k].F};
            } else {
                child.arms[k] = std::bernoulli_distribution(0.5)(rng) ? a.arms[k] : b.arms[k];
            }
        }
        child.fitness = {1.0, 1.0};
        out.children.push_back(std::move(child));
        out.parents.emplace_back(i, j);
    }
    return out;
}

void apply_mutation(ArmPosterior& arm, double delta_S, double delta_F, double clamp_min) {
    arm.S = std::max(clamp_min, arm.S + delta_S);
    arm.F = std::max(clamp_min, arm.F + delta_F);
}

std::vector<MutationRecord> mutate(Population& pop, std::size_t count, double clamp_min, Rng& rng) {
    std::vector<MutationRecord> log;
    if (count == 0 || pop.empty()) return log;
    log.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const MemberId m = uniform_index(rng, pop.size());
        const ArmIndex a = uniform_index(rng, pop[m].arms.size());
        const double dS = uniform(rng, -1.0, 1.0);
        const double dF = uniform(rng, -1.0, 1.0);
        apply_mutation(pop[m].arms[a], dS, dF, clamp_min);
        log.push_back({m, a, dS, dF});
    }
    return log;
}

std::string_view to_string(Phase phase) {
    switch (phase) {
        case Phase::idle: return "idle";
        case Phase::recommend: return "recommend";
        case Phase::vote: return "vote";
        case Phase::reward: return "reward";
        case Phase::update: return "update";
        case Phase::select: return "select";
        case Phase::crossover: return "crossover";
        case Phase::mutate: return "mutate";
    }
    return "unknown";
}

Phase next_phase(Phase phase) {
    switch (phase) {
        case Phase::idle:
        case Phase::mutate: return Phase::recommend;
        case Phase::recommend: return Phase::vote;
        case Phase::vote: return Phase::reward;
        case Phase::reward: return Phase::update;
        case Phase::update: return Phase::select;
        case Phase::select: return Phase::crossover;
        case Phase::crossover: return Phase::mutate;
    }
    return Phase::idle;
}

void advance_phase(StepState& state, const GtsConfig& config, Rng& action_rng, Rng& ga_rng,
                   const RewardFn& reward_fn) {
    auto& pop = state.population;
    auto& trace = state.trace;
    const Phase next = next_phase(state.phase);
    switch (next) {
        case Phase::recommend:
            trace = StepTrace{};
            trace.recommendations = collect_recommendations(pop, action_rng);
            break;
        case Phase::vote:
            trace.majority_action = majority_vote(trace.recommendations, ga_rng);
            break;
        case Phase::reward:
            trace.reward = reward_fn(trace.majority_action);
            break;
        case Phase::update:
            trace.aligned_ids = update_aligned(pop, trace.majority_action, trace.reward,
                                               trace.recommendations);
            break;
        case Phase::select:
            trace.fitness_samples = sample_fitness(pop, ga_rng);
            trace.elite_ids = select_elites(trace.fitness_samples, config.elite_count());
            break;
        case Phase::crossover: {
            // Without crossover the population is left as is: nobody is replaced.
            if (!config.crossover) break;
            Population elites;
            elites.reserve(trace.elite_ids.size());
            for (MemberId id : trace.elite_ids) elites.push_back(pop[id]);
            auto result = crossover_fill(elites, pop.size() - elites.size(), ga_rng,
                                         config.weighted_crossover);
            for (const auto& [i, j] : result.parents)
                trace.parent_pairs.push_back({trace.elite_ids[i], trace.elite_ids[j]});
            Population next_pop = std::move(elites);
            for (auto& child : result.children) next_pop.push_back(std::move(child));
            pop = std::move(next_pop);
            break;
        }
        case Phase::mutate:
            if (config.mutation)
                trace.mutations = mutate(pop, config.mutation_count, config.clamp_min, ga_rng);
            break;
        case Phase::idle:
            break;
    }
    state.phase = next;
}

std::pair<Population, StepTrace> gts_step(Population pop, const GtsConfig& config,
                                          const RewardFn& reward_fn, Rng& action_rng, Rng& ga_rng) {
    StepState state{std::move(pop), {}, Phase::idle};
    do {
        advance_phase(state, config, action_rng, ga_rng, reward_fn);
    } while (state.phase != Phase::mutate);
    return {std::move(state.population), std::move(state.trace)};
}

GtsLearner::GtsLearner(GtsConfig config, std::size_t arm_count)
    : config_(std::move(config)),
      arm_count_(arm_count),
      action_rng_(config_.action_seed),
      ga_rng_(config_.ga_seed) {
    state_.population = gts_init(config_, arm_count_, ga_rng_);
}

void GtsLearner::advance_phase(const RewardFn& reward_fn) {
    gts::advance_phase(state_, config_, action_rng_, ga_rng_, reward_fn);
}

ArmIndex GtsLearner::act() {
    require(state_.phase == Phase::idle || state_.phase == Phase::mutate,
            "act() called in the middle of a step");
    const RewardFn none = [](ArmIndex) -> Reward { throw ContractViolation("no reward yet"); };
    advance_phase(none);
    advance_phase(none);
    return state_.trace.majority_action;
}

const StepTrace& GtsLearner::learn(Reward r) {
    require(state_.phase == Phase::vote, "learn() must follow act()");
    const RewardFn given = [r](ArmIndex) { return r; };
    do {
        advance_phase(given);
    } while (state_.phase != Phase::mutate);
    return state_.trace;
}

StepTrace GtsLearner::step(const RewardFn& reward_fn) {
    do {
        advance_phase(reward_fn);
    } while (state_.phase != Phase::mutate);
    return state_.trace;
}

}  // namespace gts
