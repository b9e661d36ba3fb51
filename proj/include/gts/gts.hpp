#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gts/bandit.hpp"

namespace gts {

// One Thompson Sampling member of the population: per-arm beliefs plus a
// Beta posterior over how often its adopted recommendations paid off.
struct Genome {
    std::vector<ArmPosterior> arms;
    ArmPosterior fitness{1.0, 1.0};

    friend bool operator==(const Genome&, const Genome&) = default;
};

using Population = std::vector<Genome>;
using MemberId = std::size_t;

struct GtsConfig {
    std::size_t population_size = 100;
    double init_upper = 2.0;       // S = F = q, q ~ U(1, init_upper)
    double selection_ratio = 0.5;  // fraction of members kept as elites
    std::size_t mutation_count = 10;
    double clamp_min = 0.01;
    bool crossover = true;  // ablation toggles
    bool mutation = true;
    bool weighted_crossover = false;
    std::uint64_t action_seed = 0;
    std::uint64_t ga_seed = 1;

    std::size_t elite_count() const;
    void validate() const;  // throws ConfigError
};

struct ParentPair {
    MemberId first = 0;
    MemberId second = 0;
    friend bool operator==(const ParentPair&, const ParentPair&) = default;
};

struct MutationRecord {
    MemberId member = 0;
    ArmIndex arm = 0;
    double delta_S = 0.0;
    double delta_F = 0.0;
    friend bool operator==(const MutationRecord&, const MutationRecord&) = default;
};

// Everything that happened in one step. Member ids in elite_ids, aligned_ids
// and parent_pairs refer to the population as it was before the GA round;
// mutation ids refer to the post-crossover layout (elites, then children).
struct StepTrace {
    std::vector<ArmIndex> recommendations;
    ArmIndex majority_action = 0;
    std::vector<MemberId> aligned_ids;
    Reward reward;
    std::vector<double> fitness_samples;
    std::vector<MemberId> elite_ids;
    std::vector<ParentPair> parent_pairs;
    std::vector<MutationRecord> mutations;

    friend bool operator==(const StepTrace& a, const StepTrace& b) {
        return a.recommendations == b.recommendations && a.majority_action == b.majority_action &&
               a.aligned_ids == b.aligned_ids && a.reward.value() == b.reward.value() &&
               a.fitness_samples == b.fitness_samples && a.elite_ids == b.elite_ids &&
               a.parent_pairs == b.parent_pairs && a.mutations == b.mutations;
    }
};

Population gts_init(const GtsConfig& config, std::size_t arm_count, Rng& rng);

std::vector<ArmIndex> collect_recommendations(const Population& pop, Rng& action_rng);

// Mode of recs; a tie between several modes is broken uniformly with one draw
// from rng. No draw is consumed when the mode is unique.
ArmIndex majority_vote(std::span<const ArmIndex> recs, Rng& rng);

// Applies r to the fitness and to arm a_star of every member whose
// recommendation equals a_star. Returns the ids that were touched.
std::vector<MemberId> update_aligned(Population& pop, ArmIndex a_star, Reward r,
                                     std::span<const ArmIndex> recs);

std::vector<double> sample_fitness(const Population& pop, Rng& rng);

// Indices of the elite_count largest scores, best first, ties to lower index.
std::vector<MemberId> select_elites(std::span<const double> scores, std::size_t elite_count);

struct CrossoverResult {
    std::vector<Genome> children;
    std::vector<std::pair<std::size_t, std::size_t>> parents;  // positions in `elites`
};

// Uniform per-arm crossover from two parents drawn with replacement. With
// `weighted`, each child arm is instead a random convex blend of both parents.
CrossoverResult crossover_fill(std::span<const Genome> elites, std::size_t child_count, Rng& rng,
                               bool weighted = false);

void apply_mutation(ArmPosterior& arm, double delta_S, double delta_F, double clamp_min);

std::vector<MutationRecord> mutate(Population& pop, std::size_t count, double clamp_min, Rng& rng);

enum class Phase { idle, recommend, vote, reward, update, select, crossover, mutate };

std::string_view to_string(Phase phase);
Phase next_phase(Phase phase);

using RewardFn = std::function<Reward(ArmIndex)>;

// A population caught somewhere inside a step. advance_phase() runs exactly
// one phase; seven calls from idle (or from mutate) make one full step.
struct StepState {
    Population population;
    StepTrace trace;
    Phase phase = Phase::idle;
};

void advance_phase(StepState& state, const GtsConfig& config, Rng& action_rng, Rng& ga_rng,
                   const RewardFn& reward_fn);

std::pair<Population, StepTrace> gts_step(Population pop, const GtsConfig& config,
                                          const RewardFn& reward_fn, Rng& action_rng, Rng& ga_rng);

// Owns a population with its two random streams. act()/learn() split a step
// around the environment call so the learner can sit behind a generic agent
// interface.
class GtsLearner {
public:
    GtsLearner(GtsConfig config, std::size_t arm_count);

    ArmIndex act();
    const StepTrace& learn(Reward r);
    StepTrace step(const RewardFn& reward_fn);
    void advance_phase(const RewardFn& reward_fn);

    const GtsConfig& config() const noexcept { return config_; }
    const Population& population() const noexcept { return state_.population; }
    const StepTrace& trace() const noexcept { return state_.trace; }
    Phase phase() const noexcept { return state_.phase; }
    std::size_t arm_count() const noexcept { return arm_count_; }

private:
    GtsConfig config_;
    std::size_t arm_count_;
    Rng action_rng_;
    Rng ga_rng_;
    StepState state_;
};

}  // namespace gts
