#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "gts/bandit.hpp"
#include "gts/gts.hpp"

namespace gts {

// Single-dimension bandit policy as seen by the experiment loop: act, then
// learn from the reward of the arm that was played.
class BanditAgent {
public:
    virtual ~BanditAgent() = default;
    virtual ArmIndex act() = 0;
    virtual void learn(ArmIndex arm, Reward r) = 0;
    virtual std::size_t arm_count() const = 0;
};

class RandomAgent final : public BanditAgent {
public:
    RandomAgent(std::size_t arm_count, std::uint64_t seed) : arms_(arm_count), rng_(seed) {}
    ArmIndex act() override { return random_select_action(arms_, rng_); }
    void learn(ArmIndex, Reward) override {}
    std::size_t arm_count() const override { return arms_; }

private:
    std::size_t arms_;
    Rng rng_;
};

// Picks one arm on the first call and keeps playing it.
class RandomFixedAgent final : public BanditAgent {
public:
    RandomFixedAgent(std::size_t arm_count, std::uint64_t seed) : arms_(arm_count), rng_(seed) {}
    ArmIndex act() override {
        if (!choice_) choice_ = random_select_action(arms_, rng_);
        return *choice_;
    }
    void learn(ArmIndex, Reward) override {}
    std::size_t arm_count() const override { return arms_; }

private:
    std::size_t arms_;
    Rng rng_;
    std::optional<ArmIndex> choice_;
};

class ThompsonAgent final : public BanditAgent {
public:
    ThompsonAgent(std::size_t arm_count, std::uint64_t seed) : agent_(arm_count), rng_(seed) {}
    ArmIndex act() override { return agent_.select_action(rng_); }
    void learn(ArmIndex arm, Reward r) override { agent_.update(arm, r); }
    std::size_t arm_count() const override { return agent_.arm_count(); }
    const TsAgent& state() const noexcept { return agent_; }

private:
    TsAgent agent_;
    Rng rng_;
};

class Ucb1Agent final : public BanditAgent {
public:
    explicit Ucb1Agent(std::size_t arm_count) : state_(arm_count) {}
    ArmIndex act() override { return state_.select_action(); }
    void learn(ArmIndex arm, Reward r) override { state_.update(arm, r); }
    std::size_t arm_count() const override { return state_.arm_count(); }

private:
    Ucb1State state_;
};

class GtsAgent final : public BanditAgent {
public:
    GtsAgent(const GtsConfig& config, std::size_t arm_count) : learner_(config, arm_count) {}
    ArmIndex act() override { return learner_.act(); }
    void learn(ArmIndex arm, Reward r) override {
        require(arm == learner_.trace().majority_action, "GTS learns only from its own action");
        learner_.learn(r);
    }
    std::size_t arm_count() const override { return learner_.arm_count(); }
    const GtsLearner& learner() const noexcept { return learner_; }

private:
    GtsLearner learner_;
};

}  // namespace gts
