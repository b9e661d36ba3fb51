#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gts/agents.hpp"
#include "gts/bandit.hpp"

namespace gts {

// Reset period in steps; nullopt means stationary.
using Period = std::optional<std::size_t>;

// Bernoulli arms with probabilities drawn i.i.d. U(0,1) from the env stream.
// With a finite period n the probabilities are redrawn before steps n+1,
// 2n+1, ... (1-based).
class BernoulliMab {
public:
    BernoulliMab(std::size_t arm_count, Period period, std::uint64_t env_seed);
    BernoulliMab(std::vector<double> probs, Period period, std::uint64_t env_seed);

    Reward step(ArmIndex arm, Rng& rng);

    std::size_t arm_count() const noexcept { return probs_.size(); }
    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t t() const noexcept { return t_; }
    Period period() const noexcept { return period_; }

private:
    void redraw();

    std::vector<double> probs_;
    Period period_;
    Rng env_rng_;
    std::size_t t_ = 0;
};

using JointAction = std::vector<std::size_t>;

struct Feedback {
    Reward reward;
    double stringency = 0.0;
};

// Combinatorial intervention world. Per (dimension, level) there is a reward
// weight W in [0,1] and a stringency weight C in [0.05,1]. The reward is
// Bernoulli(mean_k W[k][a_k]) and the stringency is sum_k C[k][a_k]. Resets
// redraw W only.
class EpidemicEnv {
public:
    static constexpr double kCostFloor = 0.05;

    EpidemicEnv(std::vector<std::size_t> levels, Period period, std::uint64_t env_seed);
    EpidemicEnv(std::vector<std::vector<double>> reward_weights,
                std::vector<std::vector<double>> cost_weights, Period period,
                std::uint64_t env_seed);

    Feedback step(const JointAction& action, Rng& rng);

    std::size_t dims() const noexcept { return levels_.size(); }
    std::span<const std::size_t> levels() const noexcept { return levels_; }
    const std::vector<std::vector<double>>& reward_weights() const noexcept { return W_; }
    const std::vector<std::vector<double>>& cost_weights() const noexcept { return C_; }
    double stringency(const JointAction& action) const;
    double max_stringency() const noexcept;
    double min_stringency() const noexcept;
    std::size_t t() const noexcept { return t_; }

private:
    void check(const JointAction& action) const;
    void redraw_rewards();

    std::vector<std::size_t> levels_;
    std::vector<std::vector<double>> W_;
    std::vector<std::vector<double>> C_;
    Period period_;
    Rng env_rng_;
    std::size_t t_ = 0;
};

enum class ScalarizeMode { additive_literal, convex };

// Folds reward and stringency into one reward in [0,1].
//   additive_literal: clamp(r + lambda / s, 0, 1)
//   convex:           lambda * r + (1 - lambda) * (1 - s / s_max)
Reward scalarize(Reward r, double stringency, double lambda, ScalarizeMode mode, double s_max);

// Policy over joint actions.
class JointAgent {
public:
    virtual ~JointAgent() = default;
    virtual JointAction act() = 0;
    virtual void learn(const JointAction& action, Reward r_star) = 0;
};

// Treats every action dimension as its own bandit and concatenates choices.
class IndCombAgent final : public JointAgent {
public:
    explicit IndCombAgent(std::vector<std::unique_ptr<BanditAgent>> dims);

    JointAction act() override;
    void learn(const JointAction& action, Reward r_star) override;

    std::size_t dims() const noexcept { return dims_.size(); }
    const BanditAgent& dim(std::size_t k) const { return *dims_.at(k); }

private:
    std::vector<std::unique_ptr<BanditAgent>> dims_;
};

}  // namespace gts
