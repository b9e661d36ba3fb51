#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gts/errors.hpp"
#include "gts/random.hpp"

namespace gts {

using ArmIndex = std::size_t;

// A reward in [0,1]. Construction checks the range.
class Reward {
public:
    constexpr Reward() = default;
    explicit Reward(double value) : value_(value) {
        require(value >= 0.0 && value <= 1.0, "reward must lie in [0,1]");
    }
    constexpr double value() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

// Beta(S, F) belief: S is success mass, F is failure mass. Both stay positive.
struct ArmPosterior {
    double S = 1.0;
    double F = 1.0;

    void observe(Reward r) noexcept {
        S += r.value();
        F += 1.0 - r.value();
    }
    double mean() const noexcept { return S / (S + F); }

    friend bool operator==(const ArmPosterior&, const ArmPosterior&) = default;
};

// One draw from Beta(S, F) via the two-gamma construction: exactly two gamma
// draws, X ~ Gamma(S) then Y ~ Gamma(F), each from a freshly constructed
// distribution so no state leaks between calls.
double beta_sample(const ArmPosterior& p, Rng& rng);

// Draw one theta per arm in ascending index order and return the argmax
// (ties to the lowest index).
ArmIndex thompson_argmax(std::span<const ArmPosterior> arms, Rng& rng);

class TsAgent {
public:
    explicit TsAgent(std::size_t arm_count);
    explicit TsAgent(std::vector<ArmPosterior> arms);

    ArmIndex select_action(Rng& rng) const { return thompson_argmax(arms_, rng); }
    void update(ArmIndex arm, Reward r);

    std::size_t arm_count() const noexcept { return arms_.size(); }
    std::span<const ArmPosterior> arms() const noexcept { return arms_; }

private:
    std::vector<ArmPosterior> arms_;
};

// Standard UCB1: pull every arm once, then argmax mean + sqrt(2 ln t / n).
class Ucb1State {
public:
    explicit Ucb1State(std::size_t arm_count);
    Ucb1State(std::vector<std::size_t> pulls, std::vector<double> sums);

    ArmIndex select_action() const;
    void update(ArmIndex arm, Reward r);

    std::size_t arm_count() const noexcept { return pulls_.size(); }
    std::size_t total_steps() const noexcept { return total_; }
    std::span<const std::size_t> pulls() const noexcept { return pulls_; }
    std::span<const double> reward_sums() const noexcept { return sums_; }

private:
    std::vector<std::size_t> pulls_;
    std::vector<double> sums_;
    std::size_t total_ = 0;
};

ArmIndex random_select_action(std::size_t arm_count, Rng& rng);

}  // namespace gts
