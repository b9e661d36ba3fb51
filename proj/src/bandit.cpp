#include "gts/bandit.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace gts {

double beta_sample(const ArmPosterior& p, Rng& rng) {
    const double x = std::gamma_distribution<double>(p.S, 1.0)(rng);
    const double y = std::gamma_distribution<double>(p.F, 1.0)(rng);
    const double sum = x + y;
    // Both gammas can underflow to zero for tiny shapes; fall back to the mean.
    if (!(sum > 0.0)) return p.mean();
    return x / sum;
}

ArmIndex thompson_argmax(std::span<const ArmPosterior> arms, Rng& rng) {
    require(!arms.empty(), "thompson_argmax needs at least one arm");
    ArmIndex best = 0;
    double best_theta = -std::numeric_limits<double>::infinity();
    for (ArmIndex a = 0; a < arms.size(); ++a) {
        const double theta = beta_sample(arms[a], rng);
        if (theta > best_theta) {
            best_theta = theta;
            best = a;
        }
    }
    return best;
}

TsAgent::TsAgent(std::size_t arm_count) : arms_(arm_count) {
    require(arm_count >= 1, "TS agent needs at least one arm");
}

TsAgent::TsAgent(std::vector<ArmPosterior> arms) : arms_(std::move(arms)) {
    require(!arms_.empty(), "TS agent needs at least one arm");
    for (const auto& p : arms_) require(p.S > 0.0 && p.F > 0.0, "posterior mass must be positive");
}

void TsAgent::update(ArmIndex arm, Reward r) {
    require(arm < arms_.size(), "arm index out of range");
    arms_[arm].observe(r);
}

Ucb1State::Ucb1State(std::size_t arm_count) : pulls_(arm_count, 0), sums_(arm_count, 0.0) {
    require(arm_count >= 1, "UCB1 needs at least one arm");
}

Ucb1State::Ucb1State(std::vector<std::size_t> pulls, std::vector<double> sums)
    : pulls_(std::move(pulls)), sums_(std::move(sums)) {
    require(!pulls_.empty() && pulls_.size() == sums_.size(), "UCB1 state shape mismatch");
    for (std::size_t a = 0; a < pulls_.size(); ++a)
        require(sums_[a] >= 0.0 && sums_[a] <= static_cast<double>(pulls_[a]),
                "UCB1 reward sum must lie in [0, pulls]");
    total_ = std::accumulate(pulls_.begin(), pulls_.end(), std::size_t{0});
}

ArmIndex Ucb1State::select_action() const {
    for (ArmIndex a = 0; a < pulls_.size(); ++a)
        if (pulls_[a] == 0) return a;

    const double log_t = std::log(static_cast<double>(total_));
    ArmIndex best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (ArmIndex a = 0; a < pulls_.size(); ++a) {
        const double n = static_cast<double>(pulls_[a]);
        const double value = sums_[a] / n + std::sqrt(2.0 * log_t / n);
        if (value > best_value) {
            best_value = value;
            best = a;
        }
    }
    return best;
}

void Ucb1State::update(ArmIndex arm, Reward r) {
    require(arm < pulls_.size(), "arm index out of range");
    ++pulls_[arm];
    sums_[arm] += r.value();
    ++total_;
}

ArmIndex random_select_action(std::size_t arm_count, Rng& rng) {
    require(arm_count >= 1, "need at least one arm");
    return uniform_index(rng, arm_count);
}

}  // namespace gts
