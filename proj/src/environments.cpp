#include "gts/environments.hpp"

#include <algorithm>
#include <numeric>

namespace gts {

namespace {

bool reset_due(const Period& period, std::size_t t) {
    // t is the 1-based index of the step about to be served.
    return period && *period > 0 && t > 1 && (t - 1) % *period == 0;
}

}  // namespace

BernoulliMab::BernoulliMab(std::size_t arm_count, Period period, std::uint64_t env_seed)
    : probs_(arm_count), period_(period), env_rng_(env_seed) {
    require(arm_count >= 2, "bandit needs at least two arms");
    require(!period_ || *period_ >= 1, "reset period must be positive");
    redraw();
}

BernoulliMab::BernoulliMab(std::vector<double> probs, Period period, std::uint64_t env_seed)
    : probs_(std::move(probs)), period_(period), env_rng_(env_seed) {
    require(!probs_.empty(), "bandit needs at least one arm");
    require(!period_ || *period_ >= 1, "reset period must be positive");
    for (double p : probs_) require(p >= 0.0 && p <= 1.0, "arm probability outside [0,1]");
}

void BernoulliMab::redraw() {
    for (auto& p : probs_) p = uniform(env_rng_, 0.0, 1.0);
}

Reward BernoulliMab::step(ArmIndex arm, Rng& rng) {
    require(arm < probs_.size(), "arm index out of range");
    ++t_;
    if (reset_due(period_, t_)) redraw();
    return Reward(std::bernoulli_distribution(probs_[arm])(rng) ? 1.0 : 0.0);
}

EpidemicEnv::EpidemicEnv(std::vector<std::size_t> levels, Period period, std::uint64_t env_seed)
    : levels_(std::move(levels)), period_(period), env_rng_(env_seed) {
    require(!levels_.empty(), "epidemic world needs at least one dimension");
    require(!period_ || *period_ >= 1, "reset period must be positive");
    for (std::size_t n : levels_) require(n >= 2, "every dimension needs at least two levels");
    W_.resize(levels_.size());
    C_.resize(levels_.size());
    for (std::size_t k = 0; k < levels_.size(); ++k) {
        W_[k].resize(levels_[k]);
        C_[k].resize(levels_[k]);
    }
    redraw_rewards();
    for (auto& row : C_)
        for (auto& c : row) c = uniform(env_rng_, kCostFloor, 1.0);
}

EpidemicEnv::EpidemicEnv(std::vector<std::vector<double>> reward_weights,
                         std::vector<std::vector<double>> cost_weights, Period period,
                         std::uint64_t env_seed)
    : W_(std::move(reward_weights)), C_(std::move(cost_weights)), period_(period), env_rng_(env_seed) {
    require(!W_.empty() && W_.size() == C_.size(), "weight tables must have matching dimensions");
    for (std::size_t k = 0; k < W_.size(); ++k) {
        require(W_[k].size() == C_[k].size() && !W_[k].empty(), "weight rows must match");
        for (double w : W_[k]) require(w >= 0.0 && w <= 1.0, "reward weight outside [0,1]");
        for (double c : C_[k]) require(c > 0.0 && c <= 1.0, "cost weight outside (0,1]");
        levels_.push_back(W_[k].size());
    }
}

void EpidemicEnv::redraw_rewards() {
    for (auto& row : W_)
        for (auto& w : row) w = uniform(env_rng_, 0.0, 1.0);
}

void EpidemicEnv::check(const JointAction& action) const {
    require(action.size() == levels_.size(), "joint action has wrong number of dimensions");
    for (std::size_t k = 0; k < action.size(); ++k)
        require(action[k] < levels_[k], "action level out of range");
}

double EpidemicEnv::stringency(const JointAction& action) const {
    check(action);
    double s = 0.0;
    for (std::size_t k = 0; k < action.size(); ++k) s += C_[k][action[k]];
    return s;
}

double EpidemicEnv::max_stringency() const noexcept {
    double s = 0.0;
    for (const auto& row : C_) s += *std::max_element(row.begin(), row.end());
    return s;
}

double EpidemicEnv::min_stringency() const noexcept {
    double s = 0.0;
    for (const auto& row : C_) s += *std::min_element(row.begin(), row.end());
    return s;
}

Feedback EpidemicEnv::step(const JointAction& action, Rng& rng) {
    check(action);
    ++t_;
    if (reset_due(period_, t_)) redraw_rewards();
    double mean = 0.0;
    for (std::size_t k = 0; k < action.size(); ++k) mean += W_[k][action[k]];
    mean /= static_cast<double>(action.size());
    const bool hit = std::bernoulli_distribution(std::clamp(mean, 0.0, 1.0))(rng);
    return {Reward(hit ? 1.0 : 0.0), stringency(action)};
}

Reward scalarize(Reward r, double stringency, double lambda, ScalarizeMode mode, double s_max) {
    require(stringency > 0.0, "stringency must be positive");
    require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0,1]");
    switch (mode) {
        case ScalarizeMode::additive_literal:
            return Reward(std::clamp(r.value() + lambda / stringency, 0.0, 1.0));
        case ScalarizeMode::convex: {
            require(s_max > 0.0, "s_max must be positive");
            const double relief = std::clamp(1.0 - stringency / s_max, 0.0, 1.0);
            return Reward(std::clamp(lambda * r.value() + (1.0 - lambda) * relief, 0.0, 1.0));
        }
    }
    throw ContractViolation("unknown scalarize mode");
}

IndCombAgent::IndCombAgent(std::vector<std::unique_ptr<BanditAgent>> dims) : dims_(std::move(dims)) {
    require(!dims_.empty(), "IndComb needs at least one dimension");
    for (const auto& d : dims_) require(d != nullptr, "null dimension agent");
}

JointAction IndCombAgent::act() {
    JointAction action;
    action.reserve(dims_.size());
    for (auto& d : dims_) action.push_back(d->act());
    return action;
}

void IndCombAgent::learn(const JointAction& action, Reward r_star) {
    require(action.size() == dims_.size(), "joint action has wrong number of dimensions");
    for (std::size_t k = 0; k < dims_.size(); ++k) dims_[k]->learn(action[k], r_star);
}

}  // namespace gts
