#include <doctest.h>

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "gts/bandit.hpp"

using namespace gts;

namespace {

std::pair<double, double> mean_var(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, ss / (n - 1.0)};
}

std::vector<double> draws(ArmPosterior p, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> xs(n);
    for (auto& x : xs) x = beta_sample(p, rng);
    return xs;
}

}  // namespace

TEST_CASE("beta_sample matches Beta moments") {
    SUBCASE("Beta(1,1) is uniform") {
        const auto xs = draws({1, 1}, 100'000, 1);
        for (double x : xs) CHECK((x > 0.0 && x < 1.0));
        CHECK(std::abs(mean_var(xs).first - 0.5) < 0.01);
    }
    SUBCASE("Beta(100,1) mean") {
        const auto xs = draws({100, 1}, 100'000, 2);
        CHECK(std::abs(mean_var(xs).first - 100.0 / 101.0) < 0.01);
    }
    SUBCASE("Beta(2,3) variance against closed form") {
        // SF / ((S+F)^2 (S+F+1)) = 6 / (25 * 6) = 0.04
        const double S = 2, F = 3;
        const double closed = S * F / ((S + F) * (S + F) * (S + F + 1));
        CHECK(closed == doctest::Approx(0.04));
        const auto xs = draws({S, F}, 1'000'000, 3);
        CHECK(std::abs(mean_var(xs).second - closed) / closed < 0.05);
    }
}

TEST_CASE("beta_sample replays exactly under a fixed seed") {
    CHECK(draws({2.5, 0.7}, 1000, 9) == draws({2.5, 0.7}, 1000, 9));
}

TEST_CASE("beta_sample stays in range for tiny shapes") {
    Rng rng(4);
    for (int i = 0; i < 10'000; ++i) {
        const double x = beta_sample({0.01, 0.01}, rng);
        CHECK((x >= 0.0 && x <= 1.0));
    }
}

TEST_CASE("ts_select_action") {
    SUBCASE("single arm") {
        TsAgent agent(1);
        Rng rng(1);
        for (int i = 0; i < 100; ++i) CHECK(agent.select_action(rng) == 0);
    }
    SUBCASE("dominant arm wins almost always") {
        TsAgent agent({{1000, 1}, {1, 1000}});
        Rng rng(2);
        int zeros = 0;
        for (int i = 0; i < 10'000; ++i) zeros += agent.select_action(rng) == 0;
        CHECK(zeros >= 9990);
    }
    SUBCASE("symmetric arms are picked evenly") {
        TsAgent agent(3);
        Rng rng(3);
        std::array<int, 3> counts{};
        const int n = 30'000;
        for (int i = 0; i < n; ++i) ++counts[agent.select_action(rng)];
        for (int c : counts) CHECK(std::abs(c / double(n) - 1.0 / 3.0) < 0.02);
    }
    SUBCASE("draw order: one beta draw per arm in ascending order") {
        const std::vector<ArmPosterior> arms{{2, 3}, {4, 1}, {1, 1}};
        Rng a(11), b(11);
        const ArmIndex chosen = thompson_argmax(arms, a);
        std::vector<double> thetas;
        for (const auto& p : arms) thetas.push_back(beta_sample(p, b));
        const auto best = std::max_element(thetas.begin(), thetas.end()) - thetas.begin();
        CHECK(chosen == static_cast<ArmIndex>(best));
        CHECK((a == b));  // same number of values consumed
    }
}

TEST_CASE("ts_update") {
    SUBCASE("success") {
        TsAgent agent(1);
        agent.update(0, Reward(1.0));
        CHECK(agent.arms()[0] == ArmPosterior{2, 1});
    }
    SUBCASE("failure") {
        TsAgent agent(1);
        agent.update(0, Reward(0.0));
        CHECK(agent.arms()[0] == ArmPosterior{1, 2});
    }
    SUBCASE("fractional reward splits mass") {
        TsAgent agent({{2, 3}, {1, 1}});
        agent.update(0, Reward(0.25));
        CHECK(agent.arms()[0] == ArmPosterior{2.25, 3.75});
        CHECK(agent.arms()[1] == ArmPosterior{1, 1});
    }
    SUBCASE("out of range arm") {
        TsAgent agent(2);
        CHECK_THROWS_AS(agent.update(2, Reward(1.0)), ContractViolation);
    }
    SUBCASE("reward outside [0,1]") {
        CHECK_THROWS_AS(Reward(1.5), ContractViolation);
        CHECK_THROWS_AS(Reward(-0.1), ContractViolation);
    }
}

TEST_CASE("ts_update properties") {
    Rng gen(77);
    for (int trial = 0; trial < 200; ++trial) {
        const double r1 = uniform(gen, 0, 1), r2 = uniform(gen, 0, 1);
        TsAgent a({{uniform(gen, 0.01, 5), uniform(gen, 0.01, 5)}});
        TsAgent b = a;
        const double mass = a.arms()[0].S + a.arms()[0].F;
        a.update(0, Reward(r1));
        CHECK(a.arms()[0].S + a.arms()[0].F == doctest::Approx(mass + 1.0));
        a.update(0, Reward(r2));
        b.update(0, Reward(r2));
        b.update(0, Reward(r1));
        CHECK(a.arms()[0].S == doctest::Approx(b.arms()[0].S));
        CHECK(a.arms()[0].F == doctest::Approx(b.arms()[0].F));
        CHECK(a.arms()[0].S > 0.0);
        CHECK(a.arms()[0].F > 0.0);
    }
}

TEST_CASE("ts_select_action concentrates on the best arm") {
    // Arms (c*p, c*(1-p)) with c = 1000 and a probability gap of 0.2.
    const double c = 1000;
    TsAgent agent({{c * 0.3, c * 0.7}, {c * 0.5, c * 0.5}, {c * 0.7, c * 0.3}});
    Rng rng(5);
    int best = 0;
    for (int i = 0; i < 10'000; ++i) best += agent.select_action(rng) == 2;
    CHECK(best >= 9500);
}

TEST_CASE("ucb1_select_action") {
    SUBCASE("forced initial exploration") {
        Ucb1State s(3);
        for (ArmIndex expected : {0u, 1u, 2u}) {
            CHECK(s.select_action() == expected);
            s.update(expected, Reward(0.0));
        }
    }
    SUBCASE("dominant mean with equal bonuses") {
        Ucb1State s({10, 10}, {9, 1});
        CHECK(s.total_steps() == 20);
        CHECK(s.select_action() == 0);
    }
    SUBCASE("exploration bonus dominates") {
        // Hand calculation: arm0 = 0.6 + sqrt(2 ln 102 / 100) = 0.904,
        //                   arm1 = 0.8 + sqrt(2 ln 102 / 2)   = 2.950.
        const double ln_t = std::log(102.0);
        const double u0 = 0.6 + std::sqrt(2 * ln_t / 100);
        const double u1 = 0.8 + std::sqrt(2 * ln_t / 2);
        CHECK(u0 == doctest::Approx(0.9041).epsilon(1e-3));
        CHECK(u1 == doctest::Approx(2.9506).epsilon(1e-3));
        Ucb1State s({100, 2}, {60, 1.6});
        CHECK(s.select_action() == 1);
    }
    SUBCASE("ties go to the lowest index") {
        Ucb1State s({5, 5, 5}, {2, 2, 2});
        CHECK(s.select_action() == 0);
    }
    SUBCASE("invariants after play") {
        Ucb1State s(4);
        Rng rng(1);
        for (int t = 0; t < 500; ++t) s.update(s.select_action(), Reward(uniform(rng, 0, 1)));
        std::size_t total = 0;
        for (std::size_t a = 0; a < 4; ++a) {
            total += s.pulls()[a];
            CHECK(s.reward_sums()[a] <= static_cast<double>(s.pulls()[a]));
        }
        CHECK(total == s.total_steps());
    }
    SUBCASE("rejects sums above pulls") {
        CHECK_THROWS_AS(Ucb1State({1, 1}, {2, 0}), ContractViolation);
    }
}

TEST_CASE("random_select_action") {
    Rng rng(1);
    CHECK(random_select_action(1, rng) == 0);

    std::array<int, 4> counts{};
    const int n = 40'000;
    for (int i = 0; i < n; ++i) ++counts[random_select_action(4, rng)];
    for (int c : counts) CHECK(std::abs(c / double(n) - 0.25) < 0.02);

    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(random_select_action(7, a) == random_select_action(7, b));
}
