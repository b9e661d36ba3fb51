// Acceptance suite: one PASS/FAIL line per headline criterion.
// Usage: acceptance <path-to-gts-cli> [scratch-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bayes_bound.hpp"
#include "gts/harness.hpp"
#include "gts/presets.hpp"
#include "stats_oracles.hpp"

using namespace gts;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kTrials = 50;
constexpr std::size_t kHorizon = 100;

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name << ": " << detail << std::endl;
}

std::string fmt(double x, int prec = 2) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << x;
    return os.str();
}

std::string fmt(const Summary& s) { return fmt(s.mean) + " +- " + fmt(s.stderr_); }

Summary run(const AgentSpec& agent, const EnvSpec& env) {
    ExperimentConfig cfg;
    cfg.agent = agent;
    cfg.env = env;
    cfg.horizon = kHorizon;
    cfg.trials = kTrials;
    cfg.base_seed = 0;
    return run_experiment(cfg).reward;
}

MabSpec ns_mab(std::size_t k) { return MabSpec{k, Period{10}, {}}; }

// ---------------------------------------------------------------------------

void nonstationary_advantage() {
    const auto ts = run(ts_agent(), ns_mab(10));
    const auto gts = run(gts_agent(100, 10), ns_mab(10));
    const double gap = gts.mean - ts.mean;
    testing::BayesBound bound;
    const double ceiling = 10.0 * bound.value(10, 10);
    report(gap >= 15.0 && separated_above(gts, ts),
           "nonstationary advantage (NS MAB-10, GTS-p100 - TS >= 15, 2se separated)",
           "GTS-p100 " + fmt(gts) + " vs TS " + fmt(ts) + ", gap " + fmt(gap) +
               "; Bayes-optimal ceiling for any agent on this world is " + fmt(ceiling) + " per 100 steps");
}

void stationary_parity() {
    const auto ts = run(ts_agent(), MabSpec{5, std::nullopt, {}});
    const auto gts = run(gts_agent(100, 10), MabSpec{5, std::nullopt, {}});
    const double diff = std::abs(gts.mean - ts.mean);
    report(diff <= 6.0, "stationary parity (MAB-5, |GTS-p100 - TS| <= 6)",
           "GTS-p100 " + fmt(gts) + " vs TS " + fmt(ts) + ", |diff| " + fmt(diff));
}

void population_monotonicity() {
    bool pass = true;
    std::string detail;
    for (std::size_t k : {10, 50}) {
        const auto p10 = run(gts_agent(10, 10), ns_mab(k));
        const auto p100 = run(gts_agent(100, 10), ns_mab(k));
        pass = pass && p100.mean > p10.mean && separated_above(p100, p10);
        detail += (detail.empty() ? "" : "; ") + std::string("NS MAB-") + std::to_string(k) + ": GTS-p100 " +
                  fmt(p100) + " vs GTS-p10 " + fmt(p10);
    }
    report(pass, "population monotonicity (GTS-p100 > GTS-p10, 2se separated)", detail);
}

void ablation_ordering() {
    const auto full = run(ablation_agent(true, true), ns_mab(10));
    bool pass = true;
    std::string detail = "(C+,M+) " + fmt(full);
    for (auto [c, m] : {std::pair{false, false}, std::pair{true, false}, std::pair{false, true}}) {
        const auto variant = ablation_agent(c, m);
        const auto s = run(variant, ns_mab(10));
        pass = pass && full.mean - s.mean >= 10.0;
        detail += "; " + variant.name().substr(4) + " " + fmt(s) + " (margin " + fmt(full.mean - s.mean) + ")";
    }
    report(pass, "ablation ordering (NS MAB-10, (C+,M+) beats each variant by >= 10)", detail);
}

void reduction_oracle() {
    GtsConfig cfg;
    cfg.population_size = 1;
    cfg.selection_ratio = 1.0;
    cfg.mutation_count = 0;
    cfg.init_upper = 1.0;
    std::size_t mismatches = 0, steps = 0;
    for (std::uint64_t e = 0; e < 10; ++e) {
        const std::size_t k = 2 + e % 9;
        const Period period = e % 2 ? Period{10} : Period{};
        BernoulliMab env_gts(k, period, 1000 + e), env_ts(k, period, 1000 + e);
        Rng reward_gts(2000 + e), reward_ts(2000 + e);
        const std::uint64_t action_seed = 3000 + e;
        Rng action_gts(action_seed), action_ts(action_seed), ga(4000 + e);
        Population pop = gts_init(cfg, k, ga);
        TsAgent ts(k);
        for (int t = 0; t < 1000; ++t, ++steps) {
            StepTrace trace;
            std::tie(pop, trace) = gts_step(std::move(pop), cfg,
                                            [&](ArmIndex a) { return env_gts.step(a, reward_gts); }, action_gts, ga);
            const ArmIndex a = ts.select_action(action_ts);
            ts.update(a, env_ts.step(a, reward_ts));
            const bool same = trace.majority_action == a &&
                              std::equal(pop[0].arms.begin(), pop[0].arms.end(), ts.arms().begin(), ts.arms().end());
            mismatches += !same;
        }
    }
    report(mismatches == 0, "reduction oracle (M=1, gamma=1, mu=0, Q=1 equals TS bitwise)",
           std::to_string(steps) + " steps over 10 environments, " + std::to_string(mismatches) + " mismatches");
}

// --- property suites -------------------------------------------------------

bool gts_step_properties(std::string& why) {
    Rng gen(7);
    for (int trial = 0; trial < 60; ++trial) {
        GtsConfig cfg;
        cfg.population_size = 1 + uniform_index(gen, 40);
        cfg.init_upper = uniform(gen, 1.0, 10.0);
        cfg.selection_ratio = uniform(gen, 0.05, 1.0);
        cfg.mutation_count = uniform_index(gen, 60);
        const std::size_t k = 2 + uniform_index(gen, 9);
        BernoulliMab env(k, Period{10}, 500 + trial);
        Rng init(trial), action(100 + trial), ga(200 + trial), reward(300 + trial);
        Population pop = gts_init(cfg, k, init);
        const std::size_t elites = cfg.elite_count();
        for (int t = 0; t < 40; ++t) {
            StepState state{pop, {}, Phase::idle};
            const auto fn = [&](ArmIndex a) { return env.step(a, reward); };
            while (state.phase != Phase::update) advance_phase(state, cfg, action, ga, fn);
            const Population updated = state.population;
            const auto& recs = state.trace.recommendations;
            for (MemberId m = 0; m < pop.size(); ++m) {
                const bool aligned = recs[m] == state.trace.majority_action;
                const bool listed = std::count(state.trace.aligned_ids.begin(), state.trace.aligned_ids.end(), m) == 1;
                if (aligned != listed || (!aligned && !(updated[m] == pop[m]))) {
                    why = "aligned-update exclusivity";
                    return false;
                }
            }
            while (state.phase != Phase::crossover) advance_phase(state, cfg, action, ga, fn);
            for (std::size_t c = 0; c < state.trace.parent_pairs.size(); ++c) {
                const Genome& child = state.population[elites + c];
                const auto [i, j] = state.trace.parent_pairs[c];
                if (!(child.fitness == ArmPosterior{1, 1})) {
                    why = "child fitness (1,1)";
                    return false;
                }
                for (ArmIndex a = 0; a < k; ++a)
                    if (!(child.arms[a] == updated[i].arms[a] || child.arms[a] == updated[j].arms[a])) {
                        why = "crossover parent-copy exactness";
                        return false;
                    }
            }
            advance_phase(state, cfg, action, ga, fn);
            pop = state.population;
            if (pop.size() != cfg.population_size) {
                why = "population-size invariance";
                return false;
            }
            for (const auto& g : pop) {
                bool ok = g.fitness.S >= cfg.clamp_min && g.fitness.F >= cfg.clamp_min;
                for (const auto& arm : g.arms) ok = ok && arm.S >= cfg.clamp_min && arm.F >= cfg.clamp_min;
                if (!ok) {
                    why = "posterior positivity";
                    return false;
                }
            }
        }
    }
    return true;
}

bool determinism(std::string& why) {
    for (AgentKind kind : {AgentKind::ts, AgentKind::ucb1, AgentKind::gts, AgentKind::random}) {
        ExperimentConfig cfg;
        cfg.agent.kind = kind;
        cfg.agent.gts.population_size = 30;
        cfg.env = ns_mab(10);
        cfg.trials = 4;
        cfg.threads = 1;
        const auto a = run_experiment(cfg);
        cfg.threads = 3;
        const auto b = run_experiment(cfg);
        if (!(a.trials == b.trials)) {
            why = "determinism under fixed seeds (" + to_string(kind) + ")";
            return false;
        }
    }
    ExperimentConfig epi;
    epi.agent.kind = AgentKind::indcomb_gts;
    epi.agent.gts.population_size = 20;
    epi.env = EpidemicSpec{};
    epi.trials = 2;
    if (!(run_trial(epi, 1) == run_trial(epi, 1))) {
        why = "determinism under fixed seeds (epidemic)";
        return false;
    }
    return true;
}

bool pareto_oracle(std::string& why) {
    Rng rng(31);
    for (int set = 0; set < 1000; ++set) {
        std::vector<ParetoPoint> pts(1 + uniform_index(rng, 80));
        for (auto& p : pts)
            p = set % 2 ? ParetoPoint{uniform(rng, 0, 1), uniform(rng, 0.3, 1)}
                        : ParetoPoint{uniform_index(rng, 10) / 9.0, std::exp(-(uniform_index(rng, 10) / 9.0))};
        std::vector<ParetoPoint> brute;
        for (const auto& q : pts) {
            const bool dominated = std::any_of(pts.begin(), pts.end(), [&](const ParetoPoint& p) {
                return p.budget <= q.budget && p.cases <= q.cases && (p.budget < q.budget || p.cases < q.cases);
            });
            if (!dominated) brute.push_back(q);
        }
        std::sort(brute.begin(), brute.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
            return a.budget < b.budget || (a.budget == b.budget && a.cases < b.cases);
        });
        brute.erase(std::unique(brute.begin(), brute.end()), brute.end());
        if (pareto_frontier(pts) != brute) {
            why = "Pareto frontier vs brute force (set " + std::to_string(set) + ")";
            return false;
        }
    }
    return true;
}

bool quantile_chi_square(std::string& why, double& x2) {
    Rng rng(5);
    std::vector<double> xs(10'000);
    for (auto& x : xs) x = uniform(rng, 0, 1);
    std::vector<double> occ(10, 0.0);
    for (double b : quantile_bin(xs, 10)) ++occ[static_cast<std::size_t>(std::lround(b * 9))];
    x2 = testing::chi_square(occ, std::vector<double>(10, 1000.0));
    const double sigma = std::sqrt(10'000 * 0.1 * 0.9);
    const bool within = std::all_of(occ.begin(), occ.end(), [&](double o) { return std::abs(o - 1000.0) <= 3 * sigma; });
    if (!within || x2 >= testing::chi_square_critical_999(9)) {
        why = "quantile-bin chi-square";
        return false;
    }
    return true;
}

void property_suites() {
    std::string why;
    double x2 = 0;
    const bool pass = gts_step_properties(why) && determinism(why) && pareto_oracle(why) && quantile_chi_square(why, x2);
    report(pass, "property suites",
           pass ? "population size, positivity, aligned-update exclusivity, parent-copy exactness, child fitness, "
                  "determinism, Pareto brute force (1000 sets), quantile-bin chi-square " +
                      fmt(x2) + " < " + fmt(testing::chi_square_critical_999(9), 3)
                : "violated: " + why);
}

void epidemic() {
    const EpidemicSpec world{{4, 4, 4}, std::nullopt, 1.0, ScalarizeMode::convex};
    const AgentSpec gts{AgentKind::indcomb_gts, {}, {}, "IndComb-GTS"};
    const AgentSpec random{AgentKind::random, {}, {}, "Random"};
    const AgentSpec fixed{AgentKind::random_fixed, {}, {}, "RandomFixed"};
    auto run_epi = [&](const AgentSpec& agent, double lambda) {
        ExperimentConfig cfg;
        cfg.agent = agent;
        EpidemicSpec spec = world;
        spec.lambda = lambda;
        cfg.env = spec;
        cfg.trials = kTrials;
        cfg.horizon = kHorizon;
        return run_experiment(cfg);
    };
    const auto g1 = run_epi(gts, 1.0), r1 = run_epi(random, 1.0), f1 = run_epi(fixed, 1.0);
    const bool reward_ok = separated_above(g1.reward, r1.reward) && separated_above(g1.reward, f1.reward);
    const auto g0 = run_epi(gts, 0.0), r0 = run_epi(random, 0.0);
    const bool cost_ok = g0.cost->mean <= r0.cost->mean;

    ExperimentConfig base;
    base.env = world;
    base.trials = kTrials;
    base.horizon = kHorizon;
    const auto sweep = pareto_sweep(base, {gts, random}, default_lambdas());
    const bool frontier_ok =
        frontier_weakly_dominates(sweep.frontiers.at(0).frontier, sweep.frontiers.at(1).frontier, sweep.bins);

    report(reward_ok && cost_ok && frontier_ok, "epidemic (EPI-4x4x4, convex scalarization)",
           "lambda=1 reward IndComb-GTS " + fmt(g1.reward) + " vs Random " + fmt(r1.reward) + " vs RandomFixed " +
               fmt(f1.reward) + (reward_ok ? " [ok]" : " [not separated]") + "; lambda=0 cost " +
               fmt(g0.cost->mean) + " vs " + fmt(r0.cost->mean) + (cost_ok ? " [ok]" : " [higher]") +
               "; frontier weakly dominates: " + (frontier_ok ? "yes" : "no"));
}

// --- reproduction commands -------------------------------------------------

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted && c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
            cells.back() += '"';
            ++i;
        } else if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    return cells;
}

// Checks summary.csv and every per-cell trial CSV in dir.
bool check_grid_output(const fs::path& dir, std::size_t cells, std::string& why) {
    std::ifstream summary(dir / "summary.csv");
    std::string line;
    if (!std::getline(summary, line) || line != "agent,env,mean,stderr,trials") {
        why = dir.string() + "/summary.csv header";
        return false;
    }
    std::size_t rows = 0;
    while (std::getline(summary, line)) {
        const auto c = split(line);
        if (c.size() != 5 || std::stoul(c[4]) != kTrials) {
            why = "summary row '" + line + "'";
            return false;
        }
        ++rows;
    }
    if (rows != cells) {
        why = "summary has " + std::to_string(rows) + " rows, expected " + std::to_string(cells);
        return false;
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().filename() == "summary.csv") continue;
        ++files;
        std::ifstream f(entry.path());
        std::getline(f, line);
        const auto header = split(line);
        if (header.size() != 3 + kHorizon || header[0] != "trial_index" || header[1] != "seed" ||
            header[2] != "cumulative_reward" || header[3] != "reward_1" || header.back() != "reward_100") {
            why = entry.path().filename().string() + " header";
            return false;
        }
        std::size_t trial_rows = 0;
        while (std::getline(f, line)) {
            const auto c = split(line);
            double sum = 0;
            for (std::size_t i = 3; i < c.size(); ++i) sum += std::stod(c[i]);
            if (c.size() != header.size() || std::abs(sum - std::stod(c[2])) > 1e-9) {
                why = entry.path().filename().string() + " row " + std::to_string(trial_rows);
                return false;
            }
            ++trial_rows;
        }
        if (trial_rows != kTrials) {
            why = entry.path().filename().string() + " has " + std::to_string(trial_rows) + " rows";
            return false;
        }
    }
    if (files != cells) {
        why = std::to_string(files) + " per-cell files, expected " + std::to_string(cells);
        return false;
    }
    return true;
}

void reproduction_commands(const std::string& cli, const fs::path& scratch) {
    fs::remove_all(scratch);
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string why;
    for (auto [cmd, cells] : {std::pair<std::string, std::size_t>{"table1", 36}, {"table2", 15}}) {
        const fs::path dir = scratch / cmd;
        const std::string line = "\"" + cli + "\" " + cmd + " --out \"" + dir.string() + "\" > \"" +
                                 (scratch / (cmd + ".log")).string() + "\" 2>&1";
        fs::create_directories(scratch);
        if (std::system(line.c_str()) != 0) {
            pass = false;
            why = cmd + " exited with an error";
            break;
        }
        if (!check_grid_output(dir, cells, why)) {
            pass = false;
            break;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && secs < 600.0;
    report(pass, "table1 + table2 reproduction commands (< 10 min, documented CSV schema)",
           fmt(secs, 1) + " s" + (why.empty() ? ", 36 + 15 cells, schema ok" : ", " + why));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <gts-cli> [scratch-dir]\n";
        return 2;
    }
    const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "gts_acceptance";

    const std::vector<std::function<void()>> criteria{
        nonstationary_advantage, stationary_parity, population_monotonicity, ablation_ordering,
        reduction_oracle,        property_suites,   epidemic,
        [&] { reproduction_commands(argv[1], scratch); }};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            report(false, "criterion raised", e.what());
        }
    }
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " of " + std::to_string(criteria.size()) +
                                                  " criteria FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
