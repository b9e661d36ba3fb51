// Command-line front end: single experiments, the benchmark grids,
// epidemic studies and the interactive session server.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gts/presets.hpp"
#include "gts/report.hpp"
#include "gts/server.hpp"

namespace fs = std::filesystem;
using namespace gts;

namespace {

struct Options {
    std::string agent = "gts";
    std::string env = "mab";
    std::size_t arms = 10;
    std::vector<std::size_t> levels{4, 4, 4};
    std::size_t population = 100;
    std::size_t mutations = 10;
    double selection_ratio = 0.5;
    double init_upper = 2.0;
    std::string period = "none";
    std::size_t horizon = 100;
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    double lambda = 1.0;
    std::vector<double> lambdas;
    std::string scalarize = "convex";
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;
    bool no_crossover = false;
    bool no_mutation = false;
    bool weighted_crossover = false;
};

Period parse_period(const std::string& text) {
    if (text == "none" || text == "inf" || text.empty()) return std::nullopt;
    try {
        const auto n = std::stoul(text);
        if (n == 0) throw ConfigError("--nonstationary-period must be positive or 'none'");
        return n;
    } catch (const std::logic_error&) {
        throw ConfigError("--nonstationary-period expects a positive integer or 'none'");
    }
}

AgentSpec agent_from(const Options& o) {
    AgentSpec a;
    a.kind = parse_agent_kind(o.agent);
    a.gts.population_size = o.population;
    a.gts.mutation_count = o.mutations;
    a.gts.selection_ratio = o.selection_ratio;
    a.gts.init_upper = o.init_upper;
    a.gts.crossover = !o.no_crossover;
    a.gts.mutation = !o.no_mutation;
    a.gts.weighted_crossover = o.weighted_crossover;
    if (a.kind == AgentKind::gts || a.kind == AgentKind::indcomb_gts) {
        std::ostringstream label;
        label << (a.kind == AgentKind::gts ? "GTS-p" : "IndComb-GTS-p") << o.population << "-m" << o.mutations;
        a.label = label.str();
    }
    return a;
}

EpidemicSpec epidemic_from(const Options& o) {
    EpidemicSpec e;
    e.levels = o.levels;
    e.period = parse_period(o.period);
    e.lambda = o.lambda;
    if (o.scalarize == "literal")
        e.mode = ScalarizeMode::additive_literal;
    else if (o.scalarize == "convex")
        e.mode = ScalarizeMode::convex;
    else
        throw ConfigError("--scalarize must be literal or convex");
    return e;
}

ExperimentConfig config_from(const Options& o) {
    ExperimentConfig cfg;
    cfg.agent = agent_from(o);
    if (o.env == "epidemic")
        cfg.env = epidemic_from(o);
    else if (o.env == "mab")
        cfg.env = MabSpec{o.arms, parse_period(o.period)};
    else
        throw ConfigError("--env must be mab or epidemic");
    cfg.horizon = o.horizon;
    cfg.trials = o.trials;
    cfg.base_seed = o.seed;
    cfg.threads = o.threads;
    return cfg;
}

std::string slug(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (c == '+')
            out += "plus";
        else if (c == '-' && !out.empty() && out.back() != '_')
            out += '-';
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && (out.back() == '_' || out.back() == '-')) out.pop_back();
    return out;
}

void print_row(const ExperimentResult& r) {
    std::cout << std::left << std::setw(16) << describe(r.config.env) << std::setw(18)
              << r.config.agent.name() << std::right << std::fixed << std::setprecision(2)
              << std::setw(8) << r.reward.mean << " +- " << std::setw(5) << r.reward.stderr_;
    if (r.cost)
        std::cout << "   cost " << std::setw(8) << r.cost->mean << " +- " << std::setw(6) << r.cost->stderr_;
    std::cout << '\n';
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

void emit_single(const ExperimentResult& r, const Options& o) {
    print_row(r);
    if (o.out.empty()) return;
    std::ostringstream os;
    if (o.format == "json")
        os << summary_json(r).dump(2) << '\n';
    else
        write_trials_csv(os, r);
    write_file(o.out, os.str());
}

// Runs a grid of cells and writes <out>/summary.{csv,json} plus one per-trial
// CSV per cell.
int run_grid(const std::vector<Cell>& cells, const Options& o, const std::string& default_dir) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<ExperimentResult> results;
    for (const auto& cell : cells) {
        ExperimentConfig cfg;
        cfg.agent = cell.agent;
        cfg.env = cell.env;
        cfg.horizon = o.horizon;
        cfg.trials = o.trials;
        cfg.base_seed = o.seed;
        cfg.threads = o.threads;
        results.push_back(run_experiment(cfg));
        print_row(results.back());
    }
    const fs::path dir = o.out.empty() ? fs::path(default_dir) : fs::path(o.out);
    fs::create_directories(dir);
    for (const auto& r : results) {
        std::ostringstream os;
        write_trials_csv(os, r);
        write_file(dir / (slug(r.config.agent.name()) + "__" + slug(describe(r.config.env)) + ".csv"), os.str());
    }
    std::ostringstream summary;
    if (o.format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& r : results) arr.push_back(summary_json(r));
        summary << arr.dump(2) << '\n';
        write_file(dir / "summary.json", summary.str());
    } else {
        write_summary_csv(summary, results);
        write_file(dir / "summary.csv", summary.str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "wrote " << results.size() << " cells to " << dir.string() << " in " << std::setprecision(1)
              << secs << " s\n";
    return 0;
}

std::vector<AgentSpec> epidemic_agents(const Options& o) {
    AgentSpec gts_spec = agent_from(o);
    gts_spec.kind = AgentKind::indcomb_gts;
    gts_spec.label = "IndComb-GTS";
    AgentSpec ts_spec{AgentKind::indcomb_ts, {}, {}, "IndComb-TS"};
    return {{AgentKind::random, {}, {}, "Random"}, {AgentKind::random_fixed, {}, {}, "RandomFixed"},
            ts_spec, gts_spec};
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--horizon", o.horizon, "Steps per trial")->check(CLI::PositiveNumber);
    app->add_option("--trials", o.trials, "Independent trials")->check(CLI::PositiveNumber);
    app->add_option("--seed", o.seed, "Base seed");
    app->add_option("--out", o.out, "Output file (run) or directory (grids)");
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void add_agent(CLI::App* app, Options& o) {
    app->add_option("--agent", o.agent, "random|random-fixed|ts|ucb1|gts|indcomb-gts|indcomb-ts");
    app->add_option("--population", o.population, "GTS population size M")->check(CLI::PositiveNumber);
    app->add_option("--mutations", o.mutations, "GTS mutations per step");
    app->add_option("--selection-ratio", o.selection_ratio, "Elite fraction")->check(CLI::Range(0.0, 1.0));
    app->add_option("--init-upper", o.init_upper, "Initial posterior mass upper bound Q")
        ->check(CLI::Range(1.0, 1e9));
    app->add_flag("--no-crossover", o.no_crossover, "Ablation: skip crossover");
    app->add_flag("--no-mutation", o.no_mutation, "Ablation: skip mutation");
    app->add_flag("--weighted-crossover", o.weighted_crossover, "Blend parents instead of copying arms");
}

void add_env(CLI::App* app, Options& o) {
    app->add_option("--env", o.env, "mab|epidemic")->check(CLI::IsMember({"mab", "epidemic"}));
    app->add_option("--arms", o.arms, "Bandit arms K")->check(CLI::PositiveNumber);
    app->add_option("--levels", o.levels, "Epidemic levels per dimension")->delimiter(',');
    app->add_option("--nonstationary-period", o.period, "Reset period n or 'none'");
    app->add_option("--lambda", o.lambda, "Reward/cost trade-off")->check(CLI::Range(0.0, 1.0));
    app->add_option("--scalarize", o.scalarize, "literal|convex")->check(CLI::IsMember({"literal", "convex"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genetic Thompson Sampling workbench"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "Run one experiment");
    add_common(run, o);
    add_agent(run, o);
    add_env(run, o);

    auto* table1 = app.add_subcommand("table1", "Population-size grid on stationary and NS MAB-5/10/50");
    auto* table2 = app.add_subcommand("table2", "Crossover/mutation ablation on NS MAB-5/10/50");
    auto* sweep_pop = app.add_subcommand("sweep-population", "GTS over population sizes 10, 25, 100");
    auto* sweep_mut = app.add_subcommand("sweep-mutation", "GTS-p100 over mutation counts");
    for (auto* sub : {table1, table2, sweep_pop, sweep_mut}) add_common(sub, o);

    auto* epidemic = app.add_subcommand("epidemic", "Random, RandomFixed, IndComb-TS and IndComb-GTS at one lambda");
    auto* pareto = app.add_subcommand("pareto", "Lambda sweep with binned cases/budget Pareto frontiers");
    for (auto* sub : {epidemic, pareto}) {
        add_common(sub, o);
        add_agent(sub, o);
        add_env(sub, o);
    }
    pareto->add_option("--lambdas", o.lambdas, "Lambda grid (default 0,0.25,0.5,0.75,1)")->delimiter(',');

    auto* serve = app.add_subcommand("serve", "Serve interactive GTS sessions over HTTP");
    std::string host = "127.0.0.1";
    int port = 8080;
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            emit_single(run_experiment(config_from(o)), o);
        } else if (table1->parsed()) {
            return run_grid(table1_cells(), o, "results/table1");
        } else if (table2->parsed()) {
            return run_grid(table2_cells(), o, "results/table2");
        } else if (sweep_pop->parsed()) {
            return run_grid(population_sweep_cells(), o, "results/sweep-population");
        } else if (sweep_mut->parsed()) {
            return run_grid(mutation_sweep_cells(), o, "results/sweep-mutation");
        } else if (epidemic->parsed()) {
            o.env = "epidemic";
            std::vector<Cell> cells;
            for (const auto& agent : epidemic_agents(o)) cells.push_back({agent, epidemic_from(o)});
            return run_grid(cells, o, "results/epidemic");
        } else if (pareto->parsed()) {
            o.env = "epidemic";
            ExperimentConfig base = config_from(o);
            base.agent = epidemic_agents(o).back();
            const auto lambdas = o.lambdas.empty() ? default_lambdas() : o.lambdas;
            const auto sweep = pareto_sweep(base, epidemic_agents(o), lambdas);
            for (const auto& run_cell : sweep.runs)
                std::cout << std::left << std::setw(14) << run_cell.agent << " lambda " << std::fixed
                          << std::setprecision(2) << run_cell.lambda << "  budget " << std::setprecision(3)
                          << run_cell.average.budget << "  cases " << run_cell.average.cases << '\n';
            const fs::path dir = o.out.empty() ? fs::path("results/pareto") : fs::path(o.out);
            std::ostringstream points, fronts;
            if (o.format == "json") {
                write_file(dir / "pareto.json", sweep_json(sweep).dump(2) + "\n");
            } else {
                write_sweep_points_csv(points, sweep);
                write_frontiers_csv(fronts, sweep);
                write_file(dir / "points.csv", points.str());
                write_file(dir / "frontiers.csv", fronts.str());
            }
            std::cout << "wrote " << dir.string() << '\n';
        } else if (serve->parsed()) {
            SessionManager sessions;
            httplib::Server server;
            install_routes(server, sessions);
            std::cout << "serving sessions on http://" << host << ':' << port << '\n';
            if (!server.listen(host, port)) {
                std::cerr << "cannot bind " << host << ':' << port << '\n';
                return 1;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
