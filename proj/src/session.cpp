#include "gts/session.hpp"

#include <algorithm>
#include <sstream>

namespace gts {

std::vector<std::string> SessionConfig::invalid_fields() const {
    std::vector<std::string> bad;
    if (population_size < 1 || population_size > SessionLimits::max_population)
        bad.emplace_back("population_size");
    if (arm_count < SessionLimits::min_arms || arm_count > SessionLimits::max_arms)
        bad.emplace_back("arm_count");
    if (mutation_count > SessionLimits::max_mutations) bad.emplace_back("mutation_count");
    if (!(selection_ratio > 0.0 && selection_ratio <= 1.0)) bad.emplace_back("selection_ratio");
    if (!(init_upper >= 1.0 && init_upper <= SessionLimits::max_init_upper)) bad.emplace_back("init_upper");
    if (period && *period < 1) bad.emplace_back("period");
    return bad;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> fields)
    : ConfigError("invalid session config: " + join(fields)), fields_(std::move(fields)) {}

GtsConfig to_gts_config(const SessionConfig& c) {
    GtsConfig g;
    g.population_size = c.population_size;
    g.init_upper = c.init_upper;
    g.selection_ratio = c.selection_ratio;
    g.mutation_count = c.mutation_count;
    g.action_seed = derive_seed(c.seed, 0, "action");
    g.ga_seed = derive_seed(c.seed, 0, "ga");
    return g;
}

namespace {

const SessionConfig& checked(const SessionConfig& c) {
    if (auto bad = c.invalid_fields(); !bad.empty()) throw ValidationError(std::move(bad));
    return c;
}

}  // namespace

Session::Session(std::string id, SessionConfig config)
    : id_(std::move(id)),
      config_(checked(config)),
      learner_(to_gts_config(config_), config_.arm_count),
      env_(config_.arm_count, config_.period, derive_seed(config_.seed, 0, "env")),
      reward_rng_(derive_seed(config_.seed, 0, "reward")) {}

void Session::advance_one_phase() {
    if (next_phase(learner_.phase()) == Phase::recommend) ++step_;
    learner_.advance_phase([this](ArmIndex arm) {
        const Reward r = env_.step(arm, reward_rng_);
        reward_sum_ += r.value();
        ++rewards_seen_;
        return r;
    });
}

Snapshot Session::advance(Granularity granularity) {
    if (granularity == Granularity::phase) {
        advance_one_phase();
    } else {
        do {
            advance_one_phase();
        } while (learner_.phase() != Phase::mutate);
    }
    return snapshot();
}

Snapshot Session::reset() {
    *this = Session(id_, config_);
    return snapshot();
}

std::vector<AgentView> rescale(const Population& pop) {
    double arm_max = 0.0, fit_max = 0.0;
    for (const auto& g : pop) {
        for (const auto& a : g.arms) arm_max = std::max({arm_max, a.S, a.F});
        fit_max = std::max({fit_max, g.fitness.S, g.fitness.F});
    }
    const auto view = [](const ArmPosterior& p, double top) {
        return CellView{p.S, p.F, top > 0.0 ? p.S / top : 0.0, top > 0.0 ? p.F / top : 0.0};
    };
    std::vector<AgentView> out;
    out.reserve(pop.size());
    for (const auto& g : pop) {
        AgentView v;
        for (const auto& a : g.arms) v.arms.push_back(view(a, arm_max));
        v.fitness = view(g.fitness, fit_max);
        out.push_back(std::move(v));
    }
    return out;
}

Snapshot Session::snapshot() const {
    Snapshot s;
    s.session_id = id_;
    s.step = step_;
    s.phase = learner_.phase();
    s.population_size = config_.population_size;
    s.arm_count = config_.arm_count;
    s.agents = rescale(learner_.population());
    s.average_reward = rewards_seen_ ? reward_sum_ / static_cast<double>(rewards_seen_) : 0.0;

    const auto reached = [&](Phase p) {
        return s.phase != Phase::idle && static_cast<int>(s.phase) >= static_cast<int>(p);
    };
    const StepTrace& tr = learner_.trace();
    std::ostringstream detail;
    if (reached(Phase::recommend)) s.recommendations = tr.recommendations;
    if (reached(Phase::vote)) s.majority_action = tr.majority_action;
    if (reached(Phase::reward)) s.reward = tr.reward.value();
    if (reached(Phase::update)) s.aligned_ids = tr.aligned_ids;
    if (reached(Phase::select)) {
        s.fitness_samples = tr.fitness_samples;
        s.elite_ids = tr.elite_ids;
        std::vector<MemberId> eliminated;
        for (MemberId m = 0; m < tr.fitness_samples.size(); ++m)
            if (std::find(tr.elite_ids.begin(), tr.elite_ids.end(), m) == tr.elite_ids.end())
                eliminated.push_back(m);
        s.eliminated_ids = std::move(eliminated);
    }
    if (reached(Phase::crossover)) s.parent_pairs = tr.parent_pairs;
    if (reached(Phase::mutate)) s.mutations = tr.mutations;

    switch (s.phase) {
        case Phase::idle: detail << "press start to begin"; break;
        case Phase::recommend: detail << "every agent recommends an arm"; break;
        case Phase::vote: detail << "majority vote picks arm " << tr.majority_action; break;
        case Phase::reward: detail << "arm " << tr.majority_action << " paid " << tr.reward.value(); break;
        case Phase::update: detail << tr.aligned_ids.size() << " aligned agents updated"; break;
        case Phase::select: detail << s.eliminated_ids->size() << " agents eliminated"; break;
        case Phase::crossover: detail << tr.parent_pairs.size() << " children bred from elites"; break;
        case Phase::mutate: detail << tr.mutations.size() << " mutations applied"; break;
    }
    s.message.learning_step = s.step;
    s.message.average_reward = s.average_reward;
    s.message.stage = std::string(to_string(s.phase));
    std::ostringstream text;
    text << "learning step " << s.step << ", average reward " << s.average_reward << ", stage "
         << s.message.stage << ": " << detail.str();
    s.message.text = text.str();
    return s;
}

std::pair<std::string, Snapshot> SessionManager::create(const SessionConfig& config) {
    std::unique_lock lock(mutex_);
    std::string id = "s" + std::to_string(next_id_);
    auto entry = std::make_shared<Entry>();
    entry->session = std::make_unique<Session>(id, config);  // may throw ValidationError
    ++next_id_;
    Snapshot snap = entry->session->snapshot();
    sessions_.emplace(id, std::move(entry));
    return {id, std::move(snap)};
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFound("no session '" + id + "'");
    return it->second;
}

Snapshot SessionManager::advance(const std::string& id, Granularity granularity) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return entry->session->advance(granularity);
}

Snapshot SessionManager::reset(const std::string& id) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return entry->session->reset();
}

Snapshot SessionManager::snapshot(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return entry->session->snapshot();
}

bool SessionManager::remove(const std::string& id) {
    std::unique_lock lock(mutex_);
    return sessions_.erase(id) > 0;
}

std::size_t SessionManager::size() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

// ---- wire encoding ----

namespace {

Phase parse_phase(const std::string& name) {
    for (Phase p : {Phase::idle, Phase::recommend, Phase::vote, Phase::reward, Phase::update,
                    Phase::select, Phase::crossover, Phase::mutate})
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown phase '" + name + "'");
}

nlohmann::json cell_json(const CellView& c) {
    return {{"S", c.S}, {"F", c.F}, {"S_display", c.S_display}, {"F_display", c.F_display}};
}

CellView cell_from(const nlohmann::json& j) {
    return {j.at("S").get<double>(), j.at("F").get<double>(), j.at("S_display").get<double>(),
            j.at("F_display").get<double>()};
}

nlohmann::json pairs_json(const std::vector<ParentPair>& pairs) {
    auto arr = nlohmann::json::array();
    for (const auto& p : pairs) arr.push_back({p.first, p.second});
    return arr;
}

nlohmann::json mutations_json(const std::vector<MutationRecord>& muts) {
    auto arr = nlohmann::json::array();
    for (const auto& m : muts)
        arr.push_back({{"member", m.member}, {"arm", m.arm}, {"delta_S", m.delta_S}, {"delta_F", m.delta_F}});
    return arr;
}

template <class T>
void put(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <class T>
void take(const nlohmann::json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key) && !j[key].is_null()) v = j[key].get<T>();
}

}  // namespace

void to_json(nlohmann::json& j, const Snapshot& s) {
    auto agents = nlohmann::json::array();
    for (const auto& a : s.agents) {
        auto arms = nlohmann::json::array();
        for (const auto& c : a.arms) arms.push_back(cell_json(c));
        agents.push_back({{"arms", arms}, {"fitness", cell_json(a.fitness)}});
    }
    j = {{"schema_version", s.schema_version},
         {"session_id", s.session_id},
         {"step", s.step},
         {"phase", std::string(to_string(s.phase))},
         {"population_size", s.population_size},
         {"arm_count", s.arm_count},
         {"agents", agents},
         {"average_reward", s.average_reward},
         {"message",
          {{"learning_step", s.message.learning_step},
           {"average_reward", s.message.average_reward},
           {"stage", s.message.stage},
           {"text", s.message.text}}}};
    put(j, "recommendations", s.recommendations);
    put(j, "majority_action", s.majority_action);
    put(j, "reward", s.reward);
    put(j, "aligned_ids", s.aligned_ids);
    put(j, "fitness_samples", s.fitness_samples);
    put(j, "elite_ids", s.elite_ids);
    put(j, "eliminated_ids", s.eliminated_ids);
    if (s.parent_pairs) j["parent_pairs"] = pairs_json(*s.parent_pairs);
    if (s.mutations) j["mutations"] = mutations_json(*s.mutations);
}

void from_json(const nlohmann::json& j, Snapshot& s) {
    s = Snapshot{};
    s.schema_version = j.at("schema_version").get<int>();
    s.session_id = j.at("session_id").get<std::string>();
    s.step = j.at("step").get<std::size_t>();
    s.phase = parse_phase(j.at("phase").get<std::string>());
    s.population_size = j.at("population_size").get<std::size_t>();
    s.arm_count = j.at("arm_count").get<std::size_t>();
    for (const auto& a : j.at("agents")) {
        AgentView v;
        for (const auto& c : a.at("arms")) v.arms.push_back(cell_from(c));
        v.fitness = cell_from(a.at("fitness"));
        s.agents.push_back(std::move(v));
    }
    s.average_reward = j.at("average_reward").get<double>();
    const auto& m = j.at("message");
    s.message = {m.at("learning_step").get<std::size_t>(), m.at("average_reward").get<double>(),
                 m.at("stage").get<std::string>(), m.at("text").get<std::string>()};
    take(j, "recommendations", s.recommendations);
    take(j, "majority_action", s.majority_action);
    take(j, "reward", s.reward);
    take(j, "aligned_ids", s.aligned_ids);
    take(j, "fitness_samples", s.fitness_samples);
    take(j, "elite_ids", s.elite_ids);
    take(j, "eliminated_ids", s.eliminated_ids);
    if (j.contains("parent_pairs")) {
        std::vector<ParentPair> pairs;
        for (const auto& p : j["parent_pairs"]) pairs.push_back({p.at(0).get<MemberId>(), p.at(1).get<MemberId>()});
        s.parent_pairs = std::move(pairs);
    }
    if (j.contains("mutations")) {
        std::vector<MutationRecord> muts;
        for (const auto& mj : j["mutations"])
            muts.push_back({mj.at("member").get<MemberId>(), mj.at("arm").get<ArmIndex>(),
                            mj.at("delta_S").get<double>(), mj.at("delta_F").get<double>()});
        s.mutations = std::move(muts);
    }
}

void to_json(nlohmann::json& j, const SessionConfig& c) {
    j = {{"population_size", c.population_size},
         {"arm_count", c.arm_count},
         {"mutation_count", c.mutation_count},
         {"selection_ratio", c.selection_ratio},
         {"init_upper", c.init_upper},
         {"period", c.period ? nlohmann::json(*c.period) : nlohmann::json(nullptr)},
         {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, SessionConfig& c) {
    c = SessionConfig{};
    if (!j.is_object()) throw ValidationError({"body"});
    std::vector<std::string> bad;
    const auto read = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        try {
            field = j.at(key).get<std::decay_t<decltype(field)>>();
        } catch (const nlohmann::json::exception&) {
            bad.emplace_back(key);
        }
    };
    read("population_size", c.population_size);
    read("arm_count", c.arm_count);
    read("mutation_count", c.mutation_count);
    read("selection_ratio", c.selection_ratio);
    read("init_upper", c.init_upper);
    read("seed", c.seed);
    if (j.contains("period") && !j["period"].is_null()) {
        std::size_t n = 0;
        read("period", n);
        c.period = n;
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));
}

void to_json(nlohmann::json& j, const StepTrace& t) {
    j = {{"recommendations", t.recommendations},
         {"majority_action", t.majority_action},
         {"aligned_ids", t.aligned_ids},
         {"reward", t.reward.value()},
         {"fitness_samples", t.fitness_samples},
         {"elite_ids", t.elite_ids},
         {"parent_pairs", pairs_json(t.parent_pairs)},
         {"mutations", mutations_json(t.mutations)}};
}

}  // namespace gts
