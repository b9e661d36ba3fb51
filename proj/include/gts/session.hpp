#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "gts/environments.hpp"
#include "gts/gts.hpp"

namespace gts {

inline constexpr int kSnapshotSchemaVersion = 1;

struct SessionLimits {
    static constexpr std::size_t max_population = 20;
    static constexpr std::size_t min_arms = 2;
    static constexpr std::size_t max_arms = 10;
    static constexpr std::size_t max_mutations = 100;
    static constexpr double max_init_upper = 100.0;
};

struct SessionConfig {
    std::size_t population_size = 10;
    std::size_t arm_count = 5;
    std::size_t mutation_count = 2;
    double selection_ratio = 0.5;
    double init_upper = 2.0;
    Period period;  // nullopt = stationary bandit
    std::uint64_t seed = 0;

    // Names of the fields that are out of bounds; empty when valid.
    std::vector<std::string> invalid_fields() const;
    friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

class ValidationError : public ConfigError {
public:
    explicit ValidationError(std::vector<std::string> fields);
    const std::vector<std::string>& fields() const noexcept { return fields_; }

private:
    std::vector<std::string> fields_;
};

// Raw parameters with their rescaled bar lengths.
struct CellView {
    double S = 0.0;
    double F = 0.0;
    double S_display = 0.0;
    double F_display = 0.0;
    friend bool operator==(const CellView&, const CellView&) = default;
};

struct AgentView {
    std::vector<CellView> arms;
    CellView fitness;
    friend bool operator==(const AgentView&, const AgentView&) = default;
};

struct MessageLine {
    std::size_t learning_step = 0;
    double average_reward = 0.0;
    std::string stage;
    std::string text;
    friend bool operator==(const MessageLine&, const MessageLine&) = default;
};

// Everything the UI needs to draw one frame. Optional fields appear only once
// the current step has reached the phase that produces them.
struct Snapshot {
    int schema_version = kSnapshotSchemaVersion;
    std::string session_id;
    std::size_t step = 0;  // steps started so far (1-based index of the current step)
    Phase phase = Phase::idle;
    std::size_t population_size = 0;
    std::size_t arm_count = 0;
    std::vector<AgentView> agents;
    std::optional<std::vector<ArmIndex>> recommendations;
    std::optional<ArmIndex> majority_action;
    std::optional<double> reward;
    std::optional<std::vector<MemberId>> aligned_ids;
    std::optional<std::vector<double>> fitness_samples;
    std::optional<std::vector<MemberId>> elite_ids;
    std::optional<std::vector<MemberId>> eliminated_ids;
    std::optional<std::vector<ParentPair>> parent_pairs;
    std::optional<std::vector<MutationRecord>> mutations;
    double average_reward = 0.0;
    MessageLine message;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

void to_json(nlohmann::json& j, const Snapshot& s);
void from_json(const nlohmann::json& j, Snapshot& s);
void to_json(nlohmann::json& j, const SessionConfig& c);
void from_json(const nlohmann::json& j, SessionConfig& c);  // missing keys keep defaults
void to_json(nlohmann::json& j, const StepTrace& t);

// Largest raw S or F over the whole grid maps to 1.
std::vector<AgentView> rescale(const Population& pop);

enum class Granularity { phase, step };

// One interactive simulation: a GTS population playing a Bernoulli bandit.
class Session {
public:
    Session(std::string id, SessionConfig config);

    Snapshot advance(Granularity granularity);
    Snapshot reset();
    Snapshot snapshot() const;

    const SessionConfig& config() const noexcept { return config_; }
    const Population& population() const noexcept { return learner_.population(); }

private:
    void advance_one_phase();

    std::string id_;
    SessionConfig config_;
    GtsLearner learner_;
    BernoulliMab env_;
    Rng reward_rng_;
    std::size_t step_ = 0;
    double reward_sum_ = 0.0;
    std::size_t rewards_seen_ = 0;
};

GtsConfig to_gts_config(const SessionConfig& config);

// Thread-safe registry. Commands on one session are serialized by that
// session's mutex; different sessions never block each other.
class SessionManager {
public:
    std::pair<std::string, Snapshot> create(const SessionConfig& config);
    Snapshot advance(const std::string& id, Granularity granularity);
    Snapshot reset(const std::string& id);
    Snapshot snapshot(const std::string& id) const;
    bool remove(const std::string& id);
    std::size_t size() const;

private:
    struct Entry {
        std::mutex mutex;
        std::unique_ptr<Session> session;
    };
    std::shared_ptr<Entry> find(const std::string& id) const;

    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t next_id_ = 1;
};

}  // namespace gts
