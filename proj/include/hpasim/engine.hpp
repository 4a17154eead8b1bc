#pragma once

#include "hpasim/disruption.hpp"
#include "hpasim/metrics.hpp"
#include "hpasim/model.hpp"
#include "hpasim/resource_manager.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <vector>

namespace hpasim {

/// Everything that evolves across ticks. Copyable, including the random
/// streams, so a step can be replayed from any snapshot.
struct EngineState {
    ScenarioConfig config;  // services sorted by name
    std::vector<ServiceState> services;
    std::vector<Replicas> effective_max;
    Millicpu irc;
    bool disruption_fired = false;
    std::optional<InjectionEvent> injection;
    Rng disruption_rng;
    Rng noise_rng;
};

/// Initial state: every service at min_replicas with all of its slots.
EngineState initial_state(const ScenarioConfig& config);

/// Everything observed and decided during one tick.
struct TickRecord {
    double t = 0.0;
    std::optional<InjectionEvent> injection;
    std::vector<ScalingReport> reports;
    std::optional<DisruptionAssessment> assessment;
    bool escalated = false;
    std::vector<Transfer> transfers;
    std::vector<FinalDecision> decisions;
    MetricSample sample;
};

struct StepResult {
    EngineState state;
    TickRecord record;
};

/// One control cycle at simulated time t: fire a due disruption, measure,
/// plan locally, assess capacity (secure mode), redistribute on escalation,
/// record metrics and execute. Throws InvariantViolation if replica bounds or
/// capacity accounting break.
StepResult step(const EngineState& state, double t);

struct RunSummary {
    Mode mode = Mode::Secure;
    std::uint64_t seed = 0;
    std::optional<Percent> target_wastage_percent;
    Millicpu actual_wastage;
    Percent measured_severity{0};
    std::int64_t ticks = 0;
    std::optional<MetricMeans> means;
};

nlohmann::json summary_to_json(const RunSummary& summary);

struct RunResult {
    RunSummary summary;
    std::vector<MetricSample> samples;
    std::optional<std::filesystem::path> out_dir;
};

/// Runs a whole scenario. With out_dir set, writes timeseries.csv,
/// summary.json and the three kb_*.jsonl streams there.
RunResult run(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir = std::nullopt);

}  // namespace hpasim
