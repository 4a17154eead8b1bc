#pragma once

#include "hpasim/units.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpasim {

using Replicas = std::int64_t;

/// Static per-service configuration.
struct ServiceSpec {
    std::string name;
    Millicpu res_req;       // per replica
    Millicpu res_limit;     // per replica throttling ceiling
    Replicas min_replicas = 1;
    Replicas max_replicas = 1;
    Percent threshold{50};  // utilization target
    double demand_weight = 0.0;

    /// Highest utilization a replica can report before throttling.
    Percent utilization_cap() const {
        return Percent{100 * res_limit.tenths(), res_req.tenths()};
    }
};

/// Dynamic per-service state.
///
/// `slots` counts the service's own surviving replica positions (destroyed only
/// by disruption). `positions` is what the service may actually run this tick:
/// its own slots plus any capacity borrowed through redistribution.
struct ServiceState {
    Replicas current_replicas = 0;
    Replicas slots = 0;
    Replicas positions = 0;
    Percent utilization{0};
    Millicpu capacity_mcpu;
};

enum class ScalingDecision { ScaleUp, ScaleDown, NoScale };

std::string_view to_string(ScalingDecision d);

struct ScalingReport {
    std::string service;
    Replicas desired_replicas = 0;
    ScalingDecision decision = ScalingDecision::NoScale;
    bool escalate = false;
};

enum class DisruptionStatus { NoDisruption, DisruptionIdentified };

std::string_view to_string(DisruptionStatus s);

struct DisruptionAssessment {
    Millicpu irc;
    Millicpu crc;
    Millicpu res_loss;
    DisruptionStatus status = DisruptionStatus::NoDisruption;
    Percent severity{0};
};

struct FinalDecision {
    std::string service;
    ScalingDecision res_decision = ScalingDecision::NoScale;
    Replicas res_desired = 0;
    Replicas res_max = 0;
};

enum class Mode { Secure, Baseline };

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view text);

struct DisruptionPlan {
    double time_seconds = 330.0;
    Percent target_wastage_percent{0};
};

struct ScenarioConfig {
    std::vector<ServiceSpec> services;
    double tick_seconds = 15.0;
    double duration_seconds = 900.0;
    double ramp_seconds = 300.0;
    std::int64_t peak_users = 600;
    double per_user_mcpu = 5.0 / 3.0;
    std::optional<DisruptionPlan> disruption;
    Mode mode = Mode::Secure;
    std::uint64_t seed = 42;
    /// Uniform multiplicative demand noise of ±p percent; 0 disables it.
    double demand_noise_percent = 0.0;
};

/// Checks every invariant of the configuration and its services. Demand
/// weights summing to within 1e-6 of one are renormalized to sum to one.
/// Throws ConfigError naming the first violated field.
ScenarioConfig validate_config(ScenarioConfig config);

/// The 11-service e-commerce benchmark at 5 replicas / 50% threshold.
std::vector<ServiceSpec> benchmark_cluster();

/// benchmark_cluster() in the default 15-minute ramp-and-sustain load test,
/// without a disruption block.
ScenarioConfig benchmark_scenario();

}  // namespace hpasim
