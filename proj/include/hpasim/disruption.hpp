#pragma once

#include "hpasim/model.hpp"

#include <boost/random/mersenne_twister.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hpasim {

using Rng = boost::random::mt19937_64;

/// Independent random streams derived from one scenario seed, so enabling
/// one concern never shifts the draws of another.
enum class Stream : std::uint32_t { Disruption = 1, DemandNoise = 2 };

Rng make_stream(std::uint64_t seed, Stream stream);

/// Lowest slot count a disruption may leave a service with.
Replicas slot_floor(const ServiceSpec& spec);

struct InjectionResult {
    std::vector<ServiceState> states;
    Millicpu actual_wastage;
    std::vector<Replicas> removed;  // per service, index-aligned with specs
};

/// Deletes random slots, one at a time and uniformly over the eligible slot
/// population, until no further deletion lands within half a replica of
/// target × IRC / 100. Throws TargetUnreachable when the target exceeds what
/// can be destroyed without dropping a service below its floor.
InjectionResult inject(std::vector<ServiceState> states, std::span<const ServiceSpec> specs,
                       const Percent& target_wastage_percent, Rng& rng);

/// Tick index at which the configured disruption fires, if any: the first
/// tick whose start time is at or after disruption.time_seconds.
std::optional<std::int64_t> schedule(const ScenarioConfig& config);

/// ceil(duration / tick).
std::int64_t tick_count(const ScenarioConfig& config);

}  // namespace hpasim
