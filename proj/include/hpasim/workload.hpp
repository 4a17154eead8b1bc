#pragma once

#include "hpasim/model.hpp"

#include <cstdint>

namespace hpasim {

/// Linear ramp from zero to peak_users over ramp_seconds, then sustained.
std::int64_t users_at(double t, const ScenarioConfig& config);

/// users × per_user_mcpu × demand_weight, rounded to the nearest tenth mCPU.
Millicpu service_demand(std::int64_t users, const ServiceSpec& spec, const ScenarioConfig& config);

/// Demand actually served by the running replicas; the excess above
/// current_replicas × res_limit is throttled away.
Millicpu served_demand(Millicpu demand, Replicas current_replicas, const ServiceSpec& spec);

/// Utilization in percent of the allocated request, capped at
/// 100 × res_limit / res_req. Throws ZeroReplicas when no replica runs.
Percent utilization(Millicpu demand, const ServiceState& state, const ServiceSpec& spec);

}  // namespace hpasim
