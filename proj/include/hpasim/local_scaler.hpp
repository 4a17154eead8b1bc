#pragma once

#include "hpasim/model.hpp"

namespace hpasim {

// Per-service manager: the decentralized threshold autoscaler. Every function
// here is pure and touches one service only.

/// ceil(current × utilization / threshold), computed exactly.
Replicas compute_desired_replicas(Replicas current, const Percent& utilization, const Percent& threshold);

ScalingDecision decide_scaling(Replicas desired, Replicas current, Replicas min_replicas);

/// True when the desired count does not fit under the effective ceiling and
/// the centralized managers must be consulted.
bool check_feasibility(Replicas desired, Replicas effective_max);

/// Analysis and planning for one service in one tick.
ScalingReport analyze_service(const ServiceSpec& spec, const ServiceState& state, Replicas effective_max);

/// Applies a final decision: current_replicas becomes res_desired clamped to
/// [min_replicas, state.positions]. Other fields are untouched.
ServiceState execute_scale(ServiceState state, const FinalDecision& final, const ServiceSpec& spec);

}  // namespace hpasim
