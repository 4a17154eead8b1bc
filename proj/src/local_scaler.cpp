#include "hpasim/local_scaler.hpp"

#include <algorithm>
#include <cassert>

namespace hpasim {

Replicas compute_desired_replicas(Replicas current, const Percent& utilization, const Percent& threshold) {
    assert(current >= 1 && threshold > 0 && utilization >= 0);
    const Percent ratio = utilization / threshold * current;
    const std::int64_t num = ratio.numerator();
    const std::int64_t den = ratio.denominator();
    return num / den + (num % den != 0 ? 1 : 0);
}

ScalingDecision decide_scaling(Replicas desired, Replicas current, Replicas min_replicas) {
    if (desired > current) {
        return ScalingDecision::ScaleUp;
    }
    if (desired < current && desired >= min_replicas) {
        return ScalingDecision::ScaleDown;
    }
    return ScalingDecision::NoScale;
}

bool check_feasibility(Replicas desired, Replicas effective_max) {
    return desired > effective_max;
}

ScalingReport analyze_service(const ServiceSpec& spec, const ServiceState& state, Replicas effective_max) {
    ScalingReport r;
    r.service = spec.name;
    r.desired_replicas = compute_desired_replicas(state.current_replicas, state.utilization, spec.threshold);
    r.decision = decide_scaling(r.desired_replicas, state.current_replicas, spec.min_replicas);
    r.escalate = check_feasibility(r.desired_replicas, effective_max);
    return r;
}

ServiceState execute_scale(ServiceState state, const FinalDecision& final, const ServiceSpec& spec) {
    state.current_replicas = std::clamp(final.res_desired, spec.min_replicas, std::max(spec.min_replicas, state.positions));
    return state;
}

}  // namespace hpasim
