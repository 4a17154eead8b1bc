#include "hpasim/workload.hpp"

#include "hpasim/errors.hpp"

#include <cmath>

namespace hpasim {

std::int64_t users_at(double t, const ScenarioConfig& config) {
    if (t >= config.ramp_seconds) {
        return config.peak_users;
    }
    const double users = std::floor(static_cast<double>(config.peak_users) * t / config.ramp_seconds);
    return static_cast<std::int64_t>(users);
}

Millicpu service_demand(std::int64_t users, const ServiceSpec& spec, const ScenarioConfig& config) {
    return Millicpu::from_double(static_cast<double>(users) * config.per_user_mcpu * spec.demand_weight);
}

Millicpu served_demand(Millicpu demand, Replicas current_replicas, const ServiceSpec& spec) {
    return min(demand, spec.res_limit * current_replicas);
}

Percent utilization(Millicpu demand, const ServiceState& state, const ServiceSpec& spec) {
    if (state.current_replicas <= 0) {
        throw ZeroReplicas("utilization of '" + spec.name + "' measured with zero replicas");
    }
    const Millicpu served = served_demand(demand, state.current_replicas, spec);
    return Percent{100 * served.tenths(), state.current_replicas * spec.res_req.tenths()};
}

}  // namespace hpasim
