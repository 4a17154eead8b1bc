#include "hpasim/capacity_manager.hpp"

#include "hpasim/errors.hpp"

#include <cassert>

namespace hpasim {

Millicpu compute_initial_capacity(std::span<const ServiceSpec> specs) {
    Millicpu total;
    for (const auto& s : specs) {
        total += s.res_req * s.max_replicas;
    }
    return total;
}

Millicpu compute_current_capacity(std::span<const ServiceState> states, std::span<const ServiceSpec> specs) {
    assert(states.size() == specs.size());
    Millicpu total;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        total += specs[i].res_req * states[i].slots;
    }
    return total;
}

DisruptionAssessment assess(Millicpu irc, Millicpu crc) {
    if (crc > irc) {
        throw CapacityInversion("current capacity " + crc.to_string() + " exceeds initial capacity " +
                                irc.to_string());
    }
    DisruptionAssessment a;
    a.irc = irc;
    a.crc = crc;
    a.res_loss = irc - crc;
    a.status = a.res_loss > Millicpu{} ? DisruptionStatus::DisruptionIdentified : DisruptionStatus::NoDisruption;
    a.severity = irc > Millicpu{} ? Percent{100 * a.res_loss.tenths(), irc.tenths()} : Percent{0};
    return a;
}

CapacityUpdate update_capacities(std::span<const ServiceState> states, std::span<const ServiceSpec> specs) {
    assert(states.size() == specs.size());
    CapacityUpdate u;
    u.effective_max.reserve(specs.size());
    u.capacity_mcpu.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        u.effective_max.push_back(states[i].slots);
        u.capacity_mcpu.push_back(specs[i].res_req * states[i].slots);
    }
    return u;
}

}  // namespace hpasim
