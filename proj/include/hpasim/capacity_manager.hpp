#pragma once

#include "hpasim/model.hpp"

#include <span>
#include <vector>

namespace hpasim {

// Application capacity manager: detects capacity loss, quantifies its
// severity and rewrites per-service ceilings to the surviving slot counts.

/// Σ res_req × max_replicas.
Millicpu compute_initial_capacity(std::span<const ServiceSpec> specs);

/// Σ res_req × slots; states and specs are index-aligned.
Millicpu compute_current_capacity(std::span<const ServiceState> states, std::span<const ServiceSpec> specs);

/// Throws CapacityInversion if crc > irc.
DisruptionAssessment assess(Millicpu irc, Millicpu crc);

struct CapacityUpdate {
    std::vector<Replicas> effective_max;
    std::vector<Millicpu> capacity_mcpu;
};

/// effective_max_i := slots_i and capacity_i := slots_i × res_req_i.
CapacityUpdate update_capacities(std::span<const ServiceState> states, std::span<const ServiceSpec> specs);

}  // namespace hpasim
