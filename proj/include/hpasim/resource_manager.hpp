#pragma once

#include "hpasim/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace hpasim {

// Application resource manager: greedy redistribution of mCPU from
// overprovisioned to underprovisioned services, then resource-wise decisions.

struct ProvisionEntry {
    std::size_t index = 0;  // position in the service list
    std::string service;
    Millicpu amount;  // need for receivers, surplus for donors
};

struct Classification {
    std::vector<ProvisionEntry> underprov;  // descending amount, then name
    std::vector<ProvisionEntry> overprov;   // descending amount, then name
};

/// A service with desired > ceiling needs (desired − ceiling) × res_req; every
/// other service offers (ceiling − desired) × res_req, possibly zero.
/// reports, ceilings and specs are index-aligned.
Classification classify(std::span<const ScalingReport> reports, std::span<const Replicas> ceilings,
                        std::span<const ServiceSpec> specs);

struct Transfer {
    std::size_t from = 0;
    std::size_t to = 0;
    Millicpu amount;
};

struct Redistribution {
    std::vector<Millicpu> capacity;  // per service, after all transfers
    std::vector<Transfer> transfers; // in execution order
    Millicpu unmet;                  // Σ need left unsatisfied
};

/// Greedy pass: receivers in descending need draw from donors in descending
/// surplus. A donor never falls below desired × res_req. Total capacity is
/// conserved exactly.
Redistribution redistribute(const Classification& lists, std::vector<Millicpu> capacity,
                            std::span<const ScalingReport> reports, std::span<const ServiceSpec> specs);

/// Resource-wise decision for a receiver after redistribution. old_max is the
/// ceiling the service was classified against. A partial grant that leaves
/// the ceiling equal to the running count is reported as NoScale.
FinalDecision finalize(const ScalingReport& report, Replicas old_max, Millicpu new_capacity,
                       const ServiceState& state, const ServiceSpec& spec);

}  // namespace hpasim
