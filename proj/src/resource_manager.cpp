#include "hpasim/resource_manager.hpp"

#include <algorithm>
#include <cassert>

namespace hpasim {

namespace {

void sort_descending(std::vector<ProvisionEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const ProvisionEntry& a, const ProvisionEntry& b) {
        if (a.amount != b.amount) {
            return a.amount > b.amount;
        }
        return a.service < b.service;
    });
}

}  // namespace

Classification classify(std::span<const ScalingReport> reports, std::span<const Replicas> ceilings,
                        std::span<const ServiceSpec> specs) {
    assert(reports.size() == specs.size() && ceilings.size() == specs.size());
    Classification out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const Replicas desired = reports[i].desired_replicas;
        if (desired > ceilings[i]) {
            out.underprov.push_back({i, specs[i].name, specs[i].res_req * (desired - ceilings[i])});
        } else {
            out.overprov.push_back({i, specs[i].name, specs[i].res_req * (ceilings[i] - desired)});
        }
    }
    sort_descending(out.underprov);
    sort_descending(out.overprov);
    return out;
}

Redistribution redistribute(const Classification& lists, std::vector<Millicpu> capacity,
                            std::span<const ScalingReport> reports, std::span<const ServiceSpec> specs) {
    assert(capacity.size() == specs.size() && reports.size() == specs.size());

    std::vector<Millicpu> remaining;
    remaining.reserve(lists.overprov.size());
    for (const auto& donor : lists.overprov) {
        remaining.push_back(donor.amount);
    }

    Redistribution out;
    for (const auto& receiver : lists.underprov) {
        Millicpu need = receiver.amount;
        for (std::size_t k = 0; k < lists.overprov.size() && need > Millicpu{}; ++k) {
            const std::size_t d = lists.overprov[k].index;
            const Millicpu floor = specs[d].res_req * reports[d].desired_replicas;
            const Millicpu spare = max(Millicpu{}, capacity[d] - floor);
            const Millicpu m = min(need, min(remaining[k], spare));
            if (m <= Millicpu{}) {
                continue;
            }
            remaining[k] -= m;
            capacity[d] -= m;
            capacity[receiver.index] += m;
            need -= m;
            out.transfers.push_back({d, receiver.index, m});
        }
        out.unmet += need;
    }
    out.capacity = std::move(capacity);
    return out;
}

FinalDecision finalize(const ScalingReport& report, Replicas old_max, Millicpu new_capacity,
                       const ServiceState& state, const ServiceSpec& spec) {
    FinalDecision f;
    f.service = report.service;
    f.res_max = whole_replicas(new_capacity, spec.res_req);
    if (f.res_max >= report.desired_replicas) {
        f.res_decision = report.decision;
        f.res_desired = report.desired_replicas;
    } else if (f.res_max >= old_max && f.res_max != state.current_replicas) {
        f.res_decision = ScalingDecision::ScaleUp;
        f.res_desired = f.res_max;
    } else {
        f.res_decision = ScalingDecision::NoScale;
        f.res_desired = state.current_replicas;
    }
    return f;
}

}  // namespace hpasim
