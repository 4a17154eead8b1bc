#include "hpasim/disruption.hpp"

#include "hpasim/capacity_manager.hpp"
#include "hpasim/errors.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

namespace hpasim {

Rng make_stream(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng{seq};
}

Replicas slot_floor(const ServiceSpec& spec) {
    return std::max<Replicas>(1, spec.min_replicas);
}

InjectionResult inject(std::vector<ServiceState> states, std::span<const ServiceSpec> specs,
                       const Percent& target_wastage_percent, Rng& rng) {
    assert(states.size() == specs.size());
    if (target_wastage_percent < 0 || target_wastage_percent >= 100) {
        throw ConfigError("target_wastage_percent", "must satisfy 0 <= target < 100");
    }

    // Everything below is kept in tenths of a milliCPU.
    const Percent target = target_wastage_percent * compute_initial_capacity(specs).tenths() / 100;

    std::int64_t destroyable = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        destroyable += std::max<Replicas>(0, states[i].slots - slot_floor(specs[i])) * specs[i].res_req.tenths();
    }
    if (target > destroyable) {
        throw TargetUnreachable("target wastage of " + std::to_string(to_double(target) / 10.0) +
                                " mCPU exceeds the " + Millicpu::from_tenths(destroyable).to_string() +
                                " mCPU that can be destroyed while keeping every service alive");
    }

    InjectionResult out;
    out.removed.assign(specs.size(), 0);
    std::int64_t wasted = 0;
    std::vector<std::int64_t> weight(specs.size());
    for (;;) {
        const Percent remaining = target - wasted;
        std::int64_t population = 0;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const bool fits = Percent{specs[i].res_req.tenths()} <= 2 * remaining;
            weight[i] = fits ? std::max<Replicas>(0, states[i].slots - slot_floor(specs[i])) : 0;
            population += weight[i];
        }
        if (population == 0) {
            break;
        }
        boost::random::uniform_int_distribution<std::int64_t> pick(0, population - 1);
        std::int64_t k = pick(rng);
        std::size_t chosen = 0;
        while (k >= weight[chosen]) {
            k -= weight[chosen];
            ++chosen;
        }
        states[chosen].slots -= 1;
        out.removed[chosen] += 1;
        wasted += specs[chosen].res_req.tenths();
    }
    out.actual_wastage = Millicpu::from_tenths(wasted);
    out.states = std::move(states);
    return out;
}

std::int64_t tick_count(const ScenarioConfig& config) {
    return static_cast<std::int64_t>(std::ceil(config.duration_seconds / config.tick_seconds));
}

std::optional<std::int64_t> schedule(const ScenarioConfig& config) {
    if (!config.disruption) {
        return std::nullopt;
    }
    auto k = static_cast<std::int64_t>(std::ceil(config.disruption->time_seconds / config.tick_seconds));
    // Guard against the division landing one ulp off an exact multiple.
    while (k > 0 && static_cast<double>(k - 1) * config.tick_seconds >= config.disruption->time_seconds) {
        --k;
    }
    while (static_cast<double>(k) * config.tick_seconds < config.disruption->time_seconds) {
        ++k;
    }
    if (k >= tick_count(config)) {
        return std::nullopt;
    }
    return k;
}

}  // namespace hpasim
