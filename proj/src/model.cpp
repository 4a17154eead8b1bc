#include "hpasim/model.hpp"

#include "hpasim/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

namespace hpasim {

std::string_view to_string(ScalingDecision d) {
    switch (d) {
    case ScalingDecision::ScaleUp:
        return "ScaleUp";
    case ScalingDecision::ScaleDown:
        return "ScaleDown";
    case ScalingDecision::NoScale:
        return "NoScale";
    }
    return "NoScale";
}

std::string_view to_string(DisruptionStatus s) {
    return s == DisruptionStatus::DisruptionIdentified ? "DisruptionIdentified" : "NoDisruption";
}

std::string_view to_string(Mode m) {
    return m == Mode::Secure ? "secure" : "baseline";
}

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "secure") {
        return Mode::Secure;
    }
    if (text == "baseline") {
        return Mode::Baseline;
    }
    return std::nullopt;
}

namespace {

void check_service(const ServiceSpec& s, std::size_t index) {
    auto field = [&](std::string_view name) { return fmt::format("services[{}].{}", index, name); };

    if (s.name.empty()) {
        throw ConfigError(field("name"), "must be a non-empty identifier");
    }
    if (s.res_req <= Millicpu{}) {
        throw ConfigError(field("res_req"), "must be > 0");
    }
    if (s.res_limit < s.res_req) {
        throw ConfigError(field("res_limit"), "must be >= res_req");
    }
    if (s.min_replicas < 1) {
        throw ConfigError(field("min_replicas"), "must be >= 1");
    }
    if (s.max_replicas < s.min_replicas) {
        throw ConfigError(field("max_replicas"), "must be >= min_replicas");
    }
    if (s.threshold <= 0 || s.threshold > 100) {
        throw ConfigError(field("threshold"), "must satisfy 0 < threshold <= 100");
    }
    if (!std::isfinite(s.demand_weight) || s.demand_weight < 0.0) {
        throw ConfigError(field("demand_weight"), "must be >= 0");
    }
}

}  // namespace

ScenarioConfig validate_config(ScenarioConfig config) {
    if (config.services.empty()) {
        throw ConfigError("services", "at least one service is required");
    }

    std::map<std::string, double> weights;
    for (std::size_t i = 0; i < config.services.size(); ++i) {
        const auto& s = config.services[i];
        check_service(s, i);
        if (!weights.emplace(s.name, s.demand_weight).second) {
            throw ConfigError(fmt::format("services[{}].name", i), "duplicate service name '" + s.name + "'");
        }
    }
    // Summed in name order so permuting the service list changes nothing.
    double weight_sum = 0.0;
    for (const auto& [name, w] : weights) {
        weight_sum += w;
    }

    if (std::abs(weight_sum - 1.0) > 1e-6) {
        throw ConfigError("demand_weight", fmt::format("weights must sum to 1, got {}", weight_sum));
    }
    if (weight_sum != 1.0) {
        for (auto& s : config.services) {
            s.demand_weight /= weight_sum;
        }
    }

    if (!(config.tick_seconds > 0.0) || !std::isfinite(config.tick_seconds)) {
        throw ConfigError("tick_seconds", "must be > 0");
    }
    if (!(config.duration_seconds >= 0.0) || !std::isfinite(config.duration_seconds)) {
        throw ConfigError("duration_seconds", "must be >= 0");
    }
    if (!(config.ramp_seconds >= 0.0) || config.ramp_seconds > config.duration_seconds) {
        throw ConfigError("ramp_seconds", "must satisfy 0 <= ramp_seconds <= duration_seconds");
    }
    if (config.peak_users < 0) {
        throw ConfigError("peak_users", "must be >= 0");
    }
    if (!(config.per_user_mcpu >= 0.0) || !std::isfinite(config.per_user_mcpu)) {
        throw ConfigError("per_user_mcpu", "must be >= 0");
    }
    if (!(config.demand_noise_percent >= 0.0) || config.demand_noise_percent >= 100.0) {
        throw ConfigError("demand_noise_percent", "must satisfy 0 <= demand_noise_percent < 100");
    }
    if (config.disruption) {
        const auto& d = *config.disruption;
        if (d.target_wastage_percent < 0 || d.target_wastage_percent >= 100) {
            throw ConfigError("disruption.target_wastage_percent", "must satisfy 0 <= target < 100");
        }
        if (!(d.time_seconds >= 0.0) || d.time_seconds >= config.duration_seconds) {
            throw ConfigError("disruption.time_seconds", "must satisfy 0 <= time_seconds < duration_seconds");
        }
    }
    return config;
}

std::vector<ServiceSpec> benchmark_cluster() {
    struct Row {
        const char* name;
        std::int64_t req;
        std::int64_t limit;
        double weight;
    };
    // Frontend-heavy split of per-user demand; the six leaf services share 0.35.
    constexpr double leaf = 0.35 / 6.0;
    const Row rows[] = {
        {"adservice", 200, 300, leaf},
        {"cartservice", 200, 300, 0.10},
        {"checkoutservice", 100, 200, 0.10},
        {"currencyservice", 100, 200, leaf},
        {"emailservice", 100, 200, leaf},
        {"frontend", 100, 200, 0.25},
        {"paymentservice", 100, 200, leaf},
        {"productcatalogservice", 100, 200, 0.10},
        {"recommendationservice", 100, 200, 0.10},
        {"redis", 70, 125, leaf},
        {"shippingservice", 100, 200, leaf},
    };

    std::vector<ServiceSpec> out;
    out.reserve(std::size(rows));
    for (const auto& r : rows) {
        ServiceSpec s;
        s.name = r.name;
        s.res_req = Millicpu::from_whole(r.req);
        s.res_limit = Millicpu::from_whole(r.limit);
        s.min_replicas = 1;
        s.max_replicas = 5;
        s.threshold = Percent{50};
        s.demand_weight = r.weight;
        out.push_back(std::move(s));
    }
    return out;
}

ScenarioConfig benchmark_scenario() {
    ScenarioConfig c;
    c.services = benchmark_cluster();
    return validate_config(std::move(c));
}

}  // namespace hpasim
