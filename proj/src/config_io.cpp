#include "hpasim/config_io.hpp"

#include "hpasim/errors.hpp"

#include <fmt/format.h>

#include <fstream>
#include <initializer_list>
#include <string_view>

namespace hpasim {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : obj.items()) {
        bool found = false;
        for (auto k : known) {
            found = found || k == key;
        }
        if (!found) {
            throw ConfigError(where.empty() ? key : fmt::format("{}.{}", where, key), "unknown field");
        }
    }
}

const json& require(const json& obj, const std::string& field, const std::string& path) {
    auto it = obj.find(field);
    if (it == obj.end()) {
        throw ConfigError(path, "missing required field");
    }
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        throw ConfigError(path, "must be a number");
    }
    return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        throw ConfigError(path, "must be an integer");
    }
    return v.get<std::int64_t>();
}

Millicpu millicpu(const json& v, const std::string& path) {
    auto m = exact_millicpu(number(v, path));
    if (!m) {
        throw ConfigError(path, "must be a multiple of 0.1 mCPU");
    }
    return *m;
}

Percent percent(const json& v, const std::string& path) {
    auto p = exact_percent(number(v, path));
    if (!p) {
        throw ConfigError(path, "must have at most four decimal places");
    }
    return *p;
}

ServiceSpec service_from_json(const json& v, std::size_t index) {
    const std::string where = fmt::format("services[{}]", index);
    if (!v.is_object()) {
        throw ConfigError(where, "must be an object");
    }
    reject_unknown(v, where,
                   {"name", "res_req", "res_limit", "min_replicas", "max_replicas", "threshold", "demand_weight"});
    auto path = [&](const char* f) { return where + "." + f; };

    ServiceSpec s;
    const auto& name = require(v, "name", path("name"));
    if (!name.is_string()) {
        throw ConfigError(path("name"), "must be a string");
    }
    s.name = name.get<std::string>();
    s.res_req = millicpu(require(v, "res_req", path("res_req")), path("res_req"));
    s.res_limit = millicpu(require(v, "res_limit", path("res_limit")), path("res_limit"));
    s.min_replicas = integer(require(v, "min_replicas", path("min_replicas")), path("min_replicas"));
    s.max_replicas = integer(require(v, "max_replicas", path("max_replicas")), path("max_replicas"));
    s.threshold = percent(require(v, "threshold", path("threshold")), path("threshold"));
    s.demand_weight = number(require(v, "demand_weight", path("demand_weight")), path("demand_weight"));
    return s;
}

json percent_to_json(const Percent& p) {
    if (p.denominator() == 1) {
        return p.numerator();
    }
    return to_double(p);
}

json millicpu_to_json(Millicpu m) {
    if (m.tenths() % 10 == 0) {
        return m.tenths() / 10;
    }
    return m.value();
}

}  // namespace

ScenarioConfig config_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("(root)", "scenario must be a JSON object");
    }
    reject_unknown(doc, "",
                   {"services", "tick_seconds", "duration_seconds", "ramp_seconds", "peak_users", "per_user_mcpu",
                    "disruption", "mode", "seed", "demand_noise_percent"});

    ScenarioConfig c;
    const auto& services = require(doc, "services", "services");
    if (!services.is_array()) {
        throw ConfigError("services", "must be an array");
    }
    for (std::size_t i = 0; i < services.size(); ++i) {
        c.services.push_back(service_from_json(services[i], i));
    }

    c.tick_seconds = number(require(doc, "tick_seconds", "tick_seconds"), "tick_seconds");
    c.duration_seconds = number(require(doc, "duration_seconds", "duration_seconds"), "duration_seconds");
    c.ramp_seconds = number(require(doc, "ramp_seconds", "ramp_seconds"), "ramp_seconds");
    c.peak_users = integer(require(doc, "peak_users", "peak_users"), "peak_users");
    c.per_user_mcpu = number(require(doc, "per_user_mcpu", "per_user_mcpu"), "per_user_mcpu");

    if (auto it = doc.find("disruption"); it != doc.end() && !it->is_null()) {
        if (!it->is_object()) {
            throw ConfigError("disruption", "must be an object or null");
        }
        reject_unknown(*it, "disruption", {"time_seconds", "target_wastage_percent"});
        DisruptionPlan d;
        d.time_seconds = number(require(*it, "time_seconds", "disruption.time_seconds"), "disruption.time_seconds");
        d.target_wastage_percent =
            percent(require(*it, "target_wastage_percent", "disruption.target_wastage_percent"),
                    "disruption.target_wastage_percent");
        c.disruption = d;
    }

    const auto& mode = require(doc, "mode", "mode");
    if (!mode.is_string()) {
        throw ConfigError("mode", "must be \"secure\" or \"baseline\"");
    }
    auto parsed = parse_mode(mode.get<std::string>());
    if (!parsed) {
        throw ConfigError("mode", "must be \"secure\" or \"baseline\"");
    }
    c.mode = *parsed;

    const auto& seed = require(doc, "seed", "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
        throw ConfigError("seed", "must be a non-negative integer");
    }
    c.seed = seed.get<std::uint64_t>();

    if (auto it = doc.find("demand_noise_percent"); it != doc.end()) {
        c.demand_noise_percent = number(*it, "demand_noise_percent");
    }

    return validate_config(std::move(c));
}

json config_to_json(const ScenarioConfig& c) {
    json services = json::array();
    for (const auto& s : c.services) {
        services.push_back({
            {"name", s.name},
            {"res_req", millicpu_to_json(s.res_req)},
            {"res_limit", millicpu_to_json(s.res_limit)},
            {"min_replicas", s.min_replicas},
            {"max_replicas", s.max_replicas},
            {"threshold", percent_to_json(s.threshold)},
            {"demand_weight", s.demand_weight},
        });
    }
    json doc = {
        {"services", std::move(services)},
        {"tick_seconds", c.tick_seconds},
        {"duration_seconds", c.duration_seconds},
        {"ramp_seconds", c.ramp_seconds},
        {"peak_users", c.peak_users},
        {"per_user_mcpu", c.per_user_mcpu},
        {"mode", std::string(to_string(c.mode))},
        {"seed", c.seed},
    };
    if (c.disruption) {
        doc["disruption"] = {
            {"time_seconds", c.disruption->time_seconds},
            {"target_wastage_percent", percent_to_json(c.disruption->target_wastage_percent)},
        };
    } else {
        doc["disruption"] = nullptr;
    }
    if (c.demand_noise_percent != 0.0) {
        doc["demand_noise_percent"] = c.demand_noise_percent;
    }
    return doc;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string(), "cannot open scenario file");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("(root)", fmt::format("{} is not valid JSON: {}", path.string(), e.what()));
    }
    return config_from_json(doc);
}

void save_config(const ScenarioConfig& config, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string(), "cannot open for writing");
    }
    out << config_to_json(config).dump(2) << '\n';
    if (!out.flush()) {
        throw IoError(path.string(), "write failed");
    }
}

}  // namespace hpasim
