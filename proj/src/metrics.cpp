#include "hpasim/metrics.hpp"

#include "hpasim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace hpasim {

Millicpu supply_cpu(std::span<const ServiceState> states, std::span<const ServiceSpec> specs) {
    assert(states.size() == specs.size());
    Millicpu total;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        total += specs[i].res_req * states[i].current_replicas;
    }
    return total;
}

Overutilization cpu_overutilization(std::span<const ServiceState> states, std::span<const ServiceSpec> specs) {
    assert(states.size() == specs.size());
    Overutilization out;
    if (specs.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const Percent excess = states[i].utilization - specs[i].threshold;
        if (excess <= 0) {
            continue;
        }
        out.pct_points += excess;
        out.mcpu += excess / 100 * states[i].current_replicas * specs[i].res_req.tenths() / 10;
    }
    out.pct_points /= static_cast<std::int64_t>(specs.size());
    return out;
}

Millicpu cpu_underprovision(std::span<const ScalingReport> reports, std::span<const Replicas> ceilings,
                            std::span<const ServiceSpec> specs) {
    Millicpu total;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        total += specs[i].res_req * std::max<Replicas>(0, reports[i].desired_replicas - ceilings[i]);
    }
    return total;
}

Millicpu cpu_overprovision(std::span<const ScalingReport> reports, std::span<const Replicas> ceilings,
                           std::span<const ServiceSpec> specs) {
    Millicpu total;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        total += specs[i].res_req * std::max<Replicas>(0, ceilings[i] - reports[i].desired_replicas);
    }
    return total;
}

std::optional<MetricMeans> time_means(std::span<const MetricSample> samples) {
    MetricMeans m;
    std::size_t n = 0;
    for (const auto& s : samples) {
        if (s.t < kWarmupSeconds) {
            continue;
        }
        m.supply_cpu += s.supply_cpu.value();
        m.overutil_pct += to_double(s.overutilization_pct);
        m.overutil_mcpu += to_double(s.overutilization_mcpu);
        m.underprov_mcpu += s.underprovision_mcpu.value();
        m.overprov_mcpu += s.overprovision_mcpu.value();
        ++n;
    }
    if (n == 0) {
        return std::nullopt;
    }
    const auto d = static_cast<double>(n);
    m.supply_cpu /= d;
    m.overutil_pct /= d;
    m.overutil_mcpu /= d;
    m.underprov_mcpu /= d;
    m.overprov_mcpu /= d;
    return m;
}

std::string format_decimal(double value) {
    // Avoid printing "-0.0" for tiny negative rounding residue.
    const double rounded = std::round(value * 10.0) / 10.0;
    return fmt::format("{:.1f}", rounded == 0.0 ? 0.0 : rounded);
}

MetricsSink::MetricsSink(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw IoError(dir_.string(), "cannot create output directory: " + ec.message());
    }
    open(timeseries_, dir_ / "timeseries.csv");
    open(microservice_, dir_ / "kb_microservice.jsonl");
    open(capacity_, dir_ / "kb_capacity.jsonl");
    open(resource_, dir_ / "kb_resource.jsonl");
    write(timeseries_, "t,supply_cpu,overutil_pct,overutil_mcpu,underprov_mcpu,overprov_mcpu\n");
}

void MetricsSink::open(Stream& s, const std::filesystem::path& path) {
    s.path = path;
    s.out.open(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!s.out) {
        throw IoError(path.string(), "cannot open for writing");
    }
}

void MetricsSink::write(Stream& s, const std::string& text) {
    s.out << text;
    if (!s.out) {
        throw IoError(s.path.string(), "write failed");
    }
}

void MetricsSink::emit(const MetricSample& sample) {
    write(timeseries_, fmt::format("{},{},{},{},{},{}\n", format_decimal(sample.t),
                                   format_decimal(sample.supply_cpu.value()),
                                   format_decimal(to_double(sample.overutilization_pct)),
                                   format_decimal(to_double(sample.overutilization_mcpu)),
                                   format_decimal(sample.underprovision_mcpu.value()),
                                   format_decimal(sample.overprovision_mcpu.value())));
}

void MetricsSink::record_reports(double t, std::span<const ScalingReport> reports) {
    for (const auto& r : reports) {
        const nlohmann::json line = {{"t", t},
                                     {"service", r.service},
                                     {"desired_replicas", r.desired_replicas},
                                     {"decision", to_string(r.decision)},
                                     {"escalate", r.escalate}};
        write(microservice_, line.dump() + "\n");
    }
}

void MetricsSink::record_assessment(double t, const DisruptionAssessment& a) {
    const nlohmann::json line = {{"t", t},
                                 {"event", "assessment"},
                                 {"irc", a.irc.value()},
                                 {"crc", a.crc.value()},
                                 {"res_loss", a.res_loss.value()},
                                 {"status", to_string(a.status)},
                                 {"severity", to_double(a.severity)}};
    write(capacity_, line.dump() + "\n");
}

void MetricsSink::record_injection(double t, const InjectionEvent& e) {
    nlohmann::json removed = nlohmann::json::object();
    for (const auto& [name, n] : e.removed) {
        removed[name] = n;
    }
    const nlohmann::json line = {{"t", t},
                                 {"event", "injection"},
                                 {"target_wastage_percent", to_double(e.target_wastage_percent)},
                                 {"actual_wastage", e.actual_wastage.value()},
                                 {"slots_removed", removed}};
    write(capacity_, line.dump() + "\n");
}

void MetricsSink::record_decisions(double t, std::span<const FinalDecision> decisions) {
    for (const auto& f : decisions) {
        const nlohmann::json line = {{"t", t},
                                     {"service", f.service},
                                     {"res_decision", to_string(f.res_decision)},
                                     {"res_desired", f.res_desired},
                                     {"res_max", f.res_max}};
        write(resource_, line.dump() + "\n");
    }
}

void MetricsSink::close() {
    for (Stream* s : {&timeseries_, &microservice_, &capacity_, &resource_}) {
        if (!s->out.is_open()) {
            continue;
        }
        s->out.flush();
        if (!s->out) {
            throw IoError(s->path.string(), "flush failed");
        }
        s->out.close();
    }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!out) {
        throw IoError(path.string(), "cannot open for writing");
    }
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

}  // namespace hpasim
