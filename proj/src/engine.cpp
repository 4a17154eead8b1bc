#include "hpasim/engine.hpp"

#include "hpasim/capacity_manager.hpp"
#include "hpasim/errors.hpp"
#include "hpasim/local_scaler.hpp"
#include "hpasim/workload.hpp"

#include <boost/random/uniform_int_distribution.hpp>
#include <fmt/format.h>

#include <algorithm>

namespace hpasim {

namespace {

constexpr std::int64_t kNoiseResolution = 1'000'000;

Millicpu noisy(Millicpu demand, double noise_percent, Rng& rng) {
    boost::random::uniform_int_distribution<std::int64_t> draw(-kNoiseResolution, kNoiseResolution);
    const double u = static_cast<double>(draw(rng)) / static_cast<double>(kNoiseResolution);
    return Millicpu::from_double(std::max(0.0, demand.value() * (1.0 + noise_percent / 100.0 * u)));
}

FinalDecision pass_through(const ScalingReport& r, Replicas ceiling, const ServiceState& s) {
    FinalDecision f;
    f.service = r.service;
    f.res_decision = r.decision;
    f.res_desired = r.decision == ScalingDecision::NoScale ? s.current_replicas : std::min(r.desired_replicas, ceiling);
    f.res_max = ceiling;
    return f;
}

void check_invariants(const EngineState& s, double t) {
    const auto& specs = s.config.services;
    Millicpu running;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& st = s.services[i];
        if (st.current_replicas < specs[i].min_replicas || st.current_replicas > st.positions) {
            throw InvariantViolation(fmt::format("t={}: {} runs {} replicas outside [{}, {}]", t, specs[i].name,
                                                 st.current_replicas, specs[i].min_replicas, st.positions));
        }
        if (st.slots < 1 || st.slots > specs[i].max_replicas) {
            throw InvariantViolation(fmt::format("t={}: {} has {} slots", t, specs[i].name, st.slots));
        }
        running += specs[i].res_req * st.current_replicas;
    }
    const Millicpu crc = compute_current_capacity(s.services, specs);
    if (running > crc) {
        throw InvariantViolation(fmt::format("t={}: running replicas hold {} mCPU of {} surviving", t,
                                             running.to_string(), crc.to_string()));
    }
}

}  // namespace

EngineState initial_state(const ScenarioConfig& config) {
    EngineState s;
    s.config = config;
    std::sort(s.config.services.begin(), s.config.services.end(),
              [](const ServiceSpec& a, const ServiceSpec& b) { return a.name < b.name; });
    for (const auto& spec : s.config.services) {
        ServiceState st;
        st.current_replicas = spec.min_replicas;
        st.slots = spec.max_replicas;
        st.positions = spec.max_replicas;
        st.capacity_mcpu = spec.res_req * spec.max_replicas;
        s.services.push_back(st);
        s.effective_max.push_back(spec.max_replicas);
    }
    s.irc = compute_initial_capacity(s.config.services);
    s.disruption_rng = make_stream(config.seed, Stream::Disruption);
    s.noise_rng = make_stream(config.seed, Stream::DemandNoise);
    return s;
}

StepResult step(const EngineState& in, double t) {
    StepResult out{in, {}};
    EngineState& s = out.state;
    TickRecord& rec = out.record;
    rec.t = t;
    const auto& cfg = s.config;
    const auto& specs = cfg.services;
    const std::size_t n = specs.size();

    if (cfg.disruption && !s.disruption_fired && t >= cfg.disruption->time_seconds) {
        auto result = inject(s.services, specs, cfg.disruption->target_wastage_percent, s.disruption_rng);
        s.services = std::move(result.states);
        InjectionEvent event;
        event.target_wastage_percent = cfg.disruption->target_wastage_percent;
        event.actual_wastage = result.actual_wastage;
        for (std::size_t i = 0; i < n; ++i) {
            // Pods on destroyed slots are gone, borrowed ones included.
            s.services[i].current_replicas = std::min(s.services[i].current_replicas, s.services[i].slots);
            s.services[i].positions = s.services[i].slots;
            if (result.removed[i] > 0) {
                event.removed.emplace_back(specs[i].name, result.removed[i]);
            }
        }
        s.disruption_fired = true;
        s.injection = event;
        rec.injection = std::move(event);
    }

    // Monitor.
    const std::int64_t users = users_at(t, cfg);
    for (std::size_t i = 0; i < n; ++i) {
        Millicpu demand = service_demand(users, specs[i], cfg);
        if (cfg.demand_noise_percent > 0.0) {
            demand = noisy(demand, cfg.demand_noise_percent, s.noise_rng);
        }
        s.services[i].utilization = utilization(demand, s.services[i], specs[i]);
    }

    // Analyze and plan per service.
    rec.reports.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        rec.reports.push_back(analyze_service(specs[i], s.services[i], s.effective_max[i]));
    }

    if (cfg.mode == Mode::Secure) {
        const DisruptionAssessment a = assess(s.irc, compute_current_capacity(s.services, specs));
        if (a.status == DisruptionStatus::DisruptionIdentified) {
            s.effective_max = update_capacities(s.services, specs).effective_max;
            for (std::size_t i = 0; i < n; ++i) {
                rec.reports[i].escalate = check_feasibility(rec.reports[i].desired_replicas, s.effective_max[i]);
            }
        }
        rec.assessment = a;
    }

    // Believed capacity follows the controller's ceilings; physical capacity
    // is what the surviving slots actually provide.
    std::vector<Millicpu> belief(n);
    std::vector<Millicpu> physical(n);
    for (std::size_t i = 0; i < n; ++i) {
        belief[i] = specs[i].res_req * s.effective_max[i];
        physical[i] = specs[i].res_req * s.services[i].slots;
    }

    std::vector<Replicas> ceilings(s.effective_max);
    rec.escalated = std::any_of(rec.reports.begin(), rec.reports.end(), [](const auto& r) { return r.escalate; });
    rec.decisions.reserve(n);
    if (rec.escalated) {
        const Classification lists = classify(rec.reports, s.effective_max, specs);
        Redistribution red = redistribute(lists, belief, rec.reports, specs);
        for (const auto& tr : red.transfers) {
            const auto& donor = specs[tr.from];
            const Replicas keep = std::max(rec.reports[tr.from].desired_replicas, donor.min_replicas);
            const Millicpu spare = max(Millicpu{}, physical[tr.from] - donor.res_req * keep);
            const Millicpu honored = min(tr.amount, spare);
            physical[tr.from] -= honored;
            physical[tr.to] += honored;
        }
        rec.transfers = std::move(red.transfers);
        for (std::size_t i = 0; i < n; ++i) {
            s.services[i].capacity_mcpu = red.capacity[i];
            if (rec.reports[i].escalate) {
                rec.decisions.push_back(
                    finalize(rec.reports[i], s.effective_max[i], red.capacity[i], s.services[i], specs[i]));
                ceilings[i] = rec.decisions.back().res_max;
            } else {
                ceilings[i] = whole_replicas(red.capacity[i], specs[i].res_req);
                rec.decisions.push_back(pass_through(rec.reports[i], ceilings[i], s.services[i]));
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            s.services[i].capacity_mcpu = belief[i];
            rec.decisions.push_back(pass_through(rec.reports[i], ceilings[i], s.services[i]));
        }
    }

    // Metrics reflect the replicas that were measured this tick.
    MetricSample& m = rec.sample;
    m.t = t;
    m.supply_cpu = supply_cpu(s.services, specs);
    const Overutilization ou = cpu_overutilization(s.services, specs);
    m.overutilization_pct = ou.pct_points;
    m.overutilization_mcpu = ou.mcpu;
    m.underprovision_mcpu = cpu_underprovision(rec.reports, ceilings, specs);
    m.overprovision_mcpu = cpu_overprovision(rec.reports, ceilings, specs);
    m.per_service.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.per_service.push_back({specs[i].name, s.services[i].current_replicas, rec.reports[i].desired_replicas,
                                 s.services[i].utilization, s.effective_max[i], s.services[i].slots});
    }

    // Execute.
    for (std::size_t i = 0; i < n; ++i) {
        s.services[i].positions = whole_replicas(physical[i], specs[i].res_req);
        s.services[i] = execute_scale(s.services[i], rec.decisions[i], specs[i]);
    }
    check_invariants(s, t);
    return out;
}

nlohmann::json summary_to_json(const RunSummary& r) {
    nlohmann::json doc;
    doc["mode"] = std::string(to_string(r.mode));
    doc["seed"] = r.seed;
    doc["severity"] = r.target_wastage_percent ? nlohmann::json(to_double(*r.target_wastage_percent)) : nlohmann::json();
    doc["actual_wastage_mcpu"] = r.actual_wastage.value();
    doc["measured_severity"] = to_double(r.measured_severity);
    doc["ticks"] = r.ticks;
    doc["warmup_seconds"] = kWarmupSeconds;
    nlohmann::json means = nlohmann::json::object();
    if (r.means) {
        means["supply_cpu"] = r.means->supply_cpu;
        means["overutil_pct"] = r.means->overutil_pct;
        means["overutil_mcpu"] = r.means->overutil_mcpu;
        means["underprov_mcpu"] = r.means->underprov_mcpu;
        means["overprov_mcpu"] = r.means->overprov_mcpu;
    }
    doc["means"] = means;
    return doc;
}

RunResult run(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir) {
    EngineState state = initial_state(validate_config(config));
    const std::int64_t ticks = tick_count(state.config);

    std::optional<MetricsSink> sink;
    if (out_dir) {
        sink.emplace(*out_dir);
    }

    RunResult result;
    result.out_dir = out_dir;
    result.samples.reserve(static_cast<std::size_t>(std::max<std::int64_t>(ticks, 0)));
    for (std::int64_t k = 0; k < ticks; ++k) {
        const double t = static_cast<double>(k) * state.config.tick_seconds;
        StepResult next = step(state, t);
        state = std::move(next.state);
        const TickRecord& rec = next.record;
        if (sink) {
            if (rec.injection) {
                sink->record_injection(t, *rec.injection);
            }
            sink->record_reports(t, rec.reports);
            if (rec.assessment) {
                sink->record_assessment(t, *rec.assessment);
            }
            sink->record_decisions(t, rec.decisions);
            sink->emit(rec.sample);
        }
        result.samples.push_back(rec.sample);
    }

    RunSummary& sum = result.summary;
    sum.mode = state.config.mode;
    sum.seed = state.config.seed;
    if (state.config.disruption) {
        sum.target_wastage_percent = state.config.disruption->target_wastage_percent;
    }
    if (state.injection) {
        sum.actual_wastage = state.injection->actual_wastage;
        sum.measured_severity = Percent{100 * sum.actual_wastage.tenths(), state.irc.tenths()};
    }
    sum.ticks = ticks;
    sum.means = time_means(result.samples);

    if (sink) {
        sink->close();
        write_json_file(*out_dir / "summary.json", summary_to_json(sum));
    }
    return result;
}

}  // namespace hpasim
