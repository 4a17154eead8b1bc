#include "oracles.hpp"

#include "hpasim/capacity_manager.hpp"
#include "hpasim/local_scaler.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>

namespace oracle {

using namespace hpasim;

Replicas exact_ceil_desired(Replicas cr, std::int64_t rm_num, std::int64_t rm_den, std::int64_t rmt_num,
                            std::int64_t rmt_den) {
    // cr × (rm_num / rm_den) / (rmt_num / rmt_den) = cr × rm_num × rmt_den / (rm_den × rmt_num)
    const __int128 num = static_cast<__int128>(cr) * rm_num * rmt_den;
    const __int128 den = static_cast<__int128>(rm_den) * rmt_num;
    return static_cast<Replicas>((num + den - 1) / den);
}

Instance random_instance(std::mt19937_64& rng, bool loose_capacity) {
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_int_distribution<int> req_kind(0, 4);
    std::uniform_int_distribution<std::int64_t> req_tenths(100, 3000);
    std::uniform_int_distribution<Replicas> max_r(1, 6);
    std::uniform_int_distribution<Replicas> over(-6, 6);
    std::uniform_int_distribution<std::int64_t> extra(0, 5000);

    Instance inst;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        ServiceSpec s;
        s.name = fmt::format("svc{}", i);
        switch (req_kind(rng)) {
        case 0: s.res_req = Millicpu::from_whole(70); break;
        case 1: s.res_req = Millicpu::from_whole(100); break;
        case 2: s.res_req = Millicpu::from_whole(200); break;
        default: s.res_req = Millicpu::from_tenths(req_tenths(rng)); break;
        }
        s.res_limit = s.res_req * 2;
        s.min_replicas = 1;
        s.max_replicas = max_r(rng);
        std::uniform_int_distribution<Replicas> ceil_r(1, s.max_replicas);
        const Replicas ceiling = ceil_r(rng);
        const Replicas desired = std::max<Replicas>(0, ceiling + over(rng));

        ScalingReport r;
        r.service = s.name;
        r.desired_replicas = desired;
        r.decision = ScalingDecision::NoScale;
        r.escalate = desired > ceiling;

        inst.capacity.push_back(s.res_req * ceiling +
                                (loose_capacity ? Millicpu::from_tenths(extra(rng)) : Millicpu{}));
        inst.ceilings.push_back(ceiling);
        inst.reports.push_back(r);
        inst.specs.push_back(s);
    }
    return inst;
}

Millicpu transferable(const Instance& inst, std::size_t donor, Millicpu listed) {
    const Millicpu floor = inst.specs[donor].res_req * inst.reports[donor].desired_replicas;
    return min(listed, max(Millicpu{}, inst.capacity[donor] - floor));
}

Millicpu exhaustive_min_unmet(const Instance& inst) {
    Millicpu supply;
    std::vector<std::size_t> receivers;
    for (std::size_t i = 0; i < inst.specs.size(); ++i) {
        const Replicas d = inst.reports[i].desired_replicas;
        if (d > inst.ceilings[i]) {
            receivers.push_back(i);
        } else {
            supply += transferable(inst, i, inst.specs[i].res_req * (inst.ceilings[i] - d));
        }
    }

    Millicpu total_need;
    for (auto r : receivers) {
        total_need += inst.specs[r].res_req * (inst.reports[r].desired_replicas - inst.ceilings[r]);
    }

    Millicpu best_granted;
    std::vector<Replicas> k(receivers.size(), 0);
    std::function<void(std::size_t, Millicpu)> search = [&](std::size_t idx, Millicpu granted) {
        if (idx == receivers.size()) {
            best_granted = max(best_granted, granted);
            return;
        }
        const std::size_t r = receivers[idx];
        const Replicas need_replicas = inst.reports[r].desired_replicas - inst.ceilings[r];
        for (Replicas q = 0; q <= need_replicas; ++q) {
            const Millicpu g = granted + inst.specs[r].res_req * q;
            if (g > supply) {
                break;
            }
            search(idx + 1, g);
        }
    };
    search(0, Millicpu{});
    return total_need - best_granted;
}

std::string check_redistribution(const Instance& inst) {
    const Classification lists = classify(inst.reports, inst.ceilings, inst.specs);
    const Redistribution red = redistribute(lists, inst.capacity, inst.reports, inst.specs);

    Millicpu before;
    Millicpu after;
    for (std::size_t i = 0; i < inst.specs.size(); ++i) {
        before += inst.capacity[i];
        after += red.capacity[i];
    }
    if (before != after) {
        return fmt::format("capacity not conserved: {} -> {}", before.to_string(), after.to_string());
    }

    for (const auto& d : lists.overprov) {
        const Millicpu floor = inst.specs[d.index].res_req * inst.reports[d.index].desired_replicas;
        const Millicpu had = inst.capacity[d.index];
        if (red.capacity[d.index] < had && red.capacity[d.index] < floor) {
            return fmt::format("donor {} fell below its own demand", d.service);
        }
    }

    // Pareto: no receiver short by a whole replica while a donor can still give one.
    std::vector<Millicpu> given(inst.specs.size());
    for (const auto& t : red.transfers) {
        given[t.from] += t.amount;
    }
    for (const auto& r : lists.underprov) {
        const Millicpu unmet = r.amount - (red.capacity[r.index] - inst.capacity[r.index]);
        if (unmet < inst.specs[r.index].res_req) {
            continue;
        }
        for (const auto& d : lists.overprov) {
            const Millicpu left = transferable(inst, d.index, d.amount) - given[d.index];
            if (left >= inst.specs[r.index].res_req) {
                return fmt::format("{} starves while {} still holds {}", r.service, d.service, left.to_string());
            }
        }
    }

    Millicpu slack;
    for (const auto& r : lists.underprov) {
        slack = max(slack, inst.specs[r.index].res_req);
    }
    const Millicpu optimum = exhaustive_min_unmet(inst);
    if (red.unmet > optimum + slack) {
        return fmt::format("greedy leaves {} unmet, optimum {}", red.unmet.to_string(), optimum.to_string());
    }
    return {};
}

namespace {

ServiceSpec spec(const std::string& name, std::int64_t req, Replicas max_r) {
    ServiceSpec s;
    s.name = name;
    s.res_req = Millicpu::from_whole(req);
    s.res_limit = Millicpu::from_whole(req * 2);
    s.min_replicas = 1;
    s.max_replicas = max_r;
    s.threshold = Percent{50};
    s.demand_weight = 0.0;
    return s;
}

ScalingReport report(const std::string& name, Replicas desired, Replicas ceiling,
                     ScalingDecision d = ScalingDecision::ScaleUp) {
    return {name, desired, d, desired > ceiling};
}

}  // namespace

std::vector<std::string> check_derived_examples() {
    std::vector<std::string> fails;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            fails.push_back(what);
        }
    };

    // Per-service scaler.
    expect(compute_desired_replicas(2, Percent{75}, Percent{50}) == 3, "desired(2, 75, 50) = 3");
    expect(compute_desired_replicas(4, Percent{10}, Percent{50}) == 1, "desired(4, 10, 50) = 1");
    {
        ServiceSpec s = spec("a", 100, 5);
        ServiceState st;
        st.current_replicas = 2;
        st.slots = 2;
        st.positions = 2;
        FinalDecision f{"a", ScalingDecision::ScaleUp, 4, 4};
        expect(execute_scale(st, f, s).current_replicas == 2, "execute_scale(slots 2, desired 4) = 2");
    }

    // Capacity manager.
    {
        const std::vector<ServiceSpec> specs{spec("a", 100, 5), spec("b", 70, 5)};
        expect(compute_initial_capacity(specs) == Millicpu::from_whole(850), "IRC(100x5, 70x5) = 850");
    }
    {
        const std::vector<ServiceSpec> specs{spec("a", 100, 5)};
        std::vector<ServiceState> states(1);
        states[0].slots = 3;
        const auto u = update_capacities(states, specs);
        expect(u.effective_max[0] == 3 && u.capacity_mcpu[0] == Millicpu::from_whole(300),
               "update_capacities(max 5, slots 3) = (3, 300)");
    }

    // Resource manager: classification.
    {
        const std::vector<ServiceSpec> specs{spec("a", 100, 5)};
        const std::vector<ScalingReport> reps{report("a", 6, 4)};
        const std::vector<Replicas> ceil{4};
        const auto c = classify(reps, ceil, specs);
        expect(c.underprov.size() == 1 && c.overprov.empty() && c.underprov[0].amount == Millicpu::from_whole(200),
               "classify(DR 6, max 4, req 100) = underprov 200");
    }
    {
        const std::vector<ServiceSpec> specs{spec("b", 100, 5)};
        const std::vector<ScalingReport> reps{report("b", 2, 5, ScalingDecision::ScaleDown)};
        const std::vector<Replicas> ceil{5};
        const auto c = classify(reps, ceil, specs);
        expect(c.overprov.size() == 1 && c.underprov.empty() && c.overprov[0].amount == Millicpu::from_whole(300),
               "classify(DR 2, max 5, req 100) = overprov 300");
    }

    // Resource manager: redistribution.
    {
        const std::vector<ServiceSpec> specs{spec("a", 100, 5), spec("b", 100, 5)};
        const std::vector<ScalingReport> reps{report("a", 6, 4), report("b", 2, 5, ScalingDecision::ScaleDown)};
        const std::vector<Replicas> ceil{4, 5};
        const std::vector<Millicpu> cap{Millicpu::from_whole(400), Millicpu::from_whole(500)};
        const auto red = redistribute(classify(reps, ceil, specs), cap, reps, specs);
        expect(red.capacity[0] == Millicpu::from_whole(600) && red.capacity[1] == Millicpu::from_whole(300),
               "redistribute(A needs 200, B surplus 300) = A +200, B -200");
    }
    {
        const std::vector<ServiceSpec> specs{spec("a", 100, 5), spec("b", 100, 5), spec("c", 100, 5)};
        const std::vector<ScalingReport> reps{report("a", 8, 4), report("b", 2, 5, ScalingDecision::ScaleDown),
                                              report("c", 3, 3, ScalingDecision::NoScale)};
        const std::vector<Replicas> ceil{4, 5, 3};
        const std::vector<Millicpu> cap{Millicpu::from_whole(400), Millicpu::from_whole(500),
                                        Millicpu::from_whole(300)};
        const auto red = redistribute(classify(reps, ceil, specs), cap, reps, specs);
        expect(red.capacity[0] == Millicpu::from_whole(700) && red.capacity[1] == Millicpu::from_whole(200) &&
                   red.capacity[2] == Millicpu::from_whole(300),
               "redistribute(A needs 400, B surplus 300, C surplus 0) = A +300, B -300");
    }

    // Resource manager: finalization.
    {
        const ServiceSpec s = spec("a", 100, 5);
        ServiceState st;
        st.current_replicas = 4;
        const auto f1 = finalize(report("a", 6, 4), 4, Millicpu::from_whole(600), st, s);
        expect(f1.res_decision == ScalingDecision::ScaleUp && f1.res_desired == 6, "finalize(DR 6, RmaxR 6) = (ScaleUp, 6)");
        const auto f2 = finalize(report("a", 8, 4), 4, Millicpu::from_whole(700), st, s);
        expect(f2.res_decision == ScalingDecision::ScaleUp && f2.res_desired == 7,
               "finalize(DR 8, old 4, RmaxR 7) = (ScaleUp, 7)");
        const auto f3 = finalize(report("a", 6, 4), 4, Millicpu::from_whole(400), st, s);
        expect(f3.res_decision == ScalingDecision::NoScale && f3.res_desired == 4,
               "finalize(DR 6, old 4, RmaxR 4, CR 4) = (NoScale, 4)");
    }
    return fails;
}

}  // namespace oracle
