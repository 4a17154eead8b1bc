#include "hpasim/errors.hpp"
#include "hpasim/workload.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hpasim;

namespace {

ServiceSpec one(double weight = 1.0) {
    ServiceSpec s;
    s.name = "svc";
    s.res_req = Millicpu::from_whole(100);
    s.res_limit = Millicpu::from_whole(200);
    s.min_replicas = 1;
    s.max_replicas = 5;
    s.demand_weight = weight;
    return s;
}

ServiceState running(Replicas cr) {
    ServiceState st;
    st.current_replicas = cr;
    st.slots = 5;
    st.positions = 5;
    return st;
}

}  // namespace

TEST(UsersAt, RampEndpoints) {
    const auto c = benchmark_scenario();
    EXPECT_EQ(users_at(0.0, c), 0);
    EXPECT_EQ(users_at(300.0, c), 600);
    EXPECT_EQ(users_at(150.0, c), 300);
    EXPECT_EQ(users_at(899.0, c), 600);
}

TEST(UsersAt, MonotoneNonDecreasing) {
    const auto c = benchmark_scenario();
    std::int64_t prev = 0;
    for (double t = 0.0; t <= c.duration_seconds; t += 0.7) {
        const auto u = users_at(t, c);
        EXPECT_GE(u, prev);
        prev = u;
    }
}

TEST(ServiceDemand, Examples) {
    auto c = benchmark_scenario();
    EXPECT_EQ(service_demand(0, one(0.25), c), Millicpu{});
    c.per_user_mcpu = 8.3;
    EXPECT_EQ(service_demand(600, one(0.25), c), Millicpu::from_whole(1245));
    c.per_user_mcpu = 10.0;
    EXPECT_EQ(service_demand(100, one(1.0), c), Millicpu::from_whole(1000));
}

TEST(ServiceDemand, WeightsPartitionTotal) {
    const auto c = benchmark_scenario();
    for (std::int64_t users : {1, 37, 300, 600}) {
        Millicpu total;
        for (const auto& s : c.services) {
            total += service_demand(users, s, c);
        }
        const double expected = static_cast<double>(users) * c.per_user_mcpu;
        // Each of the 11 terms is rounded to the nearest tenth.
        EXPECT_NEAR(total.value(), expected, 11 * 0.05 + 1e-9);
    }
}

TEST(Utilization, Examples) {
    const auto s = one();
    EXPECT_EQ(utilization(Millicpu::from_whole(100), running(2), s), Percent{50});
    EXPECT_EQ(utilization(Millicpu::from_whole(1000), running(2), s), Percent{200});
    EXPECT_EQ(utilization(Millicpu{}, running(2), s), Percent{0});
}

TEST(Utilization, ZeroReplicasThrows) {
    EXPECT_THROW(utilization(Millicpu::from_whole(10), running(0), one()), ZeroReplicas);
}

TEST(Utilization, NeverExceedsCap) {
    const auto s = one();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> demand(0, 100000);
    std::uniform_int_distribution<Replicas> cr(1, 5);
    for (int i = 0; i < 10000; ++i) {
        EXPECT_LE(utilization(Millicpu::from_tenths(demand(rng)), running(cr(rng)), s), s.utilization_cap());
    }
}
