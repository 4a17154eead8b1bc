#include "hpasim/errors.hpp"
#include "hpasim/metrics.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hpasim;
namespace fs = std::filesystem;

namespace {

ServiceSpec spec(std::int64_t req = 100) {
    ServiceSpec s;
    s.name = "svc";
    s.res_req = Millicpu::from_whole(req);
    s.res_limit = Millicpu::from_whole(req * 2);
    s.max_replicas = 5;
    s.threshold = Percent{50};
    return s;
}

ServiceState state(Replicas cr, Percent rm = Percent{0}) {
    ServiceState st;
    st.current_replicas = cr;
    st.slots = 5;
    st.positions = 5;
    st.utilization = rm;
    return st;
}

ScalingReport dr(Replicas d) {
    return {"svc", d, ScalingDecision::NoScale, false};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(SupplyCpu, Examples) {
    const auto bench = benchmark_cluster();
    std::vector<ServiceState> at5(bench.size(), state(5));
    std::vector<ServiceState> at1(bench.size(), state(1));
    EXPECT_EQ(supply_cpu(at5, bench), Millicpu::from_whole(6350));
    EXPECT_EQ(supply_cpu(at1, bench), Millicpu::from_whole(1270));
    const std::vector<ServiceSpec> single{spec()};
    const std::vector<ServiceState> three{state(3)};
    EXPECT_EQ(supply_cpu(three, single), Millicpu::from_whole(300));
}

TEST(Overutilization, Examples) {
    const std::vector<ServiceSpec> single{spec()};
    const std::vector<ServiceState> at_threshold{state(2, Percent{50})};
    const auto zero = cpu_overutilization(at_threshold, single);
    EXPECT_EQ(zero.pct_points, Percent{0});
    EXPECT_EQ(zero.mcpu, Percent{0});

    const std::vector<ServiceSpec> pair{spec(), spec()};
    const std::vector<ServiceState> one_hot{state(2, Percent{75}), state(1, Percent{20})};
    const auto o = cpu_overutilization(one_hot, pair);
    EXPECT_EQ(o.pct_points, Percent(25, 2));  // 25 points over M = 2
    EXPECT_EQ(o.mcpu, Percent{50});

    const std::vector<ServiceState> cool{state(3, Percent{10}), state(3, Percent{49})};
    const auto none = cpu_overutilization(cool, pair);
    EXPECT_EQ(none.pct_points, Percent{0});
    EXPECT_EQ(none.mcpu, Percent{0});
}

TEST(Provisioning, Examples) {
    const std::vector<ServiceSpec> single{spec()};
    const std::vector<ServiceSpec> mixed{spec(100), spec(70)};
    const std::vector<Replicas> five{5};
    const std::vector<Replicas> seven{7};

    EXPECT_EQ(cpu_underprovision(std::vector{dr(4)}, five, single), Millicpu{});
    EXPECT_EQ(cpu_underprovision(std::vector{dr(8)}, seven, single), Millicpu::from_whole(100));
    EXPECT_EQ(cpu_underprovision(std::vector{dr(6), dr(4)}, std::vector<Replicas>{5, 3}, mixed),
              Millicpu::from_whole(170));

    EXPECT_EQ(cpu_overprovision(std::vector{dr(5)}, five, single), Millicpu{});
    EXPECT_EQ(cpu_overprovision(std::vector{dr(2)}, five, single), Millicpu::from_whole(300));
    EXPECT_EQ(cpu_overprovision(std::vector{dr(6), dr(1)}, std::vector<Replicas>{5, 3}, mixed),
              Millicpu::from_whole(140));
}

TEST(TimeMeans, WarmupWindowAndEmpty) {
    EXPECT_FALSE(time_means({}).has_value());
    std::vector<MetricSample> samples(3);
    samples[0].t = 30.0;
    samples[0].supply_cpu = Millicpu::from_whole(9999);
    samples[1].t = 60.0;
    samples[1].supply_cpu = Millicpu::from_whole(100);
    samples[2].t = 75.0;
    samples[2].supply_cpu = Millicpu::from_whole(300);
    const auto m = time_means(samples);
    ASSERT_TRUE(m.has_value());
    EXPECT_DOUBLE_EQ(m->supply_cpu, 200.0);
    EXPECT_FALSE(time_means(std::vector<MetricSample>(samples.begin(), samples.begin() + 1)).has_value());
}

TEST(FormatDecimal, OneDecimalNoNegativeZero) {
    EXPECT_EQ(format_decimal(4762.5), "4762.5");
    EXPECT_EQ(format_decimal(2.25), "2.3");
    EXPECT_EQ(format_decimal(-0.01), "0.0");
    EXPECT_EQ(format_decimal(15.0), "15.0");
}

TEST(MetricsSink, WritesHeaderRowsAndStreams) {
    const fs::path dir = fs::temp_directory_path() / "hpasim-sink-test";
    fs::remove_all(dir);
    {
        MetricsSink sink(dir);
        MetricSample s;
        s.t = 15.0;
        s.supply_cpu = Millicpu::from_tenths(12705);
        s.overutilization_mcpu = Percent(1, 3);
        sink.emit(s);
        sink.record_reports(15.0, std::vector{dr(2)});
        DisruptionAssessment a;
        a.status = DisruptionStatus::DisruptionIdentified;
        sink.record_assessment(15.0, a);
        sink.record_decisions(15.0, std::vector{FinalDecision{"svc", ScalingDecision::NoScale, 1, 5}});
        sink.close();
    }
    EXPECT_EQ(slurp(dir / "timeseries.csv"),
              "t,supply_cpu,overutil_pct,overutil_mcpu,underprov_mcpu,overprov_mcpu\n"
              "15.0,1270.5,0.0,0.3,0.0,0.0\n");
    const auto kb = nlohmann::json::parse(slurp(dir / "kb_capacity.jsonl"));
    EXPECT_EQ(kb["status"], "DisruptionIdentified");
    EXPECT_EQ(kb["t"], 15.0);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "kb_microservice.jsonl"))["desired_replicas"], 2);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "kb_resource.jsonl"))["res_max"], 5);
    fs::remove_all(dir);
}

TEST(MetricsSink, UnwritableDirectoryIsIoError) {
    const fs::path blocker = fs::temp_directory_path() / "hpasim-sink-blocker";
    fs::remove_all(blocker);
    std::ofstream(blocker) << "file, not a directory";
    EXPECT_THROW(MetricsSink(blocker / "sub"), IoError);
    fs::remove(blocker);
}
