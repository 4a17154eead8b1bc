#pragma once

#include "hpasim/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hpasim {

struct ServiceSample {
    std::string name;
    Replicas current_replicas = 0;
    Replicas desired_replicas = 0;
    Percent utilization{0};
    Replicas effective_max = 0;
    Replicas slots = 0;
};

struct MetricSample {
    double t = 0.0;
    Millicpu supply_cpu;
    Percent overutilization_pct{0};   // percentage points, mean over services
    Percent overutilization_mcpu{0};  // exact mCPU
    Millicpu underprovision_mcpu;
    Millicpu overprovision_mcpu;
    std::vector<ServiceSample> per_service;
};

/// Σ current_replicas × res_req.
Millicpu supply_cpu(std::span<const ServiceState> states, std::span<const ServiceSpec> specs);

struct Overutilization {
    Percent pct_points{0};
    Percent mcpu{0};
};

/// Mean of max(0, RM − RMT) and Σ max(0, RM/100 × CR × req − RMT/100 × CR × req).
Overutilization cpu_overutilization(std::span<const ServiceState> states, std::span<const ServiceSpec> specs);

/// Σ max(0, DR − ceiling) × res_req.
Millicpu cpu_underprovision(std::span<const ScalingReport> reports, std::span<const Replicas> ceilings,
                            std::span<const ServiceSpec> specs);

/// Σ max(0, ceiling − DR) × res_req.
Millicpu cpu_overprovision(std::span<const ScalingReport> reports, std::span<const Replicas> ceilings,
                           std::span<const ServiceSpec> specs);

/// Slot deletions performed by one injection.
struct InjectionEvent {
    Percent target_wastage_percent{0};
    Millicpu actual_wastage;
    std::vector<std::pair<std::string, Replicas>> removed;  // services that lost slots
};

/// Time-means of every metric over the post-warmup window.
struct MetricMeans {
    double supply_cpu = 0.0;
    double overutil_pct = 0.0;
    double overutil_mcpu = 0.0;
    double underprov_mcpu = 0.0;
    double overprov_mcpu = 0.0;
};

inline constexpr double kWarmupSeconds = 60.0;

/// Means over samples with t ≥ kWarmupSeconds; nullopt when there are none.
std::optional<MetricMeans> time_means(std::span<const MetricSample> samples);

/// Writer for the time series and the three knowledge-base streams of one run.
/// Each file is created on open(); any write failure raises IoError naming it.
class MetricsSink {
public:
    explicit MetricsSink(std::filesystem::path dir);

    void emit(const MetricSample& sample);
    void record_reports(double t, std::span<const ScalingReport> reports);
    void record_assessment(double t, const DisruptionAssessment& assessment);
    void record_injection(double t, const InjectionEvent& event);
    void record_decisions(double t, std::span<const FinalDecision> decisions);

    /// Flushes and closes every stream.
    void close();

    const std::filesystem::path& dir() const { return dir_; }

private:
    struct Stream {
        std::filesystem::path path;
        std::ofstream out;
    };

    static void open(Stream& s, const std::filesystem::path& path);
    static void write(Stream& s, const std::string& text);

    std::filesystem::path dir_;
    Stream timeseries_;
    Stream microservice_;
    Stream capacity_;
    Stream resource_;
};

/// Writes `doc` pretty-printed with a trailing newline; IoError on failure.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

/// One decimal place, as used by every CSV column.
std::string format_decimal(double value);

}  // namespace hpasim
