#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace hpasim {

/// CPU quantity in exact tenths of a milliCPU.
///
/// Quantities such as 4762.5 mCPU are representable exactly; all capacity
/// bookkeeping (transfers, conservation checks) stays in integer arithmetic.
class Millicpu {
public:
    constexpr Millicpu() = default;

    static constexpr Millicpu from_tenths(std::int64_t tenths) { return Millicpu{tenths}; }
    static constexpr Millicpu from_whole(std::int64_t mcpu) { return Millicpu{mcpu * 10}; }

    /// Rounds to the nearest tenth.
    static Millicpu from_double(double mcpu);

    constexpr std::int64_t tenths() const { return tenths_; }
    constexpr double value() const { return static_cast<double>(tenths_) / 10.0; }

    /// One decimal place, e.g. "4762.5".
    std::string to_string() const;

    constexpr Millicpu& operator+=(Millicpu o) { tenths_ += o.tenths_; return *this; }
    constexpr Millicpu& operator-=(Millicpu o) { tenths_ -= o.tenths_; return *this; }

    friend constexpr Millicpu operator+(Millicpu a, Millicpu b) { return Millicpu{a.tenths_ + b.tenths_}; }
    friend constexpr Millicpu operator-(Millicpu a, Millicpu b) { return Millicpu{a.tenths_ - b.tenths_}; }
    friend constexpr Millicpu operator*(Millicpu a, std::int64_t n) { return Millicpu{a.tenths_ * n}; }
    friend constexpr Millicpu operator*(std::int64_t n, Millicpu a) { return Millicpu{a.tenths_ * n}; }

    friend constexpr auto operator<=>(Millicpu, Millicpu) = default;

private:
    constexpr explicit Millicpu(std::int64_t tenths) : tenths_(tenths) {}

    std::int64_t tenths_ = 0;
};

constexpr Millicpu min(Millicpu a, Millicpu b) { return a < b ? a : b; }
constexpr Millicpu max(Millicpu a, Millicpu b) { return a < b ? b : a; }

/// floor(a / per_replica) for a ≥ 0, per_replica > 0.
constexpr std::int64_t whole_replicas(Millicpu a, Millicpu per_replica) {
    return a.tenths() / per_replica.tenths();
}

/// Exact percentage (utilization, thresholds, severity).
using Percent = boost::rational<std::int64_t>;

double to_double(const Percent& p);

/// Exact conversion for decimals with at most four fractional digits.
std::optional<Percent> exact_percent(double value);

/// Exact conversion for values that are a whole number of tenths of a milliCPU.
std::optional<Millicpu> exact_millicpu(double value);

}  // namespace hpasim
