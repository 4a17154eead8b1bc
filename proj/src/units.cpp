#include "hpasim/units.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>

namespace hpasim {

namespace {

constexpr double kExactTolerance = 1e-6;

}  // namespace

Millicpu Millicpu::from_double(double mcpu) {
    return Millicpu{std::llround(mcpu * 10.0)};
}

std::string Millicpu::to_string() const {
    const std::int64_t whole = tenths_ / 10;
    const std::int64_t frac = std::llabs(tenths_ % 10);
    if (tenths_ < 0 && whole == 0) {
        return fmt::format("-0.{}", frac);
    }
    return fmt::format("{}.{}", whole, frac);
}

double to_double(const Percent& p) {
    return static_cast<double>(p.numerator()) / static_cast<double>(p.denominator());
}

std::optional<Percent> exact_percent(double value) {
    if (!std::isfinite(value)) {
        return std::nullopt;
    }
    const double scaled = value * 10000.0;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > kExactTolerance * std::max(1.0, std::abs(scaled))) {
        return std::nullopt;
    }
    return Percent{static_cast<std::int64_t>(rounded), 10000};
}

std::optional<Millicpu> exact_millicpu(double value) {
    if (!std::isfinite(value)) {
        return std::nullopt;
    }
    const double scaled = value * 10.0;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > kExactTolerance * std::max(1.0, std::abs(scaled))) {
        return std::nullopt;
    }
    return Millicpu::from_tenths(static_cast<std::int64_t>(rounded));
}

}  // namespace hpasim
