#pragma once

#include "hpasim/units.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hpasim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// "none" → nullopt; "low"/"medium"/"high" → 25/50/75; otherwise a
/// percentage in [0, 100). Throws ConfigError("severity", ...) on bad input.
std::optional<Percent> parse_severity(std::string_view text);

/// Entry point behind the `hpasim` executable; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hpasim
