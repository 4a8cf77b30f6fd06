#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace fpure::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;
inline constexpr int exit_resource = 2;
inline constexpr int exit_invariant = 3;

inline constexpr int schema_version = 1;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Copy of a report with every "timing" member removed, for determinism
/// comparisons.
nlohmann::json without_timing(nlohmann::json report);

}  // namespace fpure::cli
