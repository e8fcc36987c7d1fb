#pragma once

#include <stdexcept>
#include <string>

namespace als {

// Error taxonomy maps onto process exit codes:
//   usage_error -> 2, data_error -> 3, anything else -> 4.

// Bad flags, unknown options, inconsistent configuration.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or insufficient input data (CSV parse failures, label range
// violations, scenario quotas that cannot be met).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitRuntime = 4;

} // namespace als
