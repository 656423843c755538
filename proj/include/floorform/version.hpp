#pragma once

#include <string_view>

namespace floorform {

/// Recorded in scan reports; cached scans are reused only on an exact match.
inline constexpr std::string_view kToolVersion = "floorform 1.0.0";

}  // namespace floorform
