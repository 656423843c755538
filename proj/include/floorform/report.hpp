#pragma once

#include <string>

#include <json.hpp>

#include "floorform/coset.hpp"
#include "floorform/form.hpp"
#include "floorform/padic.hpp"
#include "floorform/planner.hpp"
#include "floorform/theta.hpp"

namespace floorform::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Integers beyond 2^53 become decimal strings.
Json integer(Int v);

Json to_json(const FloorForm& form);
Json to_json(const Representation& r);
Json to_json(const ResidueTriple& r);
Json to_json(const CosetDescriptor& c);
Json to_json(const ScanReport& r);
Json to_json(const padic::LocalStatus& s);
Json to_json(const ResiduePlan& p);
Json to_json(const PlanVerification& v);
Json to_json(const ThetaSeries& t);
Json to_json(const ObstructionReport& r);

/// Inverse of to_json(ScanReport). Throws std::invalid_argument on malformed input.
ScanReport scan_report_from_json(const Json& j);

Json envelope(const std::string& command, Json parameters, Json result, Int elapsed_ms);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace floorform::report
