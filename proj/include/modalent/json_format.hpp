#pragma once

#include <string>

#include <json.hpp>

namespace modalent {

/// "%.17g"; non-finite values become "null".
std::string format_double(double x);

/// JSON text with every floating-point number printed by format_double.
/// indent < 0 gives a single line.
std::string dump_json(const nlohmann::json& j, int indent = 2);
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace modalent
