#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "modalent/classification.hpp"
#include "modalent/general_max_ent.hpp"
#include "modalent/invariants.hpp"
#include "modalent/local_ops.hpp"
#include "modalent/slocc_mc.hpp"
#include "modalent/state.hpp"
#include "modalent/symmetry.hpp"

namespace modalent {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---- states and operators ------------------------------------------------

/// Malformed records raise parse_error naming the record index.
StateVector state_from_json(const nlohmann::json& j);
StateVector parse_state(std::string_view text);
/// Amplitudes in basis order. alias = true writes "ud0" style (p = 1 only).
Json state_to_json(const StateVector& state, bool alias = false);
std::string save_state(const StateVector& state, bool alias = false);

Json complex_to_json(Complex c);
Complex complex_from_json(const nlohmann::json& j);

Json operator_to_json(const LocalOperator& op);
LocalOperator operator_from_json(const nlohmann::json& j);
Json element_to_json(const GroupElement& g);
GroupElement element_from_json(const nlohmann::json& j);

// ---- reports -------------------------------------------------------------

Json to_json(const InvariantReport& r);
std::string invariant_csv_header();
std::string invariant_csv_row(const InvariantReport& r);

Json to_json(const BellProfile& p);
Json to_json(const CanonicalParams& c);
Json to_json(const StabilizerCheck& c);
Json to_json(const MonteCarloSummary& s);
Json to_json(const TrialRecord& r);

std::string trial_csv_header();
std::string trial_csv_row(const TrialRecord& r, std::size_t index);
std::string scan_csv_header();
std::string scan_csv_row(const ScanRow& r);

}  // namespace modalent
