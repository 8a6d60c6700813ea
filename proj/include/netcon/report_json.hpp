#ifndef NETCON_REPORT_JSON_HPP
#define NETCON_REPORT_JSON_HPP

#include <json.hpp>

#include "netcon/verifier.hpp"

namespace netcon {

/// Rounds to `digits` significant decimal digits so emitted JSON is stable
/// above solver tolerance.
double round_significant(double value, int digits = 12);

nlohmann::ordered_json to_json(const Violation& violation);
nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const SearchRecord& record);

}  // namespace netcon

#endif
