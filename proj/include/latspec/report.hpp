#pragma once

#include <string>

#include <json.hpp>

#include "latspec/classifier.hpp"
#include "latspec/lattice_oracle.hpp"
#include "latspec/torus_green.hpp"
#include "latspec/verify.hpp"

namespace latspec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json to_json(const GreenValues& g);
Json to_json(const EvenRegion& r);
Json to_json(const OddRegion& r);
Json to_json(const EigenvalueRecord& r);
Json to_json(const EigenState& s);
Json to_json(const ThresholdReport& r);
Json to_json(const SpectralSummary& s);
Json to_json(const OracleComparison& c);
Json to_json(const CheckResult& c);
Json to_json(const VerifyReport& r);

/// Shortest round-trip decimal for a double (CSV cells).
std::string format_double(double v);

}  // namespace latspec
