#pragma once

#include <string>

#include <json.hpp>

#include "riesz/arith.hpp"
#include "riesz/assembly.hpp"
#include "riesz/dft_minor.hpp"
#include "riesz/verify.hpp"

namespace riesz::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "riesz-spectra/1";

Json to_json(const Endpoint& e);
Endpoint endpoint_from_json(const Json& j, int precision_bits = working_precision_bits());

/// Rational values as "p/q" (or an integer), others as a round-trip decimal string.
/// Reading is the inverse: integers and "p/q" are exact, decimals are irrational.
std::string real_to_string(const Endpoint& e);
Endpoint real_from_string(const std::string& text, int precision_bits = working_precision_bits());

Json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const Json& j, int precision_bits = working_precision_bits());

Json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j, int precision_bits = working_precision_bits());

Json to_json(const FrequencyList& f);

Json to_json(const PrimeSearchResult& r);
PrimeSearchResult prime_search_from_json(const Json& j, int precision_bits = working_precision_bits());

Json to_json(const Theorem1Plan& plan);
Theorem1Plan plan_from_json(const Json& j, int precision_bits = working_precision_bits());

Json to_json(const SubsetPlan& plan);
Json to_json(const ComplementResult& r);
Json to_json(const MinorSpec& spec);
Json to_json(const ChebotarevReport& r);
Json to_json(const GramReport& r);
Json to_json(const DensityReport& r);
Json to_json(const FoldingReport& r);

/// Doubles are written as finite numbers or null.
Json number_or_null(double x);

/// Parses JSON text; malformed input raises InvalidInput naming line and column.
Json parse_text(const std::string& text, const std::string& origin);

}  // namespace riesz::io
