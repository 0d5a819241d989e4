#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "entropy_banach/ellone.hpp"
#include "entropy_banach/entropy.hpp"
#include "entropy_banach/entropy_dial.hpp"
#include "entropy_banach/plmap.hpp"
#include "entropy_banach/spaces.hpp"
#include "entropy_banach/universal.hpp"

namespace eb {

using Json = nlohmann::json;

// Rationals are written as "p/q" strings. Readers also accept JSON integers
// and floats (the latter converted exactly).
Json to_json(const Q& x);
Q q_from_json(const Json& j);

Json to_json(const IntervalQ& j);
IntervalQ interval_from_json(const Json& j);

Json to_json(const PLMap& f);
PLMap plmap_from_json(const Json& j);

Json to_json(const HorseshoeCertificate& c);
HorseshoeCertificate certificate_from_json(const Json& j);

/// An infinite upper bound is written as null.
Json to_json(const EntropyBounds& b);
EntropyBounds bounds_from_json(const Json& j);

Json to_json(const FunctionFamily& fs);
FunctionFamily family_from_json(const Json& j);

Json to_json(const ScaleSchedule& s);
Json to_json(const GammaSchedule& s);

Json to_json(const WitnessReport& r);
WitnessReport witness_from_json(const Json& j);

Json to_json(const DialConfig& c);

/// Throws ParseError naming line and column.
Json parse_json_text(std::string_view text);
/// Throws IoError when the file cannot be read, ParseError on bad JSON.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// "# label" header, then one "x,y" line per breakpoint.
std::string polyline_csv(const PLMap& f, const std::string& label);

}  // namespace eb
