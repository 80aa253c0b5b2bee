#pragma once

#include <json.hpp>

#include "trycolor/engine.hpp"
#include "trycolor/oneround.hpp"
#include "trycolor/palette.hpp"
#include "trycolor/ruling.hpp"
#include "trycolor/verify.hpp"

namespace trycolor {

// Reports use ordered JSON so that identical runs serialize byte-identically.
using Json = nlohmann::ordered_json;

Json to_json(const RunTrace& trace, const MessageAudit& audit);
Json to_json(const ViolationReport& report);
Json to_json(const DerivedResult& result);
Json to_json(const RulingRun& run);
Json to_json(const TightnessReport& report);

}  // namespace trycolor
