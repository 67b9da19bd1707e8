#pragma once

// Builtin rulebases for the sample group services, plus identity rules used
// to decode a distance.

#include "fctx/codebook.hpp"
#include "fctx/reasoner.hpp"

namespace fctx {

namespace attr {
inline constexpr const char* kSpatialProximity = "spatialProximity";
inline constexpr const char* kTemporalStatus = "temporalStatus";
inline constexpr const char* kNeedStatus = "needStatus";
inline constexpr const char* kEventLocation = "eventLocation";
inline constexpr const char* kEventTime = "eventTime";
inline constexpr const char* kMobilitySpeed = "mobility_speed";
}  // namespace attr

RuleBase member_ranking_rulebase();
RuleBase event_rating_rulebase();
RuleBase mobility_rulebase();

/// One rule per spatial word: IF spatialProximity is W THEN proximity is W.
RuleBase proximity_rulebase(const Codebook& spatial);

}  // namespace fctx
