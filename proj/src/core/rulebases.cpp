#include "fctx/rulebases.hpp"

namespace fctx {

namespace {

Rule rule(std::string id, std::vector<Antecedent> ifs, std::string vocabulary, std::string word) {
  return {std::move(id), std::move(ifs), {std::move(vocabulary), std::move(word)}};
}

}  // namespace

RuleBase member_ranking_rulebase() {
  RuleBase rb;
  rb.name = "member_ranking";
  rb.attributes = {{attr::kSpatialProximity, vocab::kSpatial},
                   {attr::kTemporalStatus, vocab::kTemporal},
                   {attr::kNeedStatus, vocab::kNeeds}};
  rb.output_variable = "rank";
  rb.output_vocabulary = vocab::kRanking;
  rb.rules = {
      rule("rank-1", {{attr::kSpatialProximity, "near"}, {attr::kNeedStatus, "Relationship_downward_fulfill"}},
           vocab::kRanking, "recommended"),
      rule("rank-2", {{attr::kTemporalStatus, "equals"}, {attr::kNeedStatus, "Relationship_downward_fulfill"}},
           vocab::kRanking, "recommended"),
      rule("rank-3", {{attr::kSpatialProximity, "close"}, {attr::kNeedStatus, "Relationship_upward_fulfill"}},
           vocab::kRanking, "highly recommended"),
  };
  return rb;
}

RuleBase event_rating_rulebase() {
  RuleBase rb;
  rb.name = "event_rating";
  rb.attributes = {{attr::kEventLocation, vocab::kSpatial}, {attr::kEventTime, vocab::kTemporal}};
  rb.output_variable = "importance";
  rb.output_vocabulary = vocab::kImportance;
  rb.rules = {
      rule("event-1", {{attr::kEventLocation, "close"}, {attr::kEventTime, "before"}}, vocab::kImportance,
           "important"),
      rule("event-2", {{attr::kEventLocation, "near"}, {attr::kEventTime, "overlaps"}}, vocab::kImportance,
           "more or less important"),
      rule("event-3", {{attr::kEventLocation, "far"}, {attr::kEventTime, "after"}}, vocab::kImportance,
           "unimportant"),
  };
  return rb;
}

RuleBase mobility_rulebase() {
  RuleBase rb;
  rb.name = "mobility";
  rb.attributes = {{attr::kMobilitySpeed, vocab::kMobility}};
  rb.output_variable = "vehicle_type";
  rb.output_vocabulary = vocab::kVehicle;
  rb.rules = {
      rule("mobility-1", {{attr::kMobilitySpeed, "slow"}}, vocab::kVehicle, "walk"),
      rule("mobility-2", {{attr::kMobilitySpeed, "medium"}}, vocab::kVehicle, "bicycle"),
      rule("mobility-3", {{attr::kMobilitySpeed, "fast"}}, vocab::kVehicle, "vehicle"),
  };
  return rb;
}

RuleBase proximity_rulebase(const Codebook& spatial) {
  RuleBase rb;
  rb.name = "proximity";
  rb.attributes = {{attr::kSpatialProximity, spatial.name}};
  rb.output_variable = "proximity";
  rb.output_vocabulary = spatial.name;
  for (std::size_t i = 0; i < spatial.entries.size(); ++i) {
    const auto& w = spatial.entries[i].word;
    rb.rules.push_back(rule("proximity-" + std::to_string(i + 1), {{attr::kSpatialProximity, w}}, spatial.name, w));
  }
  return rb;
}

}  // namespace fctx
