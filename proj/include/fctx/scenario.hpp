#pragma once

// Tourist-group day plan replayed as a five-step report: travel mode, lunch
// prediction, proximity norm elicitation, restaurant search and the
// post-lunch needs recommendation.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fctx/codebook.hpp"
#include "fctx/context.hpp"
#include "fctx/reasoner.hpp"

namespace fctx {

struct Poi {
  std::string name;
  GeoPoint location;
  std::vector<std::string> restaurants;
};

struct PoiDistance {
  std::string from;
  std::string to;
  double meters = 0.0;
};

struct ScenarioConfig {
  std::string name;
  std::vector<Poi> pois;
  std::vector<PoiDistance> distances;
  int visit_duration_minutes = 120;
  std::string preferred_travel;
  int start_time_minutes = 600;
  std::string visit_poi;
  std::string neighbour_poi;
  double max_distance_m = 1000.0;

  double speed_kmh = 4.0;
  double e_at_start = 0.8;
  double e_decay_per_hour = 0.15;
  double end_time_spread_minutes = 15.0;
  NeedState needs;  // state after lunch, before E is marked fulfilled

  Codebook spatial;
  Codebook needs_codebook;
  Codebook mobility;
  Codebook vehicle;

  const Poi& poi(std::string_view name) const;
  /// Table lookup in either direction, else planar distance of the POIs.
  double distance_between(std::string_view a, std::string_view b) const;
};

/// "HH:MM" to minutes after midnight and back.
int parse_clock(std::string_view text);
std::string format_clock(int minutes);

/// Relative survey and codebook paths resolve against base_dir.
ScenarioConfig scenario_from_json(std::string_view text, std::string_view source, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Words accepted as "close enough" for merging restaurant lists.
const std::vector<std::string>& union_proximity_words();

/// Decodes a distance through the spatial codebook's identity rules.
ReasoningTrace decode_proximity(double distance_m, double max_distance_m, const Codebook& spatial);

struct ScenarioStep {
  int number = 0;
  std::string title;
  std::vector<std::pair<std::string, std::string>> fields;
};

struct ScenarioReport {
  std::vector<ScenarioStep> steps;
  double lunch_minutes = 0.0;  // centre of the fuzzified visit end, whole minutes
  bool lunch_flagged = false;
  std::string proximity_word;
  bool union_list = false;
  std::vector<std::string> restaurants;
  std::string dominant_need;

  std::string to_text() const;
  std::string to_json() const;
};

ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace fctx
