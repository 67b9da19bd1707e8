#include "fctx/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fctx/encoding.hpp"
#include "fctx/error.hpp"
#include "fctx/json_io.hpp"
#include "fctx/rulebases.hpp"
#include "fctx/store.hpp"

namespace fctx {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

}  // namespace

const Poi& ScenarioConfig::poi(std::string_view name) const {
  for (const auto& p : pois) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::Validation, "unknown POI '" + std::string(name) + "'");
}

double ScenarioConfig::distance_between(std::string_view a, std::string_view b) const {
  for (const auto& d : distances) {
    if ((d.from == a && d.to == b) || (d.from == b && d.to == a)) return d.meters;
  }
  return distance(poi(a).location, poi(b).location);
}

int parse_clock(std::string_view text) {
  int h = 0;
  int m = 0;
  char tail = 0;
  const std::string s(text);
  if (std::sscanf(s.c_str(), "%d:%d%c", &h, &m, &tail) != 2 || h < 0 || h > 23 || m < 0 || m > 59)
    throw Error(ErrorCode::Format, "expected HH:MM, got '" + s + "'");
  return h * 60 + m;
}

std::string format_clock(int minutes) {
  const int day = 24 * 60;
  minutes = ((minutes % day) + day) % day;
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

namespace {

using json_io::json;
using json_io::Reader;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

Codebook builtin(const char* name) { return placeholder_codebook(*find_vocabulary(name)); }

Codebook codebook_source(const json& j, const Reader& r, const std::string& key, const char* vocabulary,
                         const std::filesystem::path& base) {
  if (const json* v = r.optional_field(j, key + "_codebook", "$")) return load_codebook(resolve(base, r.text(*v, "$." + key + "_codebook")));
  if (const json* v = r.optional_field(j, key + "_survey", "$")) {
    const SurveySet s = load_surveys(resolve(base, r.text(*v, "$." + key + "_survey")));
    const VocabularyDef* def = find_vocabulary(vocabulary);
    // Keep the builtin declaration order and kind when the survey covers it.
    std::vector<VocabularyWord> words = def ? def->words : std::vector<VocabularyWord>{};
    Codebook cb = words.empty() ? encode_codebook(s).codebook : encode_codebook(s, words).codebook;
    if (def) cb.kind = def->kind;
    return cb;
  }
  return builtin(vocabulary);
}

}  // namespace

ScenarioConfig scenario_from_json(std::string_view text, std::string_view source, const std::filesystem::path& base_dir) {
  const Reader r(source);
  const json j = json_io::parse(text, source);
  ScenarioConfig c;
  c.name = r.text(r.field(j, "name", "$"), "$.name");

  const json& pois = r.array(r.field(j, "pois", "$"), "$.pois");
  for (std::size_t i = 0; i < pois.size(); ++i) {
    const std::string p = "$.pois[" + std::to_string(i) + "]";
    Poi poi;
    poi.name = r.text(r.field(pois[i], "name", p), p + ".name");
    poi.location = r.point(r.field(pois[i], "location", p), p + ".location");
    if (const json* list = r.optional_field(pois[i], "restaurants", p)) {
      r.array(*list, p + ".restaurants");
      for (std::size_t k = 0; k < list->size(); ++k)
        poi.restaurants.push_back(r.text((*list)[k], p + ".restaurants[" + std::to_string(k) + "]"));
    }
    for (const auto& other : c.pois) {
      if (other.name == poi.name) r.fail(p + ".name", "duplicate POI '" + poi.name + "'");
    }
    c.pois.push_back(std::move(poi));
  }
  auto known = [&](const std::string& name, const std::string& path) {
    if (std::none_of(c.pois.begin(), c.pois.end(), [&](const Poi& p) { return p.name == name; }))
      r.fail(path, "unknown POI '" + name + "'");
  };

  if (const json* list = r.optional_field(j, "distances", "$")) {
    r.array(*list, "$.distances");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string p = "$.distances[" + std::to_string(i) + "]";
      PoiDistance d{r.text(r.field((*list)[i], "from", p), p + ".from"), r.text(r.field((*list)[i], "to", p), p + ".to"),
                    r.number(r.field((*list)[i], "meters", p), p + ".meters")};
      known(d.from, p + ".from");
      known(d.to, p + ".to");
      if (!(d.meters >= 0.0)) r.fail(p + ".meters", "must be non-negative");
      for (const auto& e : c.distances) {
        const bool same = (e.from == d.from && e.to == d.to) || (e.from == d.to && e.to == d.from);
        if (same && e.meters != d.meters) r.fail(p, "distance table is not symmetric for " + d.from + "/" + d.to);
      }
      c.distances.push_back(std::move(d));
    }
  }

  if (const json* n = r.optional_field(j, "norms", "$")) {
    if (const json* v = r.optional_field(*n, "visit_duration_minutes", "$.norms"))
      c.visit_duration_minutes = static_cast<int>(r.integer(*v, "$.norms.visit_duration_minutes"));
    if (const json* v = r.optional_field(*n, "preferred_travel", "$.norms"))
      c.preferred_travel = r.text(*v, "$.norms.preferred_travel");
  }
  if (const json* v = r.optional_field(j, "start_time", "$")) {
    try {
      c.start_time_minutes = parse_clock(r.text(*v, "$.start_time"));
    } catch (const Error& e) {
      r.fail("$.start_time", e.what());
    }
  }
  const json& visit = r.object(r.field(j, "visit", "$"), "$.visit");
  c.visit_poi = r.text(r.field(visit, "poi", "$.visit"), "$.visit.poi");
  c.neighbour_poi = r.text(r.field(visit, "neighbour", "$.visit"), "$.visit.neighbour");
  known(c.visit_poi, "$.visit.poi");
  known(c.neighbour_poi, "$.visit.neighbour");
  if (const json* v = r.optional_field(j, "max_distance_m", "$")) c.max_distance_m = r.number(*v, "$.max_distance_m");
  if (!(c.max_distance_m > 0.0)) r.fail("$.max_distance_m", "must be positive");

  if (const json* g = r.optional_field(j, "group", "$")) {
    auto opt = [&](const char* key, double& out) {
      if (const json* v = r.optional_field(*g, key, "$.group")) out = r.number(*v, std::string("$.group.") + key);
    };
    opt("speed_kmh", c.speed_kmh);
    opt("e_at_start", c.e_at_start);
    opt("e_decay_per_hour", c.e_decay_per_hour);
    opt("end_time_spread_minutes", c.end_time_spread_minutes);
    if (const json* v = r.optional_field(*g, "needs", "$.group")) c.needs = r.need_state(*v, "$.group.needs");
    if (!(c.e_decay_per_hour > 0.0)) r.fail("$.group.e_decay_per_hour", "must be positive");
    if (!(c.end_time_spread_minutes > 0.0)) r.fail("$.group.end_time_spread_minutes", "must be positive");
  }

  c.spatial = codebook_source(j, r, "spatial", vocab::kSpatial, base_dir);
  c.needs_codebook = codebook_source(j, r, "needs", vocab::kNeeds, base_dir);
  c.mobility = codebook_source(j, r, "mobility", vocab::kMobility, base_dir);
  c.vehicle = codebook_source(j, r, "vehicle", vocab::kVehicle, base_dir);

  if (!c.preferred_travel.empty() && !c.vehicle.find(c.preferred_travel))
    r.fail("$.norms.preferred_travel", "'" + c.preferred_travel + "' is not a vehicle word");
  for (const char* w : {needs::kExistenceUpward, needs::kRelationshipUpward, needs::kRelationshipDownward,
                        needs::kGrowthDownward}) {
    if (!c.needs_codebook.find(w)) r.fail("$.needs_codebook", std::string("needs codebook lacks ") + w);
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_text_file(path), path.string(), path.parent_path());
}

const std::vector<std::string>& union_proximity_words() {
  static const std::vector<std::string> words = {"Near", "Close", "Adjacent", "Across the street",
                                                 "Within walking distance"};
  return words;
}

ReasoningTrace decode_proximity(double distance_m, double max_distance_m, const Codebook& spatial) {
  CodebookSet books;
  books.emplace(spatial.name, spatial);
  Inputs inputs;
  inputs.emplace(attr::kSpatialProximity, spatial_proximity_input(distance_m, max_distance_m));
  return reason(inputs, proximity_rulebase(spatial), books);
}

ScenarioReport run_scenario(const ScenarioConfig& c) {
  ScenarioReport rep;

  // 1. travel mode
  {
    std::string inferred = "unknown";
    try {
      inferred = infer_vehicle_type(c.speed_kmh, c.mobility, c.vehicle).vehicle;
    } catch (const NoRuleFiredError&) {
    }
    const std::string decision = c.preferred_travel.empty() ? inferred : c.preferred_travel;
    rep.steps.push_back({1,
                         "travel-mode",
                         {{"speed_kmh", num(c.speed_kmh)},
                          {"inferred", inferred},
                          {"preferred", c.preferred_travel.empty() ? "-" : c.preferred_travel},
                          {"decision", decision}}});
  }

  // 2. lunch prediction
  {
    const double start = c.start_time_minutes;
    const double end = start + c.visit_duration_minutes;
    const double s = c.end_time_spread_minutes;
    const Trapezoid t{end - s, end, end, end + s, 1.0};
    // The timeline resolves whole minutes.
    rep.lunch_minutes = std::round(centroid_center(Fou{t, t}));
    const Codebook& nb = c.needs_codebook;
    const double theta =
        (centroid_center(nb.fou(needs::kExistenceUpward)) - nb.domain.lo) / (nb.domain.hi - nb.domain.lo);
    const double crossing = start + 60.0 * (c.e_at_start - theta) / c.e_decay_per_hour;
    const double e_end = std::clamp(c.e_at_start - c.e_decay_per_hour * (end - start) / 60.0, 0.0, 1.0);
    rep.lunch_flagged = crossing <= t.d;
    rep.steps.push_back({2,
                         "lunch-prediction",
                         {{"visit_end", format_clock(static_cast<int>(std::lround(end)))},
                          {"predicted_lunch", format_clock(static_cast<int>(rep.lunch_minutes))},
                          {"e_at_end", num(e_end)},
                          {"threshold", num(theta)},
                          {"threshold_crossed_at", format_clock(static_cast<int>(std::lround(crossing)))},
                          {"flagged", rep.lunch_flagged ? "yes" : "no"}}});
  }

  // 3. norm elicitation
  const double d = c.distance_between(c.visit_poi, c.neighbour_poi);
  const SingletonInput x = spatial_proximity_input(d, c.max_distance_m);
  rep.steps.push_back({3,
                       "norm-elicitation",
                       {{"query", "is " + c.neighbour_poi + " close to " + c.visit_poi + "?"},
                        {"distance_m", num(d)},
                        {"x", num(x.x)},
                        {"codebook", c.spatial.name + " v" + std::to_string(c.spatial.version)}}});

  // 4. restaurant search
  {
    std::string similarity = "0";
    try {
      const ReasoningTrace tr = decode_proximity(d, c.max_distance_m, c.spatial);
      rep.proximity_word = tr.decoded();
      similarity = num(tr.ranking.front().similarity);
    } catch (const NoRuleFiredError&) {
      rep.proximity_word = "none";
    }
    const auto& close = union_proximity_words();
    rep.union_list = std::find(close.begin(), close.end(), rep.proximity_word) != close.end();
    rep.restaurants = c.poi(c.visit_poi).restaurants;
    if (rep.union_list) {
      for (const auto& name : c.poi(c.neighbour_poi).restaurants) {
        if (std::find(rep.restaurants.begin(), rep.restaurants.end(), name) == rep.restaurants.end())
          rep.restaurants.push_back(name);
      }
    }
    rep.steps.push_back({4,
                         "restaurant-search",
                         {{"proximity", rep.proximity_word},
                          {"similarity", similarity},
                          {"decision", rep.union_list ? "union" : "single"},
                          {"restaurants", join(rep.restaurants)}}});
  }

  // 5. post-lunch needs
  {
    const NeedState after = fulfil(c.needs, NeedLevel::Existence);
    const DegreeInput degrees = erg_need_degrees(after, c.needs_codebook);
    const std::pair<std::string, Interval>* best = nullptr;
    for (const auto& entry : degrees.degrees) {
      if (entry.first == needs::kExistenceUpward) continue;
      if (!best || entry.second.hi > best->second.hi ||
          (entry.second.hi == best->second.hi && entry.second.lo > best->second.lo))
        best = &entry;
    }
    const bool any = best && best->second.hi > 0.0;
    rep.dominant_need = any ? best->first : "none";
    std::string service = "none";
    if (any) service = best->first.rfind("Growth", 0) == 0 ? "growth services" : "relatedness services";
    std::vector<std::pair<std::string, std::string>> fields = {{"fulfilled", "Existence"}};
    for (const auto& entry : degrees.degrees)
      fields.emplace_back(entry.first, "[" + num(entry.second.lo) + ", " + num(entry.second.hi) + "]");
    fields.emplace_back("dominant", rep.dominant_need);
    fields.emplace_back("recommend", service);
    rep.steps.push_back({5, "needs-recommendation", std::move(fields)});
  }
  return rep;
}

std::string ScenarioReport::to_text() const {
  std::string out;
  for (const auto& s : steps) {
    out += "step " + std::to_string(s.number) + " " + s.title + ":";
    for (const auto& [k, v] : s.fields) out += " " + k + "=" + (v.find(' ') == std::string::npos ? v : "\"" + v + "\"");
    out += "\n";
  }
  return out;
}

std::string ScenarioReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : steps) {
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.fields) fields[k] = v;
    arr.push_back({{"step", s.number}, {"title", s.title}, {"fields", std::move(fields)}});
  }
  nlohmann::ordered_json j = {{"steps", std::move(arr)},
                              {"lunch_minutes", lunch_minutes},
                              {"lunch_flagged", lunch_flagged},
                              {"proximity", proximity_word},
                              {"union_list", union_list},
                              {"restaurants", restaurants},
                              {"dominant_need", dominant_need}};
  return j.dump(2) + "\n";
}

}  // namespace fctx
