#include "fctx/group.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "fctx/encoding.hpp"
#include "fctx/error.hpp"
#include "fctx/json_io.hpp"
#include "fctx/rulebases.hpp"
#include "fctx/store.hpp"

namespace fctx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

const Codebook& GroupState::codebook(std::string_view name) const {
  const auto it = codebooks.find(name);
  if (it == codebooks.end()) throw Error(ErrorCode::Validation, "group has no codebook '" + std::string(name) + "'");
  return it->second;
}

std::vector<GeoPoint> GroupState::member_locations() const {
  std::vector<GeoPoint> out;
  for (const auto& [id, m] : members) out.push_back(m.location);
  return out;
}

GroupState make_group(std::string name) {
  GroupState g;
  g.name = std::move(name);
  for (auto& cb : default_vocabularies()) g.codebooks.emplace(cb.name, std::move(cb));
  g.ranking_rules = member_ranking_rulebase();
  g.event_rules = event_rating_rulebase();
  return g;
}

bool rank_admits(std::string_view word, const Codebook& ranking) {
  const auto idx = ranking.index_of(word);
  const auto gate = ranking.index_of("Recommended");
  if (!gate) throw Error(ErrorCode::Validation, "ranking codebook lacks 'Recommended'");
  return idx && *idx >= *gate;
}

Rating rank_join_candidate(const MemberContext& candidate, const GroupState& group) {
  if (group.members.empty()) throw Error(ErrorCode::InvalidArgument, "cannot rank against an empty group");
  const auto locations = group.member_locations();
  const GeoPoint center = centroid(locations);
  const FuzzyTimeInterval availability = candidate.availability.value_or(group.activity_window);

  Inputs inputs;
  inputs.emplace(attr::kSpatialProximity,
                 spatial_proximity_input(distance(candidate.location, center), group.config.max_distance_m));
  inputs.emplace(attr::kTemporalStatus, to_degree_input(allen_fuzzy_degrees(availability, group.activity_window,
                                                                            group.config.samples_per_cut)));
  inputs.emplace(attr::kNeedStatus, erg_need_degrees(candidate.need_state, group.codebook(vocab::kNeeds)));

  Rating out;
  out.trace = reason_or_fallback(inputs, group.ranking_rules, group.codebooks, "Not recommended");
  out.word = out.trace.decoded();
  return out;
}

Rating rate_event(const ExternalEvent& ev, const GroupState& group, const FuzzyTimeInterval& now) {
  const auto locations = group.member_locations();
  const GeoPoint center = locations.empty() ? ev.location : centroid(locations);
  Inputs inputs;
  inputs.emplace(attr::kEventLocation,
                 spatial_proximity_input(distance(ev.location, center), group.config.max_distance_m));
  inputs.emplace(attr::kEventTime,
                 to_degree_input(allen_fuzzy_degrees(ev.time, now, group.config.samples_per_cut)));
  Rating out;
  out.trace = reason_or_fallback(inputs, group.event_rules, group.codebooks, "Unimportant");
  out.word = out.trace.decoded();
  return out;
}

Disclosure disclosure_allowed(std::string_view requester, std::string_view owner, const GroupState& group,
                              double threshold) {
  const auto r = group.members.find(std::string(requester));
  const auto o = group.members.find(std::string(owner));
  if (r == group.members.end()) throw Error(ErrorCode::UnknownMember, std::string(requester));
  if (o == group.members.end()) throw Error(ErrorCode::UnknownMember, std::string(owner));
  const SingletonInput x =
      spatial_proximity_input(distance(r->second.location, o->second.location), group.config.max_distance_m);
  const double closeness = group.codebook(vocab::kSpatial).fou("Near").umf(x.x);
  return {closeness >= threshold, closeness};
}

void relationship_log_append(GroupState& group, LogEntry entry) {
  if (!group.relationship_log.empty() && entry.ts < group.relationship_log.back().ts)
    throw Error(ErrorCode::NonMonotoneTimestamp, "log entry at " + num(entry.ts) + " precedes " +
                                                     num(group.relationship_log.back().ts));
  group.relationship_log.push_back(std::move(entry));
}

std::vector<LogEntry> relationship_log_query(const GroupState& group, std::string_view member_id,
                                             const Interval& window) {
  std::vector<LogEntry> out;
  for (const auto& e : group.relationship_log) {
    if (e.member_id == member_id && window.contains(e.ts)) out.push_back(e);
  }
  return out;
}

namespace {

struct Context {
  Transition& t;
  double ts;

  GroupState& state() { return t.state; }
  void act(std::string kind, std::string subject, std::string word = {}, std::string detail = {}) {
    t.actions.push_back({ts, std::move(kind), std::move(subject), std::move(word), std::move(detail)});
  }
  void log(std::string member, std::string kind, std::string detail) {
    relationship_log_append(t.state, {ts, std::move(member), std::move(kind), std::move(detail)});
  }
};

bool survey_backed(const GroupState& g, const std::string& codebook) {
  return std::any_of(g.members.begin(), g.members.end(),
                     [&](const auto& kv) { return kv.second.surveys.count(codebook) > 0; });
}

void refresh_pending(GroupState& g) {
  for (auto& [id, m] : g.members) {
    m.pending = false;
    for (const auto& [name, cb] : g.codebooks) {
      if (cb.kind == CodebookKind::Categorical || !survey_backed(g, name)) continue;
      const auto it = m.surveys.find(name);
      for (const auto& e : cb.entries) {
        if (it == m.surveys.end() || it->second.find(e.word) == it->second.end()) m.pending = true;
      }
    }
  }
}

WordSurvey gather(const GroupState& g, const Codebook& cb, const std::string& word) {
  WordSurvey s;
  s.word = word;
  s.domain = cb.domain;
  for (const auto& [id, m] : g.members) {
    const auto it = m.surveys.find(cb.name);
    if (it == m.surveys.end()) continue;
    const auto w = it->second.find(word);
    if (w != it->second.end()) s.intervals.push_back({id, word, w->second.lo, w->second.hi});
  }
  return s;
}

void reencode_contributed(Context& ctx, const MemberContext& member) {
  GroupState& g = ctx.state();
  for (const auto& [name, words] : member.surveys) {
    const auto it = g.codebooks.find(name);
    if (it == g.codebooks.end() || it->second.kind == CodebookKind::Categorical) continue;
    Codebook& cb = it->second;
    std::vector<std::string> changed;
    for (auto& entry : cb.entries) {
      if (words.find(entry.word) == words.end()) continue;
      try {
        const Fou f = encode_word(gather(g, cb, entry.word)).fou;
        if (!entry.fou || !(*entry.fou == f)) {
          entry.fou = f;
          changed.push_back(entry.word);
        }
      } catch (const Error& e) {
        ctx.act(action::kRebuildSkipped, name, entry.word, e.what());
      }
    }
    if (!changed.empty()) {
      ++cb.version;
      std::string detail = "v" + std::to_string(cb.version) + ":";
      for (const auto& w : changed) detail += " " + w + ";";
      detail.pop_back();
      ctx.act(action::kCodebookUpdated, name, {}, detail);
    }
  }
}

void rebuild_codebooks(Context& ctx) {
  GroupState& g = ctx.state();
  std::string detail;
  for (auto& [name, cb] : g.codebooks) {
    if (cb.kind == CodebookKind::Categorical || !survey_backed(g, name)) continue;
    SurveySet set{name, cb.domain, cb.kind, {}};
    std::vector<VocabularyWord> words;
    for (const auto& e : cb.entries) {
      set.surveys.push_back(gather(g, cb, e.word));
      words.push_back({e.word, e.extension});
    }
    try {
      Codebook fresh = encode_codebook(set, words).codebook;
      fresh.kind = cb.kind;
      fresh.version = cb.version + 1;
      cb = std::move(fresh);
      detail += (detail.empty() ? "" : "; ") + name + " v" + std::to_string(cb.version);
    } catch (const Error& e) {
      ctx.act(action::kRebuildSkipped, name, {}, e.what());
    }
  }
  g.churn_since_rebuild = 0;
  ctx.act(action::kRebuild, kGroupSubject, {}, detail);
  ctx.log(kGroupSubject, "rebuild", detail.empty() ? "no survey-backed codebooks" : detail);
}

void maybe_rebuild(Context& ctx, std::size_t members_before) {
  const GroupState& g = ctx.state();
  const double denom = static_cast<double>(std::max<std::size_t>(members_before, 1));
  if (static_cast<double>(g.churn_since_rebuild) / denom >= g.config.rebuild_fraction) rebuild_codebooks(ctx);
}

MemberContext& member(GroupState& g, const std::string& id) {
  const auto it = g.members.find(id);
  if (it == g.members.end()) throw Error(ErrorCode::UnknownMember, id);
  return it->second;
}

void handle(Context& ctx, const JoinRequest& ev) {
  GroupState& g = ctx.state();
  const std::string& id = ev.candidate.id;
  if (id.empty() || g.members.count(id) > 0)
    throw Error(ErrorCode::InvalidArgument, "join request for existing or empty id '" + id + "'");
  const std::size_t before = g.members.size();
  std::string word = "founder";
  if (before > 0) {
    const Rating r = rank_join_candidate(ev.candidate, g);
    word = r.word;
    if (!rank_admits(r.word, g.codebook(vocab::kRanking))) {
      const std::string detail = "ranked " + r.word + "; recommendation of other services" +
                                 (r.trace.fail_safe ? " (no rule fired)" : "");
      ctx.act(action::kJoinRejected, id, r.word, detail);
      ctx.log(id, "join-rejected", detail);
      return;
    }
  }
  MemberContext m = ev.candidate;
  m.joined_at = ctx.ts;
  g.members.emplace(id, m);
  ++g.churn_since_rebuild;
  ctx.act(action::kAdmitted, id, word);
  ctx.log(id, "join", "ranked " + word);
  reencode_contributed(ctx, m);
  maybe_rebuild(ctx, before);
  refresh_pending(g);
}

void handle(Context& ctx, const Leave& ev) {
  GroupState& g = ctx.state();
  member(g, ev.member_id);
  const std::size_t before = g.members.size();
  g.members.erase(ev.member_id);
  ++g.churn_since_rebuild;
  ctx.act(action::kLeft, ev.member_id);
  ctx.log(ev.member_id, "leave", "left the group");
  maybe_rebuild(ctx, before);
  refresh_pending(g);
}

void handle(Context& ctx, const MemberMoved& ev) {
  GroupState& g = ctx.state();
  MemberContext& m = member(g, ev.member_id);
  m.location = ev.location;
  ctx.act(action::kMoved, ev.member_id, {}, num(ev.location.x) + "," + num(ev.location.y));
  if (ev.speed_kmh) {
    m.speed_kmh = *ev.speed_kmh;
    std::string vehicle = "unknown";
    try {
      vehicle = infer_vehicle_type(m.speed_kmh, g.codebook(vocab::kMobility), g.codebook(vocab::kVehicle)).vehicle;
    } catch (const NoRuleFiredError&) {
    }
    ctx.act(action::kMobility, ev.member_id, vehicle, num(m.speed_kmh) + " km/h");
  }
}

void handle(Context& ctx, const NeedUpdate& ev) {
  GroupState& g = ctx.state();
  MemberContext& m = member(g, ev.member_id);
  const NeedState before = m.need_state;
  NeedState& n = m.need_state;
  for (auto [value, slot] : {std::pair{ev.e, &n.e}, std::pair{ev.r, &n.r}, std::pair{ev.g, &n.g}}) {
    if (!value) continue;
    if (*value < 0.0 || *value > 1.0) throw Error(ErrorCode::InvalidArgument, "fulfilment must lie in [0, 1]");
    *slot = *value;
  }
  if (ev.frustrated) n = frustration_regression_step(n, *ev.frustrated);
  if (ev.fulfilled) n = fulfil(n, *ev.fulfilled);

  auto transition = [&](double was, double now, const char* word) {
    if ((was > 0.0) == (now > 0.0)) return;
    const std::string detail = now > 0.0 ? "activated at " + num(now) : "reset";
    ctx.act(action::kNeedsTransition, ev.member_id, word, detail);
    ctx.log(ev.member_id, "needs-transition", std::string(word) + " " + detail);
  };
  transition(before.relationship_regression(), n.relationship_regression(), needs::kRelationshipDownward);
  transition(before.existence_focus(), n.existence_focus(), "Existence_focus");
}

void handle(Context& ctx, const ExternalEvent& ev) {
  GroupState& g = ctx.state();
  const Rating r = rate_event(ev, g, g.activity_window);
  const std::string detail = r.trace.fail_safe ? "no rule fired" : "";
  ctx.act(action::kEventRated, ev.name, r.word, detail);
  ctx.log(kGroupSubject, "rating", ev.name + " rated " + r.word);
}

void handle(Context& ctx, const DisclosureRequest& ev) {
  GroupState& g = ctx.state();
  const double threshold = ev.threshold.value_or(g.config.disclosure_threshold);
  const Disclosure d = disclosure_allowed(ev.requester, ev.owner, g, threshold);
  const std::string detail = "requester=" + ev.requester + " closeness=" + num(d.closeness);
  ctx.act(action::kDisclosure, ev.owner, d.allowed ? "allowed" : "denied", detail);
  ctx.log(ev.owner, "disclosure", std::string(d.allowed ? "allowed " : "denied ") + detail);
}

void handle(Context&, const Tick&) {}

}  // namespace

Transition apply_group_event(const GroupEvent& event, const GroupState& group) {
  if (event.ts < group.clock)
    throw Error(ErrorCode::NonMonotoneTimestamp, "event at " + num(event.ts) + " precedes clock " + num(group.clock));
  Transition t{group, {}};
  t.state.clock = event.ts;
  Context ctx{t, event.ts};
  std::visit([&](const auto& payload) { handle(ctx, payload); }, event.payload);
  return t;
}

SimulationResult simulate(GroupState group, const std::vector<GroupEvent>& events) {
  SimulationResult out{std::move(group), {}};
  for (const auto& ev : events) {
    Transition t = apply_group_event(ev, out.state);
    out.state = std::move(t.state);
    out.actions.insert(out.actions.end(), t.actions.begin(), t.actions.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

using json_io::json;
using json_io::Reader;

std::optional<NeedLevel> parse_level(const Reader& r, const json& j, const std::string& path) {
  const std::string text = r.text(j, path);
  const std::string key = word_key(text);
  if (key == "e" || key == "existence") return NeedLevel::Existence;
  if (key == "r" || key == "relatedness" || key == "relationship") return NeedLevel::Relatedness;
  if (key == "g" || key == "growth") return NeedLevel::Growth;
  r.fail(path, "expected E, R or G");
}

MemberContext member_from(const json& j, const Reader& r, const std::string& path) {
  MemberContext m;
  m.id = r.text(r.field(j, "id", path), path + ".id");
  m.location = r.point(r.field(j, "location", path), path + ".location");
  if (const json* v = r.optional_field(j, "speed_kmh", path)) m.speed_kmh = r.number(*v, path + ".speed_kmh");
  if (const json* v = r.optional_field(j, "needs", path)) m.need_state = r.need_state(*v, path + ".needs");
  if (const json* v = r.optional_field(j, "joined_at", path)) m.joined_at = r.number(*v, path + ".joined_at");
  if (const json* v = r.optional_field(j, "availability", path))
    m.availability = r.fuzzy_time(*v, path + ".availability");
  if (const json* v = r.optional_field(j, "pending", path)) m.pending = r.boolean(*v, path + ".pending");
  if (const json* v = r.optional_field(j, "surveys", path)) {
    r.object(*v, path + ".surveys");
    for (const auto& [cb, words] : v->items()) {
      r.object(words, path + ".surveys." + cb);
      for (const auto& [word, iv] : words.items())
        m.surveys[cb][word] = r.interval(iv, path + ".surveys." + cb + "." + word);
    }
  }
  return m;
}

json to_json(const MemberContext& m) {
  json surveys = json::object();
  for (const auto& [cb, words] : m.surveys) {
    json jw = json::object();
    for (const auto& [word, iv] : words) jw[word] = json_io::to_json(iv);
    surveys[cb] = std::move(jw);
  }
  json j{{"id", m.id},
         {"location", json_io::to_json(m.location)},
         {"speed_kmh", m.speed_kmh},
         {"needs", json_io::to_json(m.need_state)},
         {"joined_at", m.joined_at},
         {"pending", m.pending},
         {"surveys", std::move(surveys)}};
  if (m.availability) j["availability"] = json_io::to_json(*m.availability);
  return j;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

GroupState group_from_json(std::string_view text, std::string_view source, const std::filesystem::path& base_dir) {
  const Reader r(source);
  const json j = json_io::parse(text, source);
  GroupState g = make_group(r.text(r.field(j, "name", "$"), "$.name"));

  if (const json* c = r.optional_field(j, "config", "$")) {
    auto opt = [&](const char* key, double& out) {
      if (const json* v = r.optional_field(*c, key, "$.config")) out = r.number(*v, std::string("$.config.") + key);
    };
    opt("max_distance_m", g.config.max_distance_m);
    opt("rebuild_fraction", g.config.rebuild_fraction);
    opt("disclosure_threshold", g.config.disclosure_threshold);
    if (const json* v = r.optional_field(*c, "samples_per_cut", "$.config"))
      g.config.samples_per_cut = static_cast<int>(r.integer(*v, "$.config.samples_per_cut"));
    if (!(g.config.max_distance_m > 0.0)) r.fail("$.config.max_distance_m", "must be positive");
    if (!(g.config.rebuild_fraction > 0.0)) r.fail("$.config.rebuild_fraction", "must be positive");
    if (g.config.samples_per_cut < 1) r.fail("$.config.samples_per_cut", "must be positive");
  }
  if (const json* v = r.optional_field(j, "activity_window", "$")) g.activity_window = r.fuzzy_time(*v, "$.activity_window");
  if (const json* v = r.optional_field(j, "clock", "$")) g.clock = r.number(*v, "$.clock");

  if (const json* list = r.optional_field(j, "codebooks", "$")) {
    r.array(*list, "$.codebooks");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string p = "$.codebooks[" + std::to_string(i) + "]";
      Codebook cb = (*list)[i].is_string() ? load_codebook(resolve(base_dir, r.text((*list)[i], p)))
                                           : json_io::codebook_from((*list)[i], r, p);
      const auto issues = codebook_validate(cb);
      if (!issues.empty()) throw Error(ErrorCode::Validation, std::string(source) + ": " + p + ": " + issues.front());
      g.codebooks.insert_or_assign(cb.name, std::move(cb));
    }
  }
  if (const json* list = r.optional_field(j, "surveys", "$")) {
    r.array(*list, "$.surveys");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string p = "$.surveys[" + std::to_string(i) + "]";
      const SurveySet s = load_surveys(resolve(base_dir, r.text((*list)[i], p)));
      Codebook cb = encode_codebook(s).codebook;
      if (const auto it = g.codebooks.find(s.name); it != g.codebooks.end()) cb.kind = it->second.kind;
      g.codebooks.insert_or_assign(cb.name, std::move(cb));
    }
  }
  if (const json* rb = r.optional_field(j, "rulebases", "$")) {
    // A path or an inline rulebase, as written by group_state_to_json.
    auto read = [&](const char* key, RuleBase& out) {
      const json* v = r.optional_field(*rb, key, "$.rulebases");
      if (v == nullptr) return;
      const std::string p = std::string("$.rulebases.") + key;
      out = v->is_string() ? load_rulebase(resolve(base_dir, r.text(*v, p))) : json_io::rulebase_from(*v, r, p);
    };
    read("ranking", g.ranking_rules);
    read("events", g.event_rules);
  }
  if (const json* v = r.optional_field(j, "churn_since_rebuild", "$"))
    g.churn_since_rebuild = static_cast<int>(r.integer(*v, "$.churn_since_rebuild"));
  if (const json* list = r.optional_field(j, "relationship_log", "$")) {
    r.array(*list, "$.relationship_log");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string p = "$.relationship_log[" + std::to_string(i) + "]";
      const json& e = r.object((*list)[i], p);
      LogEntry entry{r.number(r.field(e, "ts", p), p + ".ts"), r.text(r.field(e, "member", p), p + ".member"),
                     r.text(r.field(e, "kind", p), p + ".kind"), r.text(r.field(e, "detail", p), p + ".detail")};
      relationship_log_append(g, std::move(entry));
    }
  }
  if (const json* list = r.optional_field(j, "members", "$")) {
    r.array(*list, "$.members");
    for (std::size_t i = 0; i < list->size(); ++i) {
      MemberContext m = member_from((*list)[i], r, "$.members[" + std::to_string(i) + "]");
      if (!g.members.emplace(m.id, m).second) r.fail("$.members", "duplicate member id '" + m.id + "'");
    }
  }
  refresh_pending(g);
  return g;
}

GroupState load_group(const std::filesystem::path& path) {
  return group_from_json(read_text_file(path), path.string(), path.parent_path());
}

std::string group_state_to_json(const GroupState& g) {
  json members = json::array();
  for (const auto& [id, m] : g.members) members.push_back(to_json(m));
  json books = json::array();
  for (const auto& [name, cb] : g.codebooks) books.push_back(json_io::to_json(cb));
  json log = json::array();
  for (const auto& e : g.relationship_log)
    log.push_back(json{{"ts", e.ts}, {"member", e.member_id}, {"kind", e.kind}, {"detail", e.detail}});
  json j{{"name", g.name},
         {"clock", g.clock},
         {"churn_since_rebuild", g.churn_since_rebuild},
         {"config",
          json{{"max_distance_m", g.config.max_distance_m},
               {"rebuild_fraction", g.config.rebuild_fraction},
               {"disclosure_threshold", g.config.disclosure_threshold},
               {"samples_per_cut", g.config.samples_per_cut}}},
         {"activity_window", json_io::to_json(g.activity_window)},
         {"members", std::move(members)},
         {"codebooks", std::move(books)},
         {"rulebases", json{{"ranking", json_io::to_json(g.ranking_rules)}, {"events", json_io::to_json(g.event_rules)}}},
         {"relationship_log", std::move(log)}};
  return j.dump(2) + "\n";
}

GroupEvent group_event_from_json(std::string_view line, std::string_view source) {
  const Reader r(source);
  const json j = json_io::parse(line, source);
  GroupEvent ev;
  ev.ts = r.number(r.field(j, "ts", "$"), "$.ts");
  const std::string kind = r.text(r.field(j, "kind", "$"), "$.kind");
  auto id = [&](const char* key) { return r.text(r.field(j, key, "$"), std::string("$.") + key); };
  if (kind == "join") {
    ev.payload = JoinRequest{member_from(r.field(j, "member", "$"), r, "$.member")};
  } else if (kind == "leave") {
    ev.payload = Leave{id("member_id")};
  } else if (kind == "moved") {
    MemberMoved m{id("member_id"), r.point(r.field(j, "location", "$"), "$.location"), std::nullopt};
    if (const json* v = r.optional_field(j, "speed_kmh", "$")) m.speed_kmh = r.number(*v, "$.speed_kmh");
    ev.payload = m;
  } else if (kind == "needs") {
    NeedUpdate n{id("member_id"), {}, {}, {}, {}, {}};
    if (const json* v = r.optional_field(j, "e", "$")) n.e = r.number(*v, "$.e");
    if (const json* v = r.optional_field(j, "r", "$")) n.r = r.number(*v, "$.r");
    if (const json* v = r.optional_field(j, "g", "$")) n.g = r.number(*v, "$.g");
    if (const json* v = r.optional_field(j, "frustrated", "$")) n.frustrated = parse_level(r, *v, "$.frustrated");
    if (const json* v = r.optional_field(j, "fulfilled", "$")) n.fulfilled = parse_level(r, *v, "$.fulfilled");
    ev.payload = n;
  } else if (kind == "event") {
    ev.payload = ExternalEvent{id("name"), r.point(r.field(j, "location", "$"), "$.location"),
                               r.fuzzy_time(r.field(j, "time", "$"), "$.time")};
  } else if (kind == "disclosure") {
    DisclosureRequest d{id("requester"), id("owner"), std::nullopt};
    if (const json* v = r.optional_field(j, "threshold", "$")) d.threshold = r.number(*v, "$.threshold");
    ev.payload = d;
  } else if (kind == "tick") {
    ev.payload = Tick{};
  } else {
    r.fail("$.kind", "unknown event kind '" + kind + "'");
  }
  return ev;
}

std::vector<GroupEvent> events_from_jsonl(std::string_view text, std::string_view source) {
  std::vector<GroupEvent> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  double last = -std::numeric_limits<double>::infinity();
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      const std::string where = std::string(source) + ":" + std::to_string(line_no);
      GroupEvent ev = group_event_from_json(line, where);
      if (ev.ts < last) throw Error(ErrorCode::Format, where + ": timestamps must be non-decreasing");
      last = ev.ts;
      out.push_back(std::move(ev));
    }
    pos = end + 1;
  }
  return out;
}

std::vector<GroupEvent> load_events(const std::filesystem::path& path) {
  return events_from_jsonl(read_text_file(path), path.string());
}

std::string actions_to_json(const std::vector<Action>& actions) {
  json arr = json::array();
  for (const auto& a : actions)
    arr.push_back(json{{"ts", a.ts}, {"kind", a.kind}, {"subject", a.subject}, {"word", a.word}, {"detail", a.detail}});
  return arr.dump(2) + "\n";
}

}  // namespace fctx
