#pragma once

// Group autonomy layer as a deterministic event-driven state machine.
//
// Agents are event handlers over an immutable GroupState value. The group
// manager admits and removes members and triggers codebook rebuilds; the
// context agents keep their codebooks in step with member surveys.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fctx/codebook.hpp"
#include "fctx/context.hpp"
#include "fctx/reasoner.hpp"

namespace fctx {

struct GroupConfig {
  double max_distance_m = 1000.0;
  double rebuild_fraction = 0.25;
  double disclosure_threshold = 0.5;
  int samples_per_cut = kDefaultSamplesPerCut;

  friend bool operator==(const GroupConfig&, const GroupConfig&) = default;
};

/// codebook name -> word -> interval contributed by one member.
using MemberSurveys = std::map<std::string, std::map<std::string, Interval>>;

struct MemberContext {
  std::string id;
  GeoPoint location;
  double speed_kmh = 0.0;
  NeedState need_state;
  MemberSurveys surveys;
  double joined_at = 0.0;
  std::optional<FuzzyTimeInterval> availability;  // defaults to the group activity window
  bool pending = false;                            // some survey-backed word has no interval yet

  friend bool operator==(const MemberContext&, const MemberContext&) = default;
};

struct LogEntry {
  double ts = 0.0;
  std::string member_id;
  std::string kind;
  std::string detail;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

inline constexpr const char* kGroupSubject = "group";

struct GroupState {
  std::string name;
  std::map<std::string, MemberContext> members;
  CodebookSet codebooks;
  RuleBase ranking_rules;
  RuleBase event_rules;
  FuzzyTimeInterval activity_window = FuzzyTimeInterval::crisp(0.0, 60.0);
  std::vector<LogEntry> relationship_log;
  int churn_since_rebuild = 0;
  GroupConfig config;
  double clock = 0.0;

  const Codebook& codebook(std::string_view name) const;
  std::vector<GeoPoint> member_locations() const;

  friend bool operator==(const GroupState&, const GroupState&) = default;
};

/// Defaults: placeholder codebooks for every builtin vocabulary and the
/// builtin ranking and event rulebases.
GroupState make_group(std::string name);

// ---------------------------------------------------------------------------
// Events and actions

struct JoinRequest {
  MemberContext candidate;
};
struct Leave {
  std::string member_id;
};
struct MemberMoved {
  std::string member_id;
  GeoPoint location;
  std::optional<double> speed_kmh;
};
struct NeedUpdate {
  std::string member_id;
  std::optional<double> e, r, g;
  std::optional<NeedLevel> frustrated;
  std::optional<NeedLevel> fulfilled;
};
struct ExternalEvent {
  std::string name;
  GeoPoint location;
  FuzzyTimeInterval time;
};
struct DisclosureRequest {
  std::string requester;
  std::string owner;
  std::optional<double> threshold;
};
struct Tick {};

struct GroupEvent {
  double ts = 0.0;
  std::variant<JoinRequest, Leave, MemberMoved, NeedUpdate, ExternalEvent, DisclosureRequest, Tick> payload;
};

struct Action {
  double ts = 0.0;
  std::string kind;
  std::string subject;
  std::string word;
  std::string detail;

  friend bool operator==(const Action&, const Action&) = default;
};

namespace action {
inline constexpr const char* kAdmitted = "Admitted";
inline constexpr const char* kJoinRejected = "JoinRejected";
inline constexpr const char* kLeft = "Left";
inline constexpr const char* kRebuild = "RebuildCodebooks";
inline constexpr const char* kRebuildSkipped = "RebuildSkipped";
inline constexpr const char* kCodebookUpdated = "CodebookUpdated";
inline constexpr const char* kMoved = "Moved";
inline constexpr const char* kMobility = "Mobility";
inline constexpr const char* kNeedsTransition = "NeedsTransition";
inline constexpr const char* kEventRated = "EventRated";
inline constexpr const char* kDisclosure = "Disclosure";
}  // namespace action

struct Transition {
  GroupState state;
  std::vector<Action> actions;
};

/// Pure transition. Throws UnknownMember for absent ids and
/// NonMonotoneTimestamp when the event precedes the group clock.
Transition apply_group_event(const GroupEvent& event, const GroupState& group);

struct Rating {
  std::string word;
  ReasoningTrace trace;
};

/// Ranks a candidate with the member-ranking rules; a silent rulebase
/// decodes to "Not recommended" with the trace flagged.
Rating rank_join_candidate(const MemberContext& candidate, const GroupState& group);

/// True iff the word sits at or above "Recommended" in the ranking codebook.
bool rank_admits(std::string_view word, const Codebook& ranking);

/// Rates an external event against `now`; a silent rulebase decodes to
/// "Unimportant".
Rating rate_event(const ExternalEvent& ev, const GroupState& group, const FuzzyTimeInterval& now);

struct Disclosure {
  bool allowed = false;
  double closeness = 0.0;
};

Disclosure disclosure_allowed(std::string_view requester, std::string_view owner, const GroupState& group,
                              double threshold);

/// Throws NonMonotoneTimestamp if entry.ts precedes the last entry.
void relationship_log_append(GroupState& group, LogEntry entry);
std::vector<LogEntry> relationship_log_query(const GroupState& group, std::string_view member_id,
                                             const Interval& window);

struct SimulationResult {
  GroupState state;
  std::vector<Action> actions;
};

SimulationResult simulate(GroupState group, const std::vector<GroupEvent>& events);

// ---------------------------------------------------------------------------
// Serialization

/// Group configuration. Relative paths inside it resolve against base_dir.
GroupState group_from_json(std::string_view text, std::string_view source, const std::filesystem::path& base_dir);
GroupState load_group(const std::filesystem::path& path);
std::string group_state_to_json(const GroupState& group);

GroupEvent group_event_from_json(std::string_view line, std::string_view source);
/// JSON lines, blank lines ignored.
std::vector<GroupEvent> load_events(const std::filesystem::path& path);
std::vector<GroupEvent> events_from_jsonl(std::string_view text, std::string_view source);

std::string actions_to_json(const std::vector<Action>& actions);

}  // namespace fctx
