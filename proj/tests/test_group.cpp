#include "doctest.h"

#include <algorithm>

#include "fctx/error.hpp"
#include "fctx/group.hpp"
#include "fctx/json_io.hpp"
#include "fctx/store.hpp"
#include "support.hpp"

using namespace fctx;
using fctx::testing::Rng;

namespace {

GroupState fixture_group() { return load_group(fctx::testing::fixture("group.json")); }

std::vector<GroupEvent> fixture_events() { return load_events(fctx::testing::fixture("group_events.jsonl")); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::size_t count_kind(const std::vector<Action>& actions, const std::string& kind) {
  return static_cast<std::size_t>(
      std::count_if(actions.begin(), actions.end(), [&](const Action& a) { return a.kind == kind; }));
}

GroupEvent leave(double ts, std::string id) { return {ts, Leave{std::move(id)}}; }

}  // namespace

TEST_CASE("replaying the fixture stream is deterministic and matches the frozen output") {
  const GroupState g = fixture_group();
  const auto events = fixture_events();
  REQUIRE(events.size() == 20);
  const SimulationResult a = simulate(g, events);
  const SimulationResult b = simulate(g, events);
  CHECK(group_state_to_json(a.state) == group_state_to_json(b.state));
  CHECK(actions_to_json(a.actions) == actions_to_json(b.actions));
  CHECK(a.state == b.state);

  const auto golden = json_io::parse(read_text_file(fctx::testing::fixture("golden_simulate.json")), "golden");
  CHECK(golden.at("actions") == json_io::parse(actions_to_json(a.actions), "actions"));
  CHECK(golden.at("state") == json_io::parse(group_state_to_json(a.state), "state"));
}

TEST_CASE("fixture stream exercises every service") {
  const SimulationResult r = simulate(fixture_group(), fixture_events());
  CHECK(count_kind(r.actions, action::kAdmitted) == 2);
  CHECK(count_kind(r.actions, action::kJoinRejected) == 1);
  CHECK(count_kind(r.actions, action::kLeft) == 2);
  CHECK(count_kind(r.actions, action::kRebuild) >= 2);
  CHECK(count_kind(r.actions, action::kEventRated) == 3);
  CHECK(count_kind(r.actions, action::kDisclosure) == 2);
  CHECK(count_kind(r.actions, action::kNeedsTransition) == 2);
  CHECK(r.state.members.count("c05") == 1);
  CHECK(r.state.members.count("c06") == 0);
  CHECK(r.state.clock == 20.0);
}

TEST_CASE("rebuild fires when churn reaches the configured fraction exactly") {
  GroupState g = fixture_group();
  REQUIRE(g.members.size() == 4);
  g.config.rebuild_fraction = 0.25;
  const Transition at = apply_group_event(leave(1, "m03"), g);
  CHECK(count_kind(at.actions, action::kRebuild) == 1);
  CHECK(at.state.churn_since_rebuild == 0);
  CHECK(at.state.codebook(vocab::kSpatial).version == g.codebook(vocab::kSpatial).version + 1);

  g.config.rebuild_fraction = 0.26;
  const Transition below = apply_group_event(leave(1, "m03"), g);
  CHECK(count_kind(below.actions, action::kRebuild) == 0);
  CHECK(below.state.churn_since_rebuild == 1);

  g.config.rebuild_fraction = 0.5;
  // 1/4 then 2/3 against the shrinking membership
  const Transition first = apply_group_event(leave(1, "m03"), g);
  CHECK(count_kind(first.actions, action::kRebuild) == 0);
  const Transition second = apply_group_event(leave(2, "m04"), first.state);
  CHECK(count_kind(second.actions, action::kRebuild) == 1);
}

TEST_CASE("rank gate admits exactly the candidates ranked at or above Recommended") {
  Rng rng(61);
  const GroupState g = fixture_group();
  const Codebook& ranking = g.codebook(vocab::kRanking);
  const auto gate = std::find_if(ranking.entries.begin(), ranking.entries.end(),
                                 [](const CodebookEntry& e) { return e.word == "Recommended"; });
  REQUIRE(gate != ranking.entries.end());
  const auto gate_index = gate - ranking.entries.begin();
  int admitted = 0;
  for (int k = 0; k < 60; ++k) {
    MemberContext c;
    c.id = "r" + std::to_string(k);
    c.location = {fctx::testing::uniform(rng, -800, 800), fctx::testing::uniform(rng, -800, 800)};
    c.need_state.e = fctx::testing::uniform(rng, 0, 1);
    c.need_state.r = fctx::testing::uniform(rng, 0, 1);
    c.need_state.g = fctx::testing::uniform(rng, 0, 1);
    c.need_state.frustration_g = std::uniform_int_distribution<int>(0, 5)(rng);
    const Rating rating = rank_join_candidate(c, g);
    const auto it = std::find_if(ranking.entries.begin(), ranking.entries.end(),
                                 [&](const CodebookEntry& e) { return e.word == rating.word; });
    REQUIRE(it != ranking.entries.end());
    const bool expect = (it - ranking.entries.begin()) >= gate_index;
    CHECK(rank_admits(rating.word, ranking) == expect);
    const Transition t = apply_group_event({1, JoinRequest{c}}, g);
    CHECK((t.state.members.count(c.id) == 1) == expect);
    CHECK(count_kind(t.actions, expect ? action::kAdmitted : action::kJoinRejected) == 1);
    admitted += expect;
  }
  CHECK(admitted > 0);
  CHECK(admitted < 60);
}

TEST_CASE("the first member of an empty group is admitted as founder") {
  GroupState g = make_group("empty");
  MemberContext c;
  c.id = "solo";
  const Transition t = apply_group_event({0, JoinRequest{c}}, g);
  REQUIRE(t.actions.size() >= 1);
  CHECK(t.actions[0].kind == action::kAdmitted);
  CHECK(t.actions[0].word == "founder");
}

TEST_CASE("invalid events leave the state untouched") {
  const GroupState g = fixture_group();
  CHECK(code_of([&] { apply_group_event(leave(1, "ghost"), g); }) == ErrorCode::UnknownMember);
  GroupState later = g;
  later.clock = 5;
  CHECK(code_of([&] { apply_group_event({4, Tick{}}, later); }) == ErrorCode::NonMonotoneTimestamp);
  NeedUpdate bad;
  bad.member_id = "m01";
  bad.e = 1.5;
  CHECK(code_of([&] { apply_group_event({1, bad}, g); }) == ErrorCode::InvalidArgument);
  MemberContext dup;
  dup.id = "m01";
  CHECK(code_of([&] { apply_group_event({1, JoinRequest{dup}}, g); }) == ErrorCode::InvalidArgument);
  CHECK(g == fixture_group());
}

TEST_CASE("tick only advances the clock") {
  const GroupState g = fixture_group();
  const Transition t = apply_group_event({7, Tick{}}, g);
  CHECK(t.actions.empty());
  GroupState expect = g;
  expect.clock = 7;
  CHECK(t.state == expect);
}

TEST_CASE("an empty stream leaves the group unchanged") {
  const GroupState g = fixture_group();
  const SimulationResult r = simulate(g, {});
  CHECK(r.actions.empty());
  CHECK(group_state_to_json(r.state) == group_state_to_json(g));
}

TEST_CASE("disclosure follows closeness against the threshold") {
  const GroupState g = fixture_group();
  const Disclosure near = disclosure_allowed("m01", "m02", g, 0.5);
  CHECK(near.allowed);
  CHECK(near.closeness >= 0.5);
  const Disclosure strict = disclosure_allowed("m01", "m02", g, near.closeness + 1e-6);
  CHECK_FALSE(strict.allowed);
  CHECK(strict.closeness == near.closeness);
  CHECK(code_of([&] { disclosure_allowed("m01", "nobody", g, 0.5); }) == ErrorCode::UnknownMember);
}

TEST_CASE("relationship log is append-only in time and queryable by window") {
  GroupState g = make_group("log");
  relationship_log_append(g, {1, "a", "join", ""});
  relationship_log_append(g, {2, "b", "join", ""});
  relationship_log_append(g, {2, "a", "disclosure", "x"});
  CHECK(code_of([&] { relationship_log_append(g, {1.5, "a", "late", ""}); }) == ErrorCode::NonMonotoneTimestamp);
  CHECK(relationship_log_query(g, "a", {0, 10}).size() == 2);
  CHECK(relationship_log_query(g, "a", {1.5, 10}).size() == 1);
  CHECK(relationship_log_query(g, "c", {0, 10}).empty());
}

TEST_CASE("need updates emit transitions only on crossings") {
  GroupState g = fixture_group();
  NeedUpdate frustrate;
  frustrate.member_id = "m01";
  frustrate.frustrated = NeedLevel::Growth;
  std::vector<Action> all;
  for (int i = 1; i <= 4; ++i) {
    const Transition t = apply_group_event({double(i), frustrate}, g);
    g = t.state;
    all.insert(all.end(), t.actions.begin(), t.actions.end());
  }
  REQUIRE(count_kind(all, action::kNeedsTransition) == 1);
  NeedUpdate reset;
  reset.member_id = "m01";
  reset.fulfilled = NeedLevel::Growth;
  const Transition t = apply_group_event({5, reset}, g);
  CHECK(count_kind(t.actions, action::kNeedsTransition) == 1);
  CHECK(t.state.members.at("m01").need_state.relationship_regression() == 0.0);
}

TEST_CASE("event stream parsing reports the offending line") {
  try {
    events_from_jsonl("{\"ts\": 2, \"kind\": \"tick\"}\n\n{\"ts\": 1, \"kind\": \"tick\"}\n", "s.jsonl");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Format);
    CHECK(std::string(e.what()).find("s.jsonl:3") != std::string::npos);
  }
  CHECK(code_of([] { events_from_jsonl("{\"ts\": 1, \"kind\": \"dance\"}\n", "s"); }) == ErrorCode::Format);
  CHECK(events_from_jsonl("\n\n", "s").empty());
}

TEST_CASE("group state serialisation reloads to the same state") {
  const SimulationResult r = simulate(fixture_group(), fixture_events());
  const std::string text = group_state_to_json(r.state);
  const GroupState back = group_from_json(text, "state", fctx::testing::fixture(""));
  CHECK(group_state_to_json(back) == text);
  CHECK(back == r.state);
}
