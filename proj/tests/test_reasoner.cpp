#include "doctest.h"

#include "fctx/error.hpp"
#include "fctx/reasoner.hpp"
#include "fctx/rulebases.hpp"
#include "support.hpp"

using namespace fctx;
using fctx::testing::Rng;

namespace {

Codebook book(std::string name, CodebookKind kind, std::vector<std::pair<std::string, Fou>> words) {
  Codebook cb;
  cb.name = std::move(name);
  cb.kind = kind;
  for (auto& [w, f] : words) cb.entries.push_back({w, f, false});
  return cb;
}

const Fou kLow{{0, 0, 2, 4, 1}, {0, 0, 1, 3, 0.8}};
const Fou kMid{{2, 4, 6, 8, 1}, {3, 4.5, 5.5, 7, 0.7}};
const Fou kHigh{{6, 8, 10, 10, 1}, {7, 9, 10, 10, 0.8}};

CodebookSet books() {
  CodebookSet set;
  set.emplace("level", book("level", CodebookKind::Scale, {{"low", kLow}, {"mid", kMid}, {"high", kHigh}}));
  set.emplace("grade", book("grade", CodebookKind::Scale, {{"poor", kLow}, {"fair", kMid}, {"good", kHigh}}));
  Codebook rel;
  rel.name = "rel";
  rel.kind = CodebookKind::Categorical;
  rel.entries = {{"Before", std::nullopt, false}, {"After", std::nullopt, false}};
  set.emplace("rel", rel);
  return set;
}

RuleBase grading() {
  RuleBase rb;
  rb.name = "grading";
  rb.attributes = {{"x", "level"}, {"t", "rel"}};
  rb.output_variable = "grade";
  rb.output_vocabulary = "grade";
  rb.rules = {{"r1", {{"x", "low"}}, {"grade", "poor"}},
              {"r2", {{"x", "mid"}}, {"grade", "fair"}},
              {"r3", {{"x", "high"}, {"t", "After"}}, {"grade", "good"}}};
  return rb;
}

}  // namespace

TEST_CASE("word input equal to the antecedent fires fully") {
  const RuleBase rb = grading();
  const Inputs in = {{"x", WordInput{"mid"}}, {"t", DegreeInput{{{"After", {1, 1}}}}}};
  const auto f = firing_interval(in, rb.rules[1], rb, books());
  REQUIRE(f);
  CHECK(f->hi == 1.0);
  CHECK(f->lo == doctest::Approx(0.7));
}

TEST_CASE("disjoint word input does not fire") {
  const RuleBase rb = grading();
  const Inputs in = {{"x", WordInput{"high"}}, {"t", DegreeInput{}}};
  const auto f = firing_interval(in, rb.rules[0], rb, books());
  REQUIRE(f);
  CHECK(*f == Interval{0, 0});
}

TEST_CASE("singleton input reads the antecedent membership interval") {
  CodebookSet set = books();
  set["level"].entries[1].fou = Fou{{2, 6, 8, 9, 1}, {4.2, 6.2, 7.5, 8.5, 1}};
  const RuleBase rb = grading();
  const auto f = firing_interval({{"x", SingletonInput{4.8}}}, rb.rules[1], rb, set);
  REQUIRE(f);
  // umf (4.8 - 2) / 4 = 0.7, lmf (4.8 - 4.2) / 2 = 0.3
  CHECK(f->lo == doctest::Approx(0.3));
  CHECK(f->hi == doctest::Approx(0.7));
}

TEST_CASE("degree input fires only the named relation") {
  const RuleBase rb = grading();
  const Inputs in = {{"x", WordInput{"high"}}, {"t", DegreeInput{{{"Before", {0.9, 1}}, {"After", {0.2, 0.4}}}}}};
  const auto f = firing_interval(in, rb.rules[2], rb, books());
  REQUIRE(f);
  CHECK(f->lo == doctest::Approx(0.2));
  CHECK(f->hi == doctest::Approx(0.4));
}

TEST_CASE("missing inputs fail in strict mode and silence the rule otherwise") {
  RuleBase rb = grading();
  try {
    firing_interval({{"x", WordInput{"high"}}}, rb.rules[2], rb, books());
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingInput);
  }
  rb.partial_inputs = true;
  CHECK_FALSE(firing_interval({{"x", WordInput{"high"}}}, rb.rules[2], rb, books()).has_value());
}

TEST_CASE("unknown words and out-of-domain singletons are rejected") {
  const RuleBase rb = grading();
  try {
    firing_interval({{"x", WordInput{"enormous"}}}, rb.rules[0], rb, books());
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownWord);
  }
  CHECK_THROWS_AS(firing_interval({{"x", SingletonInput{11}}}, rb.rules[0], rb, books()), Error);
}

TEST_CASE("firing intervals are ordered and more antecedents never raise the upper firing") {
  Rng rng(31);
  CodebookSet set = books();
  for (int k = 0; k < 100; ++k) {
    set["level"].entries[0].fou = fctx::testing::random_fou(rng);
    set["level"].entries[1].fou = fctx::testing::random_fou(rng);
    RuleBase rb = grading();
    rb.attributes.push_back({"y", "level"});
    const Rule one{"a", {{"x", "low"}}, {"grade", "poor"}};
    const Rule two{"b", {{"x", "low"}, {"y", "mid"}}, {"grade", "poor"}};
    const Inputs in = {{"x", SingletonInput{fctx::testing::uniform(rng, 0, 10)}},
                       {"y", SingletonInput{fctx::testing::uniform(rng, 0, 10)}}};
    const auto f1 = firing_interval(in, one, rb, set);
    const auto f2 = firing_interval(in, two, rb, set);
    CHECK(f1->lo <= f1->hi);
    CHECK(f2->lo <= f2->hi);
    CHECK(f2->hi <= f1->hi);
  }
}

TEST_CASE("interval weighted average reaches the switch-point optimum") {
  const std::vector<double> y = {1, 5, 9};
  const std::vector<Interval> w = {{0.2, 0.5}, {0.6, 0.9}, {0.1, 1.0}};
  // Brute force over the weight box vertices.
  double lo = 1e9, hi = -1e9;
  for (int m = 0; m < 8; ++m) {
    double num = 0, den = 0;
    for (int i = 0; i < 3; ++i) {
      const double wi = (m >> i) & 1 ? w[static_cast<std::size_t>(i)].hi : w[static_cast<std::size_t>(i)].lo;
      num += wi * y[static_cast<std::size_t>(i)];
      den += wi;
    }
    lo = std::min(lo, num / den);
    hi = std::max(hi, num / den);
  }
  CHECK(interval_weighted_average(y, w, true) == doctest::Approx(lo).epsilon(1e-12));
  CHECK(interval_weighted_average(y, w, false) == doctest::Approx(hi).epsilon(1e-12));
}

TEST_CASE("LWA of one fully fired rule is its consequent") {
  const Fou out = lwa_combine({{{1, 1}, kMid}});
  CHECK(out == kMid);
}

TEST_CASE("LWA of identical consequents is that consequent") {
  const Fou out = lwa_combine({{{0.2, 0.5}, kMid}, {{0.6, 0.9}, kMid}});
  CHECK(out.umf.a == doctest::Approx(kMid.umf.a));
  CHECK(out.umf.d == doctest::Approx(kMid.umf.d));
  CHECK(out.lmf.b == doctest::Approx(kMid.lmf.b));
  CHECK(out.lmf.h == kMid.lmf.h);
}

TEST_CASE("LWA output lies within the consequent span and is weight scale free") {
  Rng rng(32);
  for (int k = 0; k < 100; ++k) {
    std::vector<WeightedConsequent> fired;
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 3; ++i) {
      const double a = fctx::testing::uniform(rng, 0.0, 1.0);
      const double b = fctx::testing::uniform(rng, 0.0, 1.0);
      const Fou f = fctx::testing::random_fou(rng);
      fired.push_back({{std::min(a, b), std::max({a, b, 0.05})}, f});
      lo = std::min(lo, f.umf.a);
      hi = std::max(hi, f.umf.d);
    }
    const Fou out = lwa_combine(fired);
    CHECK(out.umf.a >= lo - 1e-12);
    CHECK(out.umf.d <= hi + 1e-12);
    CHECK(fou_is_valid(out));
    const double lambda = fctx::testing::uniform(rng, 0.05, 1.0);
    auto scaled = fired;
    for (auto& c : scaled) c.firing = {c.firing.lo * lambda, c.firing.hi * lambda};
    const Fou out2 = lwa_combine(scaled);
    CHECK(out2.umf.a == doctest::Approx(out.umf.a).epsilon(1e-9));
    CHECK(out2.umf.b == doctest::Approx(out.umf.b).epsilon(1e-9));
    CHECK(out2.umf.c == doctest::Approx(out.umf.c).epsilon(1e-9));
    CHECK(out2.umf.d == doctest::Approx(out.umf.d).epsilon(1e-9));
    CHECK(out2.lmf.a == doctest::Approx(out.lmf.a).epsilon(1e-9));
    CHECK(out2.lmf.d == doctest::Approx(out.lmf.d).epsilon(1e-9));
  }
}

TEST_CASE("LWA cuts contain sampled weighted averages") {
  Rng rng(33);
  const std::vector<WeightedConsequent> fired = {{{0.2, 0.5}, kLow}, {{0.6, 0.9}, kHigh}};
  const LwaCuts cuts = lwa_alpha_cuts(fired);
  const fctx::testing::Hull h = fctx::testing::monte_carlo_hull(
      rng, {{0.2, 0.5}, {0.6, 0.9}}, {alpha_cut(kLow.umf, 0), alpha_cut(kHigh.umf, 0)}, 100000, cuts.umf_base);
  CHECK(h.below <= 1e-12);
  CHECK(h.above <= 1e-12);
  CHECK(h.lo == doctest::Approx(cuts.umf_base.lo).epsilon(1e-3));
  CHECK(h.hi == doctest::Approx(cuts.umf_base.hi).epsilon(1e-3));
}

TEST_CASE("LWA with nothing fired is an error") {
  try {
    lwa_combine({});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRuleFired);
  }
}

TEST_CASE("decode ranks by similarity with declaration order on ties") {
  const CodebookSet set = books();
  const auto r = decode(kMid, set.at("grade"));
  REQUIRE(r.size() == 3);
  CHECK(r[0].word == "fair");
  CHECK(r[0].similarity == doctest::Approx(1.0));
  const auto far = decode(kMid.shifted(100), set.at("grade"));
  CHECK(far[0].word == "poor");
  CHECK(far[1].word == "fair");
  CHECK(far[2].word == "good");
  CHECK(far[0].similarity == 0.0);
  CHECK_THROWS_AS(decode(kMid, Codebook{}), Error);
}

TEST_CASE("decode between two words agrees with grid-sum similarities") {
  const CodebookSet set = books();
  const Fou y = lwa_combine({{{0.5, 0.5}, kMid}, {{0.5, 0.5}, kHigh}});
  const auto r = decode(y, set.at("grade"));
  for (const auto& entry : r) {
    const Fou& f = set.at("grade").fou(entry.word);
    CHECK(entry.similarity == doctest::Approx(fctx::testing::oracle_jaccard(y, f)).epsilon(1e-12));
  }
  CHECK(r[0].similarity >= r[1].similarity);
}

TEST_CASE("appending unrelated words does not change the decoded word") {
  const CodebookSet set = books();
  Codebook extended = set.at("grade");
  extended.entries.push_back({"distant", kMid.shifted(50), false});
  const Fou y = lwa_combine({{{0.3, 0.6}, kLow}, {{0.4, 0.8}, kMid}});
  CHECK(decode(y, extended)[0].word == decode(y, set.at("grade"))[0].word);
}

TEST_CASE("reason records firings and raises when nothing fires") {
  const RuleBase rb = grading();
  const Inputs in = {{"x", WordInput{"mid"}}, {"t", DegreeInput{}}};
  const ReasoningTrace t = reason(in, rb, books());
  CHECK(t.decoded() == "fair");
  REQUIRE(t.firings.size() == 3);
  for (const auto& f : t.firings) CHECK(f.fired == (f.firing.hi > 0.0));
  try {
    reason({{"x", SingletonInput{10}}, {"t", DegreeInput{}}}, rb, books());
    FAIL("expected error");
  } catch (const NoRuleFiredError& e) {
    CHECK(e.code() == ErrorCode::NoRuleFired);
    CHECK(e.trace().firings.size() == 3);
  }
  const ReasoningTrace fallback =
      reason_or_fallback({{"x", SingletonInput{10}}, {"t", DegreeInput{}}}, rb, books(), "poor");
  CHECK(fallback.fail_safe);
  CHECK(fallback.decoded() == "poor");
}

TEST_CASE("rulebase validation catches structural errors") {
  RuleBase rb = grading();
  CHECK(rulebase_validate(rb).empty());
  rb.rules.push_back({"r1", {{"x", "low"}}, {"grade", "poor"}});
  CHECK_FALSE(rulebase_validate(rb).empty());
  rb = grading();
  rb.rules[0].antecedents.clear();
  CHECK_FALSE(rulebase_validate(rb).empty());
  rb = grading();
  rb.rules[0].antecedents[0].attribute = "undeclared";
  CHECK_FALSE(rulebase_validate(rb).empty());
  rb = grading();
  rb.rules[0].consequent.vocabulary = "level";
  CHECK_FALSE(rulebase_validate(rb).empty());
}

TEST_CASE("builtin rulebases hold the six sample rules") {
  CHECK(member_ranking_rulebase().rules.size() + event_rating_rulebase().rules.size() == 6);
  CHECK(rulebase_validate(member_ranking_rulebase()).empty());
  CHECK(rulebase_validate(event_rating_rulebase()).empty());
  CHECK(rulebase_validate(mobility_rulebase()).empty());
}

TEST_CASE("sample ranking and event rules decode to their consequents") {
  CodebookSet set;
  for (auto& cb : default_vocabularies()) set.emplace(cb.name, cb);
  RuleBase ranking = member_ranking_rulebase();
  ranking.partial_inputs = true;
  const ReasoningTrace r = reason(
      {{attr::kSpatialProximity, WordInput{"near"}}, {attr::kNeedStatus, WordInput{"Relationship_downward_fulfill"}}},
      ranking, set);
  CHECK(word_key(r.decoded()) == "recommended");
  const ReasoningTrace e = reason(
      {{attr::kEventLocation, WordInput{"close"}}, {attr::kEventTime, DegreeInput{{{"Before", {1, 1}}}}}},
      event_rating_rulebase(), set);
  CHECK(word_key(e.decoded()) == "important");
}
