#pragma once

// Perceptual reasoning. Fired consequents are combined by a linguistic
// weighted average and decoded into the output vocabulary.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fctx/codebook.hpp"
#include "fctx/error.hpp"
#include "fctx/it2fs.hpp"

namespace fctx {

struct Antecedent {
  std::string attribute;
  std::string word;

  friend bool operator==(const Antecedent&, const Antecedent&) = default;
};

struct Consequent {
  std::string vocabulary;
  std::string word;

  friend bool operator==(const Consequent&, const Consequent&) = default;
};

struct Rule {
  std::string id;
  std::vector<Antecedent> antecedents;
  Consequent consequent;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct AttributeBinding {
  std::string attribute;
  std::string vocabulary;

  friend bool operator==(const AttributeBinding&, const AttributeBinding&) = default;
};

struct RuleBase {
  std::string name;
  bool partial_inputs = false;  // absent attributes silence a rule instead of failing
  std::vector<AttributeBinding> attributes;
  std::string output_variable;
  std::string output_vocabulary;
  std::vector<Rule> rules;

  const std::string* vocabulary_of(std::string_view attribute) const;

  friend bool operator==(const RuleBase&, const RuleBase&) = default;
};

/// Structural checks. Every antecedent names a declared attribute and every
/// consequent a word of the output vocabulary.
std::vector<std::string> rulebase_validate(const RuleBase& rb);

using CodebookSet = std::map<std::string, Codebook, std::less<>>;

struct WordInput {
  std::string word;
};
struct SingletonInput {
  double x = 0.0;
};
/// Degrees computed upstream, keyed by the word that names each relation.
struct DegreeInput {
  std::vector<std::pair<std::string, Interval>> degrees;

  Interval degree_of(std::string_view word) const;
};

using AttributeInput = std::variant<WordInput, SingletonInput, DegreeInput>;
using Inputs = std::map<std::string, AttributeInput, std::less<>>;

const Codebook& bound_codebook(const RuleBase& rb, const CodebookSet& codebooks, std::string_view attribute);

/// Firing interval of one rule. Returns nullopt when partial inputs are
/// allowed and an antecedent attribute has no input.
std::optional<Interval> firing_interval(const Inputs& inputs, const Rule& rule, const RuleBase& rb,
                                        const CodebookSet& codebooks);

struct WeightedConsequent {
  Interval firing;
  Fou consequent;
};

/// Extremum of Σ wᵢ yᵢ / Σ wᵢ with wᵢ ranging over weights[i]. Exhaustive
/// switch-point scan over the values in ascending order.
double interval_weighted_average(const std::vector<double>& values, const std::vector<Interval>& weights,
                                 bool minimize);

/// Exact α-cuts of the combined output: upper cuts at α = 0 and 1, lower
/// cuts at α = 0 and the smallest consequent lower height.
struct LwaCuts {
  Interval umf_base;
  Interval umf_top;
  Interval lmf_base;
  Interval lmf_top;
  double h_min = 1.0;
};

LwaCuts lwa_alpha_cuts(const std::vector<WeightedConsequent>& fired);

/// Trapezoids through the cuts, lower clipped under upper.
Fou lwa_combine(const std::vector<WeightedConsequent>& fired);

struct Ranked {
  std::string word;
  double similarity = 0.0;
};

std::vector<Ranked> decode(const Fou& y, const Codebook& out_codebook);

struct RuleFiring {
  std::string rule_id;
  Interval firing;
  bool fired = false;
  bool skipped = false;  // attribute missing under partial inputs
};

struct ReasoningTrace {
  std::vector<RuleFiring> firings;
  std::vector<std::string> fired;
  std::optional<Fou> output;
  std::vector<Ranked> ranking;
  bool fail_safe = false;
  std::string warning;

  const std::string& decoded() const;
};

class NoRuleFiredError : public Error {
 public:
  explicit NoRuleFiredError(ReasoningTrace trace)
      : Error(ErrorCode::NoRuleFired, "no rule fired"), trace_(std::move(trace)) {}
  const ReasoningTrace& trace() const noexcept { return trace_; }

 private:
  ReasoningTrace trace_;
};

ReasoningTrace reason(const Inputs& inputs, const RuleBase& rb, const CodebookSet& codebooks);

/// `reason`, but NoRuleFired yields a trace decoded to `fallback_word` with
/// fail_safe set.
ReasoningTrace reason_or_fallback(const Inputs& inputs, const RuleBase& rb, const CodebookSet& codebooks,
                                  const std::string& fallback_word);

}  // namespace fctx
