#include "fctx/reasoner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace fctx {

const std::string* RuleBase::vocabulary_of(std::string_view attribute) const {
  for (const auto& b : attributes) {
    if (b.attribute == attribute) return &b.vocabulary;
  }
  return nullptr;
}

std::vector<std::string> rulebase_validate(const RuleBase& rb) {
  std::vector<std::string> out;
  std::set<std::string> attrs;
  for (const auto& b : rb.attributes) {
    if (!attrs.insert(b.attribute).second) out.push_back("attribute '" + b.attribute + "' declared twice");
  }
  if (rb.output_vocabulary.empty()) out.emplace_back("output vocabulary missing");
  std::set<std::string> ids;
  for (const auto& r : rb.rules) {
    if (!ids.insert(r.id).second) out.push_back("duplicate rule id '" + r.id + "'");
    if (r.antecedents.empty()) out.push_back("rule '" + r.id + "' has no antecedent");
    for (const auto& a : r.antecedents) {
      if (rb.vocabulary_of(a.attribute) == nullptr)
        out.push_back("rule '" + r.id + "' uses undeclared attribute '" + a.attribute + "'");
    }
    if (r.consequent.vocabulary != rb.output_vocabulary)
      out.push_back("rule '" + r.id + "' has unknown consequent vocabulary '" + r.consequent.vocabulary + "'");
  }
  return out;
}

Interval DegreeInput::degree_of(std::string_view word) const {
  const std::string key = word_key(word);
  for (const auto& [name, deg] : degrees) {
    if (word_key(name) == key) return deg;
  }
  return {0.0, 0.0};
}

const Codebook& bound_codebook(const RuleBase& rb, const CodebookSet& codebooks, std::string_view attribute) {
  const std::string* vocab = rb.vocabulary_of(attribute);
  if (vocab == nullptr) throw Error(ErrorCode::Validation, "attribute '" + std::string(attribute) + "' is not declared");
  const auto it = codebooks.find(*vocab);
  if (it == codebooks.end()) throw Error(ErrorCode::UnknownWord, "no codebook bound for vocabulary '" + *vocab + "'");
  return it->second;
}

namespace {

Interval antecedent_match(const AttributeInput& input, const Codebook& cb, const std::string& word) {
  const CodebookEntry* entry = cb.find(word);
  if (entry == nullptr) throw Error(ErrorCode::UnknownWord, "'" + word + "' not in codebook " + cb.name);

  if (const auto* w = std::get_if<WordInput>(&input)) {
    const CodebookEntry* in = cb.find(w->word);
    if (in == nullptr) throw Error(ErrorCode::UnknownWord, "'" + w->word + "' not in codebook " + cb.name);
    if (cb.kind != CodebookKind::Scale) return word_key(in->word) == word_key(word) ? Interval{1, 1} : Interval{0, 0};
    const Fou& x = *in->fou;
    const Fou& f = *entry->fou;
    const double lo = sup_min(x.lmf, f.lmf);
    const double hi = sup_min(x.umf, f.umf);
    return {std::min(lo, hi), hi};
  }
  if (const auto* s = std::get_if<SingletonInput>(&input)) {
    if (!entry->fou) throw Error(ErrorCode::InvalidArgument, "numeric input for categorical codebook " + cb.name);
    if (s->x < cb.domain.lo || s->x > cb.domain.hi)
      throw Error(ErrorCode::InvalidArgument, "singleton outside the domain of codebook " + cb.name);
    return fou_membership(*entry->fou, s->x);
  }
  const auto& d = std::get<DegreeInput>(input);
  const Interval deg = d.degree_of(word);
  if (deg.lo > deg.hi || deg.lo < 0.0 || deg.hi > 1.0)
    throw Error(ErrorCode::InvalidArgument, "degree for '" + word + "' must satisfy 0 <= lo <= hi <= 1");
  return deg;
}

}  // namespace

std::optional<Interval> firing_interval(const Inputs& inputs, const Rule& rule, const RuleBase& rb,
                                        const CodebookSet& codebooks) {
  if (rule.antecedents.empty()) throw Error(ErrorCode::Validation, "rule '" + rule.id + "' has no antecedent");
  Interval f{1.0, 1.0};
  for (const auto& a : rule.antecedents) {
    const Codebook& cb = bound_codebook(rb, codebooks, a.attribute);
    const auto it = inputs.find(a.attribute);
    if (it == inputs.end()) {
      if (rb.partial_inputs) return std::nullopt;
      throw Error(ErrorCode::MissingInput, a.attribute);
    }
    const Interval m = antecedent_match(it->second, cb, a.word);
    f.lo = std::min(f.lo, m.lo);
    f.hi = std::min(f.hi, m.hi);
  }
  return f;
}

double interval_weighted_average(const std::vector<double>& values, const std::vector<Interval>& weights,
                                 bool minimize) {
  const std::size_t n = values.size();
  if (n == 0 || weights.size() != n) throw Error(ErrorCode::InvalidArgument, "values and weights must match");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

  double best = minimize ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  bool found = false;
  // k values (ascending) take the first weight choice, the rest the second.
  for (std::size_t k = 0; k <= n; ++k) {
    double num = 0.0, den = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t i = order[r];
      const bool head = r < k;
      const double w = (head == minimize) ? weights[i].hi : weights[i].lo;
      num += w * values[i];
      den += w;
    }
    if (den <= 0.0) continue;
    const double y = num / den;
    best = minimize ? std::min(best, y) : std::max(best, y);
    found = true;
  }
  if (!found) throw Error(ErrorCode::NoRuleFired, "all weights are zero");
  return best;
}

LwaCuts lwa_alpha_cuts(const std::vector<WeightedConsequent>& fired) {
  if (fired.empty()) throw Error(ErrorCode::NoRuleFired, "nothing to combine");
  std::vector<Interval> w;
  LwaCuts cuts;
  for (const auto& c : fired) {
    if (!(c.firing.hi > 0.0)) throw Error(ErrorCode::InvalidArgument, "combined rule has zero upper firing");
    w.push_back(c.firing);
    cuts.h_min = std::min(cuts.h_min, c.consequent.lmf.h);
  }
  auto cut = [&](auto member, double alpha) {
    std::vector<double> lo;
    std::vector<double> hi;
    for (const auto& c : fired) {
      const Interval i = alpha_cut(member(c.consequent), alpha);
      lo.push_back(i.lo);
      hi.push_back(i.hi);
    }
    return Interval{interval_weighted_average(lo, w, true), interval_weighted_average(hi, w, false)};
  };
  const auto upper = [](const Fou& f) -> const Trapezoid& { return f.umf; };
  const auto lower = [](const Fou& f) -> const Trapezoid& { return f.lmf; };
  cuts.umf_base = cut(upper, 0.0);
  cuts.umf_top = cut(upper, 1.0);
  cuts.lmf_base = cut(lower, 0.0);
  cuts.lmf_top = cut(lower, cuts.h_min);
  return cuts;
}

Fou lwa_combine(const std::vector<WeightedConsequent>& fired) {
  const LwaCuts cuts = lwa_alpha_cuts(fired);
  Fou out;
  out.umf = {cuts.umf_base.lo, cuts.umf_top.lo, cuts.umf_top.hi, cuts.umf_base.hi, 1.0};
  out.lmf = {cuts.lmf_base.lo, cuts.lmf_top.lo, cuts.lmf_top.hi, cuts.lmf_base.hi, cuts.h_min};

  // Averaging ordered endpoints keeps order up to rounding.
  auto order = [](Trapezoid& t) {
    t.b = std::max(t.a, t.b);
    t.c = std::max(t.b, t.c);
    t.d = std::max(t.c, t.d);
  };
  order(out.umf);
  order(out.lmf);
  out.lmf = clip_under(out.lmf, out.umf);
  return out;
}

std::vector<Ranked> decode(const Fou& y, const Codebook& out_codebook) {
  std::vector<Ranked> out;
  for (const auto& e : out_codebook.entries) {
    if (e.fou) out.push_back({e.word, jaccard_similarity(y, *e.fou)});
  }
  if (out.empty()) throw Error(ErrorCode::EmptyCodebook, out_codebook.name);
  std::stable_sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) { return a.similarity > b.similarity; });
  return out;
}

const std::string& ReasoningTrace::decoded() const {
  static const std::string none;
  return ranking.empty() ? none : ranking.front().word;
}

ReasoningTrace reason(const Inputs& inputs, const RuleBase& rb, const CodebookSet& codebooks) {
  if (rb.rules.empty()) throw Error(ErrorCode::InvalidArgument, "rulebase '" + rb.name + "' is empty");
  const auto out_it = codebooks.find(rb.output_vocabulary);
  if (out_it == codebooks.end())
    throw Error(ErrorCode::UnknownWord, "no codebook bound for output vocabulary '" + rb.output_vocabulary + "'");
  const Codebook& out_cb = out_it->second;

  ReasoningTrace trace;
  std::vector<WeightedConsequent> fired;
  for (const auto& rule : rb.rules) {
    const auto f = firing_interval(inputs, rule, rb, codebooks);
    RuleFiring rf{rule.id, f.value_or(Interval{0.0, 0.0}), false, !f.has_value()};
    if (f && f->hi > 0.0) {
      rf.fired = true;
      trace.fired.push_back(rule.id);
      fired.push_back({*f, out_cb.fou(rule.consequent.word)});
    }
    trace.firings.push_back(rf);
  }
  if (fired.empty()) throw NoRuleFiredError(std::move(trace));
  trace.output = lwa_combine(fired);
  trace.ranking = decode(*trace.output, out_cb);
  return trace;
}

ReasoningTrace reason_or_fallback(const Inputs& inputs, const RuleBase& rb, const CodebookSet& codebooks,
                                  const std::string& fallback_word) {
  try {
    return reason(inputs, rb, codebooks);
  } catch (const NoRuleFiredError& e) {
    ReasoningTrace t = e.trace();
    t.fail_safe = true;
    t.warning = "no rule fired; defaulted to '" + fallback_word + "'";
    t.ranking = {{fallback_word, 0.0}};
    return t;
  }
}

}  // namespace fctx
