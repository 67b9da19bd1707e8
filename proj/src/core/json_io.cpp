#include "fctx/json_io.hpp"

#include <sstream>

#include "fctx/error.hpp"

namespace fctx::json_io {

json parse(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON";
    throw Error(ErrorCode::Format, os.str());
  }
}

void Reader::fail(const std::string& path, const std::string& message) const {
  throw Error(ErrorCode::Format, source_ + ": " + path + ": " + message);
}

const json& Reader::object(const json& j, const std::string& path) const {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

const json& Reader::array(const json& j, const std::string& path) const {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

const json& Reader::field(const json& obj, std::string_view key, const std::string& path) const {
  object(obj, path);
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + std::string(key) + "'");
  return *it;
}

const json* Reader::optional_field(const json& obj, std::string_view key, const std::string& path) const {
  object(obj, path);
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double Reader::number(const json& j, const std::string& path) const {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::int64_t Reader::integer(const json& j, const std::string& path) const {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::string Reader::text(const json& j, const std::string& path) const {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool Reader::boolean(const json& j, const std::string& path) const {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

Interval Reader::interval(const json& j, const std::string& path) const {
  array(j, path);
  if (j.size() != 2) fail(path, "expected [lo, hi]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

Trapezoid Reader::trapezoid(const json& j, bool with_height, const std::string& path) const {
  array(j, path);
  const std::size_t n = with_height ? 5 : 4;
  if (j.size() != n && !(with_height && j.size() == 4))
    fail(path, with_height ? "expected [a, b, c, d, h]" : "expected [a, b, c, d]");
  Trapezoid t;
  t.a = number(j[0], path + "[0]");
  t.b = number(j[1], path + "[1]");
  t.c = number(j[2], path + "[2]");
  t.d = number(j[3], path + "[3]");
  t.h = j.size() == 5 ? number(j[4], path + "[4]") : 1.0;
  return t;
}

Fou Reader::fou(const json& j, const std::string& path) const {
  return {trapezoid(field(j, "umf", path), false, path + ".umf"), trapezoid(field(j, "lmf", path), true, path + ".lmf")};
}

GeoPoint Reader::point(const json& j, const std::string& path) const {
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "expected [x, y]");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
  }
  return {number(field(j, "x", path), path + ".x"), number(field(j, "y", path), path + ".y")};
}

FuzzyTimeInterval Reader::fuzzy_time(const json& j, const std::string& path) const {
  if (j.is_array()) {
    const Interval i = interval(j, path);
    return FuzzyTimeInterval::crisp(i.lo, i.hi);
  }
  return {trapezoid(field(j, "start", path), true, path + ".start"),
          trapezoid(field(j, "end", path), true, path + ".end")};
}

NeedState Reader::need_state(const json& j, const std::string& path) const {
  object(j, path);
  NeedState n;
  auto opt_num = [&](const char* key, double& out) {
    if (const json* v = optional_field(j, key, path)) out = number(*v, path + "." + key);
  };
  auto opt_int = [&](const char* key, int& out) {
    if (const json* v = optional_field(j, key, path)) out = static_cast<int>(integer(*v, path + "." + key));
  };
  opt_num("e", n.e);
  opt_num("r", n.r);
  opt_num("g", n.g);
  opt_int("frustration_r", n.frustration_r);
  opt_int("frustration_g", n.frustration_g);
  opt_int("threshold", n.threshold);
  opt_num("scale", n.scale);
  for (double v : {n.e, n.r, n.g}) {
    if (v < 0.0 || v > 1.0) fail(path, "fulfilment degrees must lie in [0, 1]");
  }
  if (n.frustration_r < 0 || n.frustration_g < 0) fail(path, "frustration counters must be non-negative");
  if (n.threshold < 1 || !(n.scale > 0.0)) fail(path, "threshold must be >= 1 and scale > 0");
  return n;
}

json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

json to_json(const Trapezoid& t, bool with_height) {
  json j = json::array({t.a, t.b, t.c, t.d});
  if (with_height) j.push_back(t.h);
  return j;
}

json to_json(const Fou& f) { return json{{"umf", to_json(f.umf, false)}, {"lmf", to_json(f.lmf, true)}}; }

json to_json(const Codebook& cb) {
  json entries = json::array();
  for (const auto& e : cb.entries) {
    json je{{"word", e.word}};
    if (e.fou) je["fou"] = to_json(*e.fou);
    if (e.extension) je["extension"] = true;
    entries.push_back(std::move(je));
  }
  return json{{"name", cb.name},         {"kind", to_string(cb.kind)},  {"domain", to_json(cb.domain)},
              {"version", cb.version},   {"provenance", cb.provenance}, {"entries", std::move(entries)}};
}

Codebook codebook_from(const json& j, const Reader& r, const std::string& path) {
  Codebook cb;
  cb.name = r.text(r.field(j, "name", path), path + ".name");
  if (const json* k = r.optional_field(j, "kind", path)) {
    const auto kind = parse_codebook_kind(r.text(*k, path + ".kind"));
    if (!kind) r.fail(path + ".kind", "expected scale, threshold or categorical");
    cb.kind = *kind;
  }
  cb.domain = r.interval(r.field(j, "domain", path), path + ".domain");
  cb.version = r.integer(r.field(j, "version", path), path + ".version");
  if (const json* p = r.optional_field(j, "provenance", path)) cb.provenance = r.text(*p, path + ".provenance");
  const json& entries = r.array(r.field(j, "entries", path), path + ".entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ep = path + ".entries[" + std::to_string(i) + "]";
    CodebookEntry e;
    e.word = r.text(r.field(entries[i], "word", ep), ep + ".word");
    if (const json* f = r.optional_field(entries[i], "fou", ep)) e.fou = r.fou(*f, ep + ".fou");
    if (const json* x = r.optional_field(entries[i], "extension", ep)) e.extension = r.boolean(*x, ep + ".extension");
    cb.entries.push_back(std::move(e));
  }
  return cb;
}

json to_json(const SurveySet& s) {
  json surveys = json::array();
  for (const auto& w : s.surveys) {
    json intervals = json::array();
    for (const auto& x : w.intervals) intervals.push_back(json{{"member", x.member_id}, {"lo", x.lo}, {"hi", x.hi}});
    json jw{{"word", w.word}, {"intervals", std::move(intervals)}};
    if (w.extension) jw["extension"] = true;
    surveys.push_back(std::move(jw));
  }
  return json{{"name", s.name}, {"kind", to_string(s.kind)}, {"domain", to_json(s.domain)}, {"surveys", std::move(surveys)}};
}

SurveySet surveys_from(const json& j, const Reader& r, const std::string& path) {
  SurveySet s;
  s.name = r.text(r.field(j, "name", path), path + ".name");
  s.domain = r.interval(r.field(j, "domain", path), path + ".domain");
  if (!(s.domain.lo < s.domain.hi)) r.fail(path + ".domain", "expected min < max");
  if (const json* k = r.optional_field(j, "kind", path)) {
    const auto kind = parse_codebook_kind(r.text(*k, path + ".kind"));
    if (!kind) r.fail(path + ".kind", "expected scale, threshold or categorical");
    s.kind = *kind;
  }
  const json& surveys = r.array(r.field(j, "surveys", path), path + ".surveys");
  for (std::size_t i = 0; i < surveys.size(); ++i) {
    const std::string wp = path + ".surveys[" + std::to_string(i) + "]";
    WordSurvey w;
    w.word = r.text(r.field(surveys[i], "word", wp), wp + ".word");
    w.domain = s.domain;
    if (const json* x = r.optional_field(surveys[i], "extension", wp)) w.extension = r.boolean(*x, wp + ".extension");
    const json& intervals = r.array(r.field(surveys[i], "intervals", wp), wp + ".intervals");
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      const std::string ip = wp + ".intervals[" + std::to_string(k) + "]";
      MemberInterval m;
      m.member_id = r.text(r.field(intervals[k], "member", ip), ip + ".member");
      m.word = w.word;
      m.lo = r.number(r.field(intervals[k], "lo", ip), ip + ".lo");
      m.hi = r.number(r.field(intervals[k], "hi", ip), ip + ".hi");
      w.intervals.push_back(std::move(m));
    }
    s.surveys.push_back(std::move(w));
  }
  return s;
}

json to_json(const RuleBase& rb) {
  json attributes = json::array();
  for (const auto& b : rb.attributes) attributes.push_back(json{{"name", b.attribute}, {"vocabulary", b.vocabulary}});
  json rules = json::array();
  for (const auto& rule : rb.rules) {
    json ifs = json::array();
    for (const auto& a : rule.antecedents) ifs.push_back(json{{"attribute", a.attribute}, {"word", a.word}});
    rules.push_back(json{{"id", rule.id},
                         {"if", std::move(ifs)},
                         {"then", json{{"vocabulary", rule.consequent.vocabulary}, {"word", rule.consequent.word}}}});
  }
  return json{{"name", rb.name},
              {"partial_inputs", rb.partial_inputs ? "allow" : "strict"},
              {"attributes", std::move(attributes)},
              {"output", json{{"variable", rb.output_variable}, {"vocabulary", rb.output_vocabulary}}},
              {"rules", std::move(rules)}};
}

RuleBase rulebase_from(const json& j, const Reader& r, const std::string& path) {
  RuleBase rb;
  rb.name = r.text(r.field(j, "name", path), path + ".name");
  if (const json* p = r.optional_field(j, "partial_inputs", path)) {
    const std::string mode = r.text(*p, path + ".partial_inputs");
    if (mode != "allow" && mode != "strict") r.fail(path + ".partial_inputs", "expected allow or strict");
    rb.partial_inputs = mode == "allow";
  }
  const json& attributes = r.array(r.field(j, "attributes", path), path + ".attributes");
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    const std::string ap = path + ".attributes[" + std::to_string(i) + "]";
    rb.attributes.push_back({r.text(r.field(attributes[i], "name", ap), ap + ".name"),
                             r.text(r.field(attributes[i], "vocabulary", ap), ap + ".vocabulary")});
  }
  const json& output = r.field(j, "output", path);
  rb.output_variable = r.text(r.field(output, "variable", path + ".output"), path + ".output.variable");
  rb.output_vocabulary = r.text(r.field(output, "vocabulary", path + ".output"), path + ".output.vocabulary");
  const json& rules = r.array(r.field(j, "rules", path), path + ".rules");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string rp = path + ".rules[" + std::to_string(i) + "]";
    Rule rule;
    rule.id = r.text(r.field(rules[i], "id", rp), rp + ".id");
    const json& ifs = r.array(r.field(rules[i], "if", rp), rp + ".if");
    if (ifs.empty()) r.fail(rp + ".if", "a rule needs at least one antecedent");
    for (std::size_t k = 0; k < ifs.size(); ++k) {
      const std::string ip = rp + ".if[" + std::to_string(k) + "]";
      Antecedent a{r.text(r.field(ifs[k], "attribute", ip), ip + ".attribute"),
                   r.text(r.field(ifs[k], "word", ip), ip + ".word")};
      if (rb.vocabulary_of(a.attribute) == nullptr) r.fail(ip + ".attribute", "undeclared attribute '" + a.attribute + "'");
      rule.antecedents.push_back(std::move(a));
    }
    const json& then = r.field(rules[i], "then", rp);
    rule.consequent.vocabulary = r.text(r.field(then, "vocabulary", rp + ".then"), rp + ".then.vocabulary");
    rule.consequent.word = r.text(r.field(then, "word", rp + ".then"), rp + ".then.word");
    if (rule.consequent.vocabulary != rb.output_vocabulary)
      r.fail(rp + ".then.vocabulary", "unknown consequent vocabulary '" + rule.consequent.vocabulary + "'");
    rb.rules.push_back(std::move(rule));
  }
  const auto issues = rulebase_validate(rb);
  if (!issues.empty()) r.fail(path, issues.front());
  return rb;
}

json to_json(const ReasoningTrace& t) {
  json firings = json::array();
  for (const auto& f : t.firings) {
    json jf{{"rule", f.rule_id}, {"firing", to_json(f.firing)}, {"fired", f.fired}};
    if (f.skipped) jf["skipped"] = true;
    firings.push_back(std::move(jf));
  }
  json ranking = json::array();
  for (const auto& r : t.ranking) ranking.push_back(json{{"word", r.word}, {"similarity", r.similarity}});
  json j{{"firings", std::move(firings)}, {"fired", t.fired}, {"ranking", std::move(ranking)}, {"decoded", t.decoded()}};
  j["output"] = t.output ? to_json(*t.output) : json(nullptr);
  if (t.fail_safe) {
    j["fail_safe"] = true;
    j["warning"] = t.warning;
  }
  return j;
}

json to_json(const EncodingReport& r) {
  auto interval = [](const MemberInterval& m) { return json{{"member", m.member_id}, {"lo", m.lo}, {"hi", m.hi}}; };
  json accepted = json::array();
  for (const auto& m : r.accepted) accepted.push_back(interval(m));
  json rejected = json::array();
  for (const auto& x : r.rejected) {
    json jx = interval(x.interval);
    jx["stage"] = to_string(x.stage);
    jx["reason"] = x.reason;
    rejected.push_back(std::move(jx));
  }
  return json{{"word", r.word},
              {"fou_kind", to_string(r.fou_kind)},
              {"accepted", std::move(accepted)},
              {"rejected", std::move(rejected)}};
}

json to_json(const GeoPoint& p) { return json::array({p.x, p.y}); }

json to_json(const FuzzyTimeInterval& t) { return json{{"start", to_json(t.start, true)}, {"end", to_json(t.end, true)}}; }

json to_json(const NeedState& n) {
  return json{{"e", n.e},
              {"r", n.r},
              {"g", n.g},
              {"frustration_r", n.frustration_r},
              {"frustration_g", n.frustration_g},
              {"threshold", n.threshold},
              {"scale", n.scale}};
}

Inputs inputs_from(const json& j, const Reader& r, const std::string& path) {
  r.object(j, path);
  Inputs inputs;
  for (const auto& [attribute, given] : j.items()) {
    const std::string ap = path + "." + attribute;
    r.object(given, ap);
    if (const json* w = r.optional_field(given, "word", ap)) {
      inputs.emplace(attribute, WordInput{r.text(*w, ap + ".word")});
    } else if (const json* v = r.optional_field(given, "value", ap)) {
      inputs.emplace(attribute, SingletonInput{r.number(*v, ap + ".value")});
    } else if (const json* d = r.optional_field(given, "degrees", ap)) {
      r.object(*d, ap + ".degrees");
      DegreeInput in;
      for (const auto& [word, deg] : d->items()) {
        const std::string dp = ap + ".degrees." + word;
        const Interval i = deg.is_number() ? Interval{deg.get<double>(), deg.get<double>()} : r.interval(deg, dp);
        if (i.lo < 0.0 || i.lo > i.hi || i.hi > 1.0) r.fail(dp, "degree must satisfy 0 <= lo <= hi <= 1");
        in.degrees.emplace_back(word, i);
      }
      inputs.emplace(attribute, std::move(in));
    } else {
      r.fail(ap, "expected one of word, value, degrees");
    }
  }
  return inputs;
}

json to_json(const Inputs& inputs) {
  json j = json::object();
  for (const auto& [attribute, input] : inputs) {
    if (const auto* w = std::get_if<WordInput>(&input)) {
      j[attribute] = json{{"word", w->word}};
    } else if (const auto* s = std::get_if<SingletonInput>(&input)) {
      j[attribute] = json{{"value", s->x}};
    } else {
      json d = json::object();
      for (const auto& [word, deg] : std::get<DegreeInput>(input).degrees) d[word] = to_json(deg);
      j[attribute] = json{{"degrees", std::move(d)}};
    }
  }
  return j;
}

}  // namespace fctx::json_io
