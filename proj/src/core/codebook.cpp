#include "fctx/codebook.hpp"

#include <cctype>
#include <set>

#include "fctx/error.hpp"

namespace fctx {

const char* to_string(CodebookKind kind) {
  switch (kind) {
    case CodebookKind::Scale: return "scale";
    case CodebookKind::Threshold: return "threshold";
    case CodebookKind::Categorical: return "categorical";
  }
  return "scale";
}

std::optional<CodebookKind> parse_codebook_kind(std::string_view text) {
  if (text == "scale") return CodebookKind::Scale;
  if (text == "threshold") return CodebookKind::Threshold;
  if (text == "categorical") return CodebookKind::Categorical;
  return std::nullopt;
}

std::string word_key(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  bool pending_space = false;
  for (char ch : word) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || ch == '_' || ch == '-') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

const CodebookEntry* Codebook::find(std::string_view word) const {
  const auto idx = index_of(word);
  return idx ? &entries[*idx] : nullptr;
}

std::optional<std::size_t> Codebook::index_of(std::string_view word) const {
  const std::string key = word_key(word);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (word_key(entries[i].word) == key) return i;
  }
  return std::nullopt;
}

const Fou& Codebook::fou(std::string_view word) const {
  const CodebookEntry* e = find(word);
  if (e == nullptr) throw Error(ErrorCode::UnknownWord, "'" + std::string(word) + "' not in codebook " + name);
  if (!e->fou) throw Error(ErrorCode::UnknownWord, "'" + std::string(word) + "' has no FOU in codebook " + name);
  return *e->fou;
}

std::vector<std::string> codebook_validate(const Codebook& cb) {
  std::vector<std::string> out;
  if (!(cb.domain.lo < cb.domain.hi)) out.emplace_back("domain must satisfy min < max");
  std::set<std::string> seen;
  for (const auto& e : cb.entries) {
    if (!seen.insert(word_key(e.word)).second) out.push_back("duplicate word '" + e.word + "'");
    if (cb.kind != CodebookKind::Categorical && !e.fou) out.push_back("word '" + e.word + "' lacks an FOU");
    if (e.fou) {
      for (const auto& v : fou_validate(*e.fou)) out.push_back("word '" + e.word + "': " + v);
    }
  }
  return out;
}

namespace {

std::vector<VocabularyDef> make_builtins() {
  auto words = [](std::initializer_list<const char*> core, std::initializer_list<const char*> ext) {
    std::vector<VocabularyWord> out;
    for (const char* w : core) out.push_back({w, false});
    for (const char* w : ext) out.push_back({w, true});
    return out;
  };
  std::vector<VocabularyDef> defs;
  defs.push_back({vocab::kSpatial, CodebookKind::Scale, {0.0, 10.0},
                  words({"Within walking distance", "Across the street", "Near", "Close", "Adjacent"}, {"Far"}),
                  {"Adjacent", "Across the street", "Close", "Near", "Within walking distance", "Far"}});
  defs.push_back({vocab::kTemporal, CodebookKind::Categorical, {0.0, 10.0},
                  words({"Before", "Overlaps", "During", "Meets", "Starts", "Finishes", "Equals"}, {"After"}),
                  {}});
  defs.push_back({vocab::kNeeds, CodebookKind::Threshold, {0.0, 10.0},
                  words({"Existence_upward_fulfill", "Relationship_upward_fulfill", "Relationship_downward_fulfill",
                         "Growth_downward_fulfill"},
                        {}),
                  {}});
  defs.push_back({vocab::kImportance, CodebookKind::Scale, {0.0, 10.0},
                  words({"Unimportant", "More or less unimportant", "Moderately unimportant", "More or less important",
                         "Moderately important", "Very important"},
                        {"Important"}),
                  {"Unimportant", "More or less unimportant", "Moderately unimportant", "More or less important",
                   "Moderately important", "Important", "Very important"}});
  defs.push_back({vocab::kRanking, CodebookKind::Scale, {0.0, 10.0},
                  words({"Not recommended", "More or less Recommended", "Recommended", "Highly recommended"}, {}),
                  {}});
  defs.push_back({vocab::kMobility, CodebookKind::Scale, {0.0, 10.0}, words({"slow", "medium", "fast"}, {}), {}});
  defs.push_back({vocab::kVehicle, CodebookKind::Scale, {0.0, 10.0}, words({"walk", "bicycle", "vehicle"}, {}), {}});
  return defs;
}

}  // namespace

const std::vector<VocabularyDef>& builtin_vocabularies() {
  static const std::vector<VocabularyDef> defs = make_builtins();
  return defs;
}

const VocabularyDef* find_vocabulary(std::string_view name) {
  for (const auto& d : builtin_vocabularies()) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

Codebook placeholder_codebook(const VocabularyDef& def) {
  Codebook cb;
  cb.name = def.name;
  cb.domain = def.domain;
  cb.kind = def.kind;
  for (const auto& w : def.words) cb.entries.push_back({w.word, std::nullopt, w.extension});
  if (def.kind == CodebookKind::Categorical) return cb;

  std::vector<std::string> order = def.scale_order;
  if (order.empty()) {
    for (const auto& w : def.words) order.push_back(w.word);
  }
  const double lo = def.domain.lo;
  const double hi = def.domain.hi;
  const std::size_t n = order.size();
  for (std::size_t k = 0; k < n; ++k) {
    Fou f;
    if (n == 1) {
      f = {{lo, lo, hi, hi, 1.0}, {lo, lo, hi, hi, 1.0}};
    } else {
      const double s = (hi - lo) / static_cast<double>(n - 1);
      const double c = lo + s * static_cast<double>(k);
      f.umf = {c - 0.6 * s, c - 0.2 * s, c + 0.2 * s, c + 0.6 * s, 1.0};
      f.lmf = {c - 0.4 * s, c - 0.1 * s, c + 0.1 * s, c + 0.4 * s, 0.8};
      if (k == 0) {
        f.umf.a = f.umf.b = f.lmf.a = f.lmf.b = lo;
      } else if (k == n - 1) {
        f.umf.c = f.umf.d = f.lmf.c = f.lmf.d = hi;
      }
    }
    const auto idx = cb.index_of(order[k]);
    if (!idx) throw Error(ErrorCode::Internal, "scale order names unknown word " + order[k]);
    cb.entries[*idx].fou = f;
  }
  return cb;
}

std::vector<Codebook> default_vocabularies() {
  std::vector<Codebook> out;
  for (const auto& d : builtin_vocabularies()) out.push_back(placeholder_codebook(d));
  return out;
}

}  // namespace fctx
