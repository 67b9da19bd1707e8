#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fctx/it2fs.hpp"

namespace fctx {

/// How words of a codebook relate to each other.
///  - Scale: every word is an FOU on one shared axis; word inputs match by
///    sup-min overlap.
///  - Threshold: every word carries an FOU on its own axis; word inputs match
///    by name only.
///  - Categorical: no FOUs; entries only fix declaration order.
enum class CodebookKind { Scale, Threshold, Categorical };

const char* to_string(CodebookKind kind);
std::optional<CodebookKind> parse_codebook_kind(std::string_view text);

struct CodebookEntry {
  std::string word;
  std::optional<Fou> fou;
  bool extension = false;

  friend bool operator==(const CodebookEntry&, const CodebookEntry&) = default;
};

/// Case-, underscore- and whitespace-insensitive lookup key for words.
std::string word_key(std::string_view word);

struct Codebook {
  std::string name;
  Interval domain{0.0, 10.0};
  CodebookKind kind = CodebookKind::Scale;
  std::vector<CodebookEntry> entries;
  std::int64_t version = 1;
  std::string provenance = "builtin";

  const CodebookEntry* find(std::string_view word) const;
  std::optional<std::size_t> index_of(std::string_view word) const;
  /// Throws UnknownWord when the word is absent or has no FOU.
  const Fou& fou(std::string_view word) const;
  bool empty() const noexcept { return entries.empty(); }

  friend bool operator==(const Codebook&, const Codebook&) = default;
};

/// Words must be unique and FOUs valid; only categorical codebooks may omit
/// FOUs. Empty result means valid.
std::vector<std::string> codebook_validate(const Codebook& cb);

namespace vocab {
inline constexpr const char* kSpatial = "spatial";
inline constexpr const char* kTemporal = "temporal";
inline constexpr const char* kNeeds = "needs";
inline constexpr const char* kImportance = "importance";
inline constexpr const char* kRanking = "ranking";
inline constexpr const char* kMobility = "mobility";
inline constexpr const char* kVehicle = "vehicle";
}  // namespace vocab

struct VocabularyWord {
  std::string word;
  bool extension = false;
};

struct VocabularyDef {
  std::string name;
  CodebookKind kind = CodebookKind::Scale;
  Interval domain{0.0, 10.0};
  std::vector<VocabularyWord> words;   // declaration order
  std::vector<std::string> scale_order;  // placement order for placeholder FOUs
};

const std::vector<VocabularyDef>& builtin_vocabularies();
const VocabularyDef* find_vocabulary(std::string_view name);

/// Placeholder codebook: evenly spaced interior trapezoids along the scale
/// order with shoulders at both ends. Categorical vocabularies get entries
/// without FOUs.
Codebook placeholder_codebook(const VocabularyDef& def);

std::vector<Codebook> default_vocabularies();

}  // namespace fctx
