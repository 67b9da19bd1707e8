#pragma once

// JSON persistence of the domain documents and a versioned codebook store.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "fctx/codebook.hpp"
#include "fctx/encoding.hpp"
#include "fctx/reasoner.hpp"

namespace fctx {

inline constexpr std::string_view kCodebookSuffix = ".codebook.json";
inline constexpr std::string_view kSurveySuffix = ".survey.json";
inline constexpr std::string_view kRulesSuffix = ".rules.json";

std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(std::string_view text, std::string_view source = "<memory>");
void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

std::string surveys_to_json(const SurveySet& s);
SurveySet surveys_from_json(std::string_view text, std::string_view source = "<memory>");
void save_surveys(const SurveySet& s, const std::filesystem::path& path);
SurveySet load_surveys(const std::filesystem::path& path);

std::string rulebase_to_json(const RuleBase& rb);
RuleBase rulebase_from_json(std::string_view text, std::string_view source = "<memory>");
void save_rulebase(const RuleBase& rb, const std::filesystem::path& path);
RuleBase load_rulebase(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Named codebooks with monotone versions. Reads may run concurrently; writes
/// to one name are serialized. With a directory, every write is persisted as
/// <name>.codebook.json.
class CodebookStore {
 public:
  CodebookStore() = default;
  explicit CodebookStore(std::filesystem::path directory);

  std::optional<Codebook> get(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Stores cb; an existing name gets version previous + 1. Returns the
  /// stored version.
  std::int64_t put(Codebook cb);

  /// Re-encodes the named codebook from surveys and stores it.
  Codebook rebuild(const SurveySet& surveys, const std::vector<VocabularyWord>& words);

  /// Loads every *.codebook.json from the directory.
  void load_directory();

 private:
  std::mutex& writer_for(const std::string& name);

  std::filesystem::path directory_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, Codebook, std::less<>> books_;
  std::mutex writers_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> writers_;
};

}  // namespace fctx
