#include "fctx/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fctx/error.hpp"
#include "fctx/json_io.hpp"

namespace fctx {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

std::string codebook_to_json(const Codebook& cb) { return json_io::to_json(cb).dump(2) + "\n"; }

Codebook codebook_from_json(std::string_view text, std::string_view source) {
  const json_io::Reader reader(source);
  Codebook cb = json_io::codebook_from(json_io::parse(text, source), reader);
  const auto issues = codebook_validate(cb);
  if (!issues.empty()) throw Error(ErrorCode::Validation, std::string(source) + ": " + issues.front());
  return cb;
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) { write_text_file(path, codebook_to_json(cb)); }

Codebook load_codebook(const std::filesystem::path& path) {
  return codebook_from_json(read_text_file(path), path.string());
}

std::string surveys_to_json(const SurveySet& s) { return json_io::to_json(s).dump(2) + "\n"; }

SurveySet surveys_from_json(std::string_view text, std::string_view source) {
  const json_io::Reader reader(source);
  return json_io::surveys_from(json_io::parse(text, source), reader);
}

void save_surveys(const SurveySet& s, const std::filesystem::path& path) { write_text_file(path, surveys_to_json(s)); }

SurveySet load_surveys(const std::filesystem::path& path) {
  return surveys_from_json(read_text_file(path), path.string());
}

std::string rulebase_to_json(const RuleBase& rb) { return json_io::to_json(rb).dump(2) + "\n"; }

RuleBase rulebase_from_json(std::string_view text, std::string_view source) {
  const json_io::Reader reader(source);
  return json_io::rulebase_from(json_io::parse(text, source), reader);
}

void save_rulebase(const RuleBase& rb, const std::filesystem::path& path) { write_text_file(path, rulebase_to_json(rb)); }

RuleBase load_rulebase(const std::filesystem::path& path) {
  return rulebase_from_json(read_text_file(path), path.string());
}

CodebookStore::CodebookStore(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::optional<Codebook> CodebookStore::get(std::string_view name) const {
  std::shared_lock lock(mutex_);
  const auto it = books_.find(name);
  if (it == books_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> CodebookStore::names() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, cb] : books_) out.push_back(name);
  return out;
}

std::mutex& CodebookStore::writer_for(const std::string& name) {
  std::lock_guard lock(writers_mutex_);
  auto& slot = writers_[name];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::int64_t CodebookStore::put(Codebook cb) {
  const auto issues = codebook_validate(cb);
  if (!issues.empty()) throw Error(ErrorCode::Validation, cb.name + ": " + issues.front());
  std::lock_guard writer(writer_for(cb.name));
  {
    std::shared_lock lock(mutex_);
    const auto it = books_.find(cb.name);
    if (it != books_.end()) cb.version = it->second.version + 1;
    else if (cb.version < 1) cb.version = 1;
  }
  if (!directory_.empty()) save_codebook(cb, directory_ / (cb.name + std::string(kCodebookSuffix)));
  const std::int64_t version = cb.version;
  std::unique_lock lock(mutex_);
  books_.insert_or_assign(cb.name, std::move(cb));
  return version;
}

Codebook CodebookStore::rebuild(const SurveySet& surveys, const std::vector<VocabularyWord>& words) {
  Codebook cb = encode_codebook(surveys, words).codebook;
  cb.version = put(cb);
  return cb;
}

void CodebookStore::load_directory() {
  if (directory_.empty()) return;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > kCodebookSuffix.size() && name.ends_with(kCodebookSuffix)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::unique_lock lock(mutex_);
  for (const auto& f : files) {
    Codebook cb = load_codebook(f);
    books_.insert_or_assign(cb.name, std::move(cb));
  }
}

}  // namespace fctx
