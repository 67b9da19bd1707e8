#pragma once

// Consensus encoding of member intervals into one FOU per word.

#include <map>
#include <string>
#include <vector>

#include "fctx/codebook.hpp"
#include "fctx/it2fs.hpp"

namespace fctx {

struct MemberInterval {
  std::string member_id;
  std::string word;
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const MemberInterval&, const MemberInterval&) = default;
};

struct WordSurvey {
  std::string word;
  std::vector<MemberInterval> intervals;
  Interval domain{0.0, 10.0};
  bool extension = false;

  friend bool operator==(const WordSurvey&, const WordSurvey&) = default;
};

enum class FouKind { Interior, LeftShoulder, RightShoulder };
const char* to_string(FouKind kind);

enum class RejectStage { Admissibility, Outlier, Overlap };
const char* to_string(RejectStage stage);

struct Rejection {
  MemberInterval interval;
  RejectStage stage;
  std::string reason;
};

struct EncodingReport {
  std::string word;
  std::vector<MemberInterval> accepted;
  std::vector<Rejection> rejected;
  FouKind fou_kind = FouKind::Interior;
};

/// Quartile by linear interpolation of order statistics (position p (n - 1)).
double quantile(std::vector<double> values, double p);

/// Admissibility, then Box-and-Whisker and overlap filtering repeated until
/// neither removes anything. Throws AllRejected when nothing survives.
std::vector<MemberInterval> preprocess_intervals(const WordSurvey& survey, EncodingReport& report);

FouKind classify_fou_kind(const std::vector<MemberInterval>& survivors, const Interval& domain);

/// Throws DegenerateWord when mean endpoints collapse without total agreement.
Fou build_fou(const std::vector<MemberInterval>& survivors, FouKind kind, const Interval& domain);

struct EncodedWord {
  Fou fou;
  EncodingReport report;
};

EncodedWord encode_word(const WordSurvey& survey);

/// Ordered set of word surveys that share one codebook domain.
struct SurveySet {
  std::string name;
  Interval domain{0.0, 10.0};
  CodebookKind kind = CodebookKind::Scale;
  std::vector<WordSurvey> surveys;

  const WordSurvey* find(std::string_view word) const;

  friend bool operator==(const SurveySet&, const SurveySet&) = default;
};

struct EncodedCodebook {
  Codebook codebook;
  std::vector<EncodingReport> reports;
};

/// Encodes every word listed in `words` (declaration order). Throws
/// MissingWordSurvey for a listed word without intervals.
EncodedCodebook encode_codebook(const SurveySet& surveys, const std::vector<VocabularyWord>& words);

/// Encodes every survey of the set in its own order.
EncodedCodebook encode_codebook(const SurveySet& surveys);

/// Stable content hash of a survey set, recorded as codebook provenance.
std::string survey_hash(const SurveySet& surveys);

}  // namespace fctx
