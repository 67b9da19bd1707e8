#include "fctx/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "fctx/error.hpp"

namespace fctx {

const char* to_string(FouKind kind) {
  switch (kind) {
    case FouKind::Interior: return "interior";
    case FouKind::LeftShoulder: return "left-shoulder";
    case FouKind::RightShoulder: return "right-shoulder";
  }
  return "interior";
}

const char* to_string(RejectStage stage) {
  switch (stage) {
    case RejectStage::Admissibility: return "admissibility";
    case RejectStage::Outlier: return "outlier";
    case RejectStage::Overlap: return "overlap";
  }
  return "admissibility";
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

namespace {

// Order-independent mean, exact for constant samples and kept inside the
// sample range.
double stable_mean(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  if (v.front() == v.back()) return v.front();
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  return std::clamp(sum / static_cast<double>(v.size()), v.front(), v.back());
}

std::vector<double> los(const std::vector<MemberInterval>& xs) {
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(x.lo);
  return out;
}

std::vector<double> his(const std::vector<MemberInterval>& xs) {
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(x.hi);
  return out;
}

struct Fence {
  double lo, hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

Fence whisker_fence(const std::vector<double>& v) {
  const double q1 = quantile(v, 0.25);
  const double q3 = quantile(v, 0.75);
  const double iqr = q3 - q1;
  return {q1 - 1.5 * iqr, q3 + 1.5 * iqr};
}

bool overlaps(const MemberInterval& x, const MemberInterval& y) { return x.lo < y.hi && y.lo < x.hi; }

// One pass of outlier and overlap filtering; returns true if anything was removed.
bool filter_pass(std::vector<MemberInterval>& live, EncodingReport& report) {
  bool removed = false;
  {
    std::vector<double> lengths;
    for (const auto& x : live) lengths.push_back(x.hi - x.lo);
    const Fence flo = whisker_fence(los(live));
    const Fence fhi = whisker_fence(his(live));
    const Fence flen = whisker_fence(lengths);
    std::vector<MemberInterval> keep;
    for (const auto& x : live) {
      std::string why;
      if (!flo.contains(x.lo)) why = "lo outside whisker fence";
      else if (!fhi.contains(x.hi)) why = "hi outside whisker fence";
      else if (!flen.contains(x.hi - x.lo)) why = "length outside whisker fence";
      if (why.empty()) {
        keep.push_back(x);
      } else {
        report.rejected.push_back({x, RejectStage::Outlier, why});
        removed = true;
      }
    }
    live = std::move(keep);
  }
  if (live.empty()) return removed;
  {
    const std::size_t others = live.size() - 1;
    std::vector<MemberInterval> keep;
    for (std::size_t i = 0; i < live.size(); ++i) {
      std::size_t count = 0;
      for (std::size_t j = 0; j < live.size(); ++j) {
        if (i != j && overlaps(live[i], live[j])) ++count;
      }
      if (2 * count < others) {
        report.rejected.push_back({live[i], RejectStage::Overlap, "overlaps fewer than half of the other intervals"});
        removed = true;
      } else {
        keep.push_back(live[i]);
      }
    }
    live = std::move(keep);
  }
  return removed;
}

}  // namespace

std::vector<MemberInterval> preprocess_intervals(const WordSurvey& survey, EncodingReport& report) {
  report.word = survey.word;
  std::vector<MemberInterval> live;
  for (const auto& x : survey.intervals) {
    std::string why;
    if (!std::isfinite(x.lo) || !std::isfinite(x.hi)) why = "non-finite endpoint";
    else if (x.lo >= x.hi) why = "lo must be below hi";
    else if (x.lo < survey.domain.lo || x.hi > survey.domain.hi) why = "endpoint outside domain";
    if (why.empty()) live.push_back(x);
    else report.rejected.push_back({x, RejectStage::Admissibility, why});
  }
  while (!live.empty() && filter_pass(live, report)) {
  }
  if (live.empty()) throw Error(ErrorCode::AllRejected, "no interval survived preprocessing for '" + survey.word + "'");
  report.accepted = live;
  return live;
}

FouKind classify_fou_kind(const std::vector<MemberInterval>& survivors, const Interval& domain) {
  if (survivors.empty()) throw Error(ErrorCode::InvalidArgument, "no survivors to classify");
  const double m_lo = stable_mean(los(survivors));
  const double m_hi = stable_mean(his(survivors));
  const double range = domain.hi - domain.lo;
  const bool left = m_lo <= domain.lo + 0.1 * range;
  const bool right = m_hi >= domain.hi - 0.1 * range;
  if (left && right) return (m_lo - domain.lo <= domain.hi - m_hi) ? FouKind::LeftShoulder : FouKind::RightShoulder;
  if (left) return FouKind::LeftShoulder;
  if (right) return FouKind::RightShoulder;
  return FouKind::Interior;
}

Fou build_fou(const std::vector<MemberInterval>& survivors, FouKind kind, const Interval& domain) {
  if (survivors.empty()) throw Error(ErrorCode::InvalidArgument, "no survivors to encode");
  const auto lo = los(survivors);
  const auto hi = his(survivors);
  const double m_lo = stable_mean(lo);
  const double m_hi = stable_mean(hi);
  const double n_lo = *std::min_element(lo.begin(), lo.end());
  const double x_hi = *std::max_element(hi.begin(), hi.end());
  const double o_l = *std::max_element(lo.begin(), lo.end());
  const double o_r = *std::min_element(hi.begin(), hi.end());
  const bool identical = n_lo == o_l && o_r == x_hi;

  if (m_hi - m_lo < 1e-9 && !identical) throw Error(ErrorCode::DegenerateWord, "mean endpoints collapse");

  Fou f;
  f.umf = {n_lo, m_lo, m_hi, x_hi, 1.0};
  if (o_l <= o_r) {
    const double h = identical ? 1.0 : std::clamp((o_r - o_l) / (m_hi - m_lo), 0.1, 1.0);
    f.lmf = {m_lo, o_l, o_r, m_hi, h};
  } else {
    const double m = std::clamp(0.5 * (o_l + o_r), m_lo, m_hi);
    const auto holders = std::count_if(survivors.begin(), survivors.end(),
                                       [m](const MemberInterval& x) { return x.lo <= m && m <= x.hi; });
    const double h = std::max(0.1, static_cast<double>(holders) / static_cast<double>(survivors.size()));
    f.lmf = {m_lo, m, m, m_hi, h};
  }

  if (kind == FouKind::LeftShoulder) {
    f.umf.a = f.umf.b = f.lmf.a = f.lmf.b = domain.lo;
  } else if (kind == FouKind::RightShoulder) {
    f.umf.c = f.umf.d = f.lmf.c = f.lmf.d = domain.hi;
  }
  f.lmf = clip_under(f.lmf, f.umf);

  const auto issues = fou_validate(f);
  if (!issues.empty()) throw Error(ErrorCode::Internal, "encoder produced an invalid FOU: " + issues.front());
  return f;
}

EncodedWord encode_word(const WordSurvey& survey) {
  EncodedWord out;
  const auto survivors = preprocess_intervals(survey, out.report);
  out.report.fou_kind = classify_fou_kind(survivors, survey.domain);
  out.fou = build_fou(survivors, out.report.fou_kind, survey.domain);
  return out;
}

const WordSurvey* SurveySet::find(std::string_view word) const {
  const std::string key = word_key(word);
  for (const auto& s : surveys) {
    if (word_key(s.word) == key) return &s;
  }
  return nullptr;
}

EncodedCodebook encode_codebook(const SurveySet& surveys, const std::vector<VocabularyWord>& words) {
  if (words.empty()) throw Error(ErrorCode::MissingWordSurvey, "no words to encode");
  EncodedCodebook out;
  out.codebook.name = surveys.name;
  out.codebook.domain = surveys.domain;
  out.codebook.kind = surveys.kind == CodebookKind::Categorical ? CodebookKind::Scale : surveys.kind;
  out.codebook.provenance = survey_hash(surveys);
  for (const auto& w : words) {
    const WordSurvey* s = surveys.find(w.word);
    if (s == nullptr || s->intervals.empty()) throw Error(ErrorCode::MissingWordSurvey, w.word);
    WordSurvey scoped = *s;
    scoped.domain = surveys.domain;
    auto encoded = encode_word(scoped);
    out.codebook.entries.push_back({w.word, encoded.fou, w.extension});
    out.reports.push_back(std::move(encoded.report));
  }
  return out;
}

EncodedCodebook encode_codebook(const SurveySet& surveys) {
  std::vector<VocabularyWord> words;
  for (const auto& s : surveys.surveys) words.push_back({s.word, s.extension});
  return encode_codebook(surveys, words);
}

std::string survey_hash(const SurveySet& surveys) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view text) {
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  auto num = [&mix](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    mix(buf);
  };
  mix(surveys.name);
  num(surveys.domain.lo);
  num(surveys.domain.hi);
  for (const auto& s : surveys.surveys) {
    mix(s.word);
    for (const auto& x : s.intervals) {
      mix(x.member_id);
      num(x.lo);
      num(x.hi);
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fctx
