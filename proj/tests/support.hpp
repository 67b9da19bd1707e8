#pragma once

// Independent oracles and random generators shared by the unit tests and the
// acceptance binary. Nothing here calls the algorithm it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fctx/codebook.hpp"
#include "fctx/context.hpp"
#include "fctx/encoding.hpp"
#include "fctx/it2fs.hpp"
#include "fctx/reasoner.hpp"

namespace fctx::testing {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(FCTX_FIXTURE_DIR) / name; }

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// ---------------------------------------------------------------------------
// Generators

/// Random valid FOU on [lo, hi]. The lower function starts later, peaks later
/// and ends earlier than the upper one, which keeps it underneath.
inline Fou random_fou(Rng& rng, double lo = 0.0, double hi = 10.0) {
  std::array<double, 4> p{};
  for (double& x : p) x = uniform(rng, lo, hi);
  std::sort(p.begin(), p.end());
  if (p[3] - p[0] < 0.5) p[3] = std::min(hi, p[0] + 0.5 + uniform(rng, 0.0, 1.0));
  p[3] = std::max(p[3], p[2]);
  Fou f;
  f.umf = {p[0], p[1], p[2], p[3], 1.0};
  const double u = uniform(rng, 0.0, 1.0);
  const double v = uniform(rng, 0.0, 1.0);
  const double mid = 0.5 * (p[1] + p[2]);
  f.lmf.a = p[0] + u * (p[1] - p[0]);
  f.lmf.d = p[3] - u * (p[3] - p[2]);
  f.lmf.b = std::max(f.lmf.a, p[1] + v * (mid - p[1]));
  f.lmf.c = std::min(f.lmf.d, p[2] - v * (p[2] - mid));
  if (f.lmf.c < f.lmf.b) f.lmf.c = f.lmf.b = mid;
  f.lmf.h = uniform(rng, 0.2, 1.0);
  return f;
}

/// Random FOU mirror-symmetric about `center`.
inline Fou random_symmetric_fou(Rng& rng, double center) {
  const double w_out = uniform(rng, 1.0, 4.0);
  const double w_in = uniform(rng, 0.0, w_out);
  const double l_out = uniform(rng, 0.0, w_in);
  const double l_in = uniform(rng, 0.0, l_out);
  return {{center - w_out, center - w_in, center + w_in, center + w_out, 1.0},
          {center - l_out, center - l_in, center + l_in, center + l_out, uniform(rng, 0.3, 1.0)}};
}

inline WordSurvey random_survey(Rng& rng, const std::string& word, int n_min = 5, int n_max = 20) {
  WordSurvey s;
  s.word = word;
  const int n = std::uniform_int_distribution<int>(n_min, n_max)(rng);
  const double c = uniform(rng, 2.0, 8.0);
  const double half = uniform(rng, 0.5, 2.5);
  for (int i = 0; i < n; ++i) {
    const double lo = std::clamp(c - half + uniform(rng, -0.8, 0.8), 0.0, 10.0);
    const double hi = std::clamp(c + half + uniform(rng, -0.8, 0.8), 0.0, 10.0);
    s.intervals.push_back({"p" + std::to_string(i), word, std::min(lo, hi), std::max(lo, hi)});
  }
  return s;
}

inline std::string random_word(Rng& rng) {
  static const char* parts[] = {"near", "far", "very", "more or less", "quite", "close", "x", "y_z", "Adjacent"};
  std::uniform_int_distribution<int> pick(0, 8);
  return std::string(parts[pick(rng)]) + " " + std::to_string(std::uniform_int_distribution<int>(0, 9999)(rng));
}

inline Codebook random_codebook(Rng& rng) {
  Codebook cb;
  cb.name = "cb" + std::to_string(std::uniform_int_distribution<int>(0, 999)(rng));
  const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
  cb.kind = kind == 0 ? CodebookKind::Scale : kind == 1 ? CodebookKind::Threshold : CodebookKind::Categorical;
  cb.version = std::uniform_int_distribution<int>(1, 50)(rng);
  cb.provenance = "fnv1a:" + std::to_string(rng());
  const int n = std::uniform_int_distribution<int>(1, 8)(rng);
  std::set<std::string> seen;
  for (int i = 0; i < n; ++i) {
    std::string w = random_word(rng);
    if (!seen.insert(word_key(w)).second) continue;
    CodebookEntry e{w, std::nullopt, std::bernoulli_distribution(0.2)(rng)};
    if (cb.kind != CodebookKind::Categorical) e.fou = random_fou(rng);
    cb.entries.push_back(e);
  }
  return cb;
}

inline SurveySet random_surveys(Rng& rng) {
  SurveySet s;
  s.name = "survey" + std::to_string(rng() % 100);
  s.kind = std::bernoulli_distribution(0.5)(rng) ? CodebookKind::Scale : CodebookKind::Threshold;
  const int n = std::uniform_int_distribution<int>(1, 5)(rng);
  for (int i = 0; i < n; ++i) {
    WordSurvey w = random_survey(rng, "w" + std::to_string(i), 1, 6);
    w.extension = std::bernoulli_distribution(0.3)(rng);
    s.surveys.push_back(w);
  }
  return s;
}

inline RuleBase random_rulebase(Rng& rng) {
  RuleBase rb;
  rb.name = "rb" + std::to_string(rng() % 100);
  rb.partial_inputs = std::bernoulli_distribution(0.5)(rng);
  const int attrs = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < attrs; ++i) rb.attributes.push_back({"a" + std::to_string(i), "v" + std::to_string(i)});
  rb.output_variable = "out";
  rb.output_vocabulary = "vout";
  const int rules = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int r = 0; r < rules; ++r) {
    Rule rule;
    rule.id = "r" + std::to_string(r);
    for (int i = 0; i < attrs; ++i)
      if (i == 0 || std::bernoulli_distribution(0.5)(rng)) rule.antecedents.push_back({"a" + std::to_string(i), random_word(rng)});
    rule.consequent = {"vout", random_word(rng)};
    rb.rules.push_back(rule);
  }
  return rb;
}

// ---------------------------------------------------------------------------
// Oracles

/// Centroid interval by direct summation at every switch position over the
/// same uniform grid of the upper support.
inline CentroidInterval oracle_centroid(const Fou& f, int n = kDefaultGrid) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] = n == 1 ? f.umf.a : f.umf.a + (f.umf.d - f.umf.a) * i / (n - 1.0);
  std::vector<double> up;
  std::vector<double> lo;
  for (double xi : x) {
    up.push_back(f.umf(xi));
    lo.push_back(f.lmf(xi));
  }
  double c_l = std::numeric_limits<double>::infinity();
  double c_r = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    double nl = 0.0, dl = 0.0, nr = 0.0, dr = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(i);
      const double wl = i < k ? up[j] : lo[j];
      const double wr = i < k ? lo[j] : up[j];
      nl += x[j] * wl;
      dl += wl;
      nr += x[j] * wr;
      dr += wr;
    }
    if (dl > 0.0) c_l = std::min(c_l, nl / dl);
    if (dr > 0.0) c_r = std::max(c_r, nr / dr);
  }
  return {c_l, c_r};
}

/// Jaccard similarity as grid sums over the union of supports.
inline double oracle_jaccard(const Fou& a, const Fou& b, int n = kDefaultGrid) {
  const double lo = std::min(a.umf.a, b.umf.a);
  const double hi = std::max(a.umf.d, b.umf.d);
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0);
    num += std::min(a.umf(x), b.umf(x)) + std::min(a.lmf(x), b.lmf(x));
    den += std::max(a.umf(x), b.umf(x)) + std::max(a.lmf(x), b.lmf(x));
  }
  return num / den;
}

/// Relation of [s1, e1] to [s2, e2] straight from the thirteen endpoint
/// patterns.
inline AllenRelation oracle_allen(double s1, double e1, double s2, double e2) {
  struct Case {
    AllenRelation rel;
    bool holds;
  };
  const Case cases[] = {
      {AllenRelation::Before, e1 < s2},
      {AllenRelation::Meets, e1 == s2},
      {AllenRelation::Overlaps, s1 < s2 && s2 < e1 && e1 < e2},
      {AllenRelation::Starts, s1 == s2 && e1 < e2},
      {AllenRelation::During, s2 < s1 && e1 < e2},
      {AllenRelation::Finishes, s2 < s1 && e1 == e2},
      {AllenRelation::Equals, s1 == s2 && e1 == e2},
      {AllenRelation::After, s1 > e2},
      {AllenRelation::MetBy, s1 == e2},
      {AllenRelation::OverlappedBy, s2 < s1 && s1 < e2 && e2 < e1},
      {AllenRelation::StartedBy, s1 == s2 && e1 > e2},
      {AllenRelation::Contains, s1 < s2 && e2 < e1},
      {AllenRelation::FinishedBy, s1 < s2 && e1 == e2},
  };
  int hits = 0;
  AllenRelation found = AllenRelation::Before;
  for (const auto& c : cases) {
    if (c.holds) {
      ++hits;
      found = c.rel;
    }
  }
  if (hits != 1) throw std::logic_error("endpoint patterns are not exclusive");
  return found;
}

/// Fuzzy Allen degrees with `samples` points per endpoint cut, classified by
/// the definitional oracle.
inline std::array<double, kAllenRelationCount> oracle_allen_degrees(const FuzzyTimeInterval& i1,
                                                                    const FuzzyTimeInterval& i2, int samples) {
  auto cut = [](const Trapezoid& t, double alpha) {
    const double y = alpha * t.h;
    return std::pair{t.a + (t.b - t.a) * y / t.h, t.d - (t.d - t.c) * y / t.h};
  };
  auto pts = [samples](std::pair<double, double> c) {
    std::vector<double> v;
    for (int i = 0; i < samples; ++i)
      v.push_back(samples == 1 || c.first == c.second ? c.first : c.first + (c.second - c.first) * i / (samples - 1.0));
    if (c.first == c.second) v.resize(1);
    return v;
  };
  std::array<double, kAllenRelationCount> deg{};
  double wsum = 0.0;
  for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
    const auto a = pts(cut(i1.start, alpha));
    const auto b = pts(cut(i1.end, alpha));
    const auto c = pts(cut(i2.start, alpha));
    const auto d = pts(cut(i2.end, alpha));
    std::array<double, kAllenRelationCount> count{};
    for (double s1 : a)
      for (double e1 : b)
        for (double s2 : c)
          for (double e2 : d) count[static_cast<std::size_t>(oracle_allen(s1, e1, s2, e2))] += 1.0;
    const double total = static_cast<double>(a.size() * b.size() * c.size() * d.size());
    for (std::size_t k = 0; k < kAllenRelationCount; ++k) deg[k] += alpha * count[k] / total;
    wsum += alpha;
  }
  for (double& x : deg) x /= wsum;
  return deg;
}

/// Monte-Carlo hull of Σ wᵢ yᵢ / Σ wᵢ for weights in `w` and values in the
/// per-rule intervals `y`. Half the draws snap each coordinate to an end of
/// its interval so the extreme vertices are reached.
struct Hull {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double below = 0.0;  // worst violation under `bound.lo`
  double above = 0.0;  // worst violation over `bound.hi`
};

inline Hull monte_carlo_hull(Rng& rng, const std::vector<Interval>& w, const std::vector<Interval>& y, int draws,
                             const Interval& bound) {
  Hull h;
  std::bernoulli_distribution snap(0.5);
  std::bernoulli_distribution side(0.5);
  for (int k = 0; k < draws; ++k) {
    const bool vertex = snap(rng);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double wi = vertex ? (side(rng) ? w[i].lo : w[i].hi) : uniform(rng, w[i].lo, w[i].hi);
      const double yi = vertex ? (side(rng) ? y[i].lo : y[i].hi) : uniform(rng, y[i].lo, y[i].hi);
      num += wi * yi;
      den += wi;
    }
    if (!(den > 0.0)) continue;
    const double v = num / den;
    h.lo = std::min(h.lo, v);
    h.hi = std::max(h.hi, v);
    h.below = std::max(h.below, bound.lo - v);
    h.above = std::max(h.above, v - bound.hi);
  }
  return h;
}

}  // namespace fctx::testing
