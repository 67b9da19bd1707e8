#include "fctx/context.hpp"

#include <algorithm>
#include <cmath>

#include "fctx/error.hpp"
#include "fctx/rulebases.hpp"

namespace fctx {

double distance(const GeoPoint& p, const GeoPoint& q) noexcept { return std::hypot(p.x - q.x, p.y - q.y); }

GeoPoint centroid(std::span<const GeoPoint> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "centroid of no points");
  GeoPoint c;
  for (const auto& p : points) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(points.size());
  c.y /= static_cast<double>(points.size());
  return c;
}

SingletonInput spatial_proximity_input(double distance_m, double max_distance_m) {
  if (!(max_distance_m > 0.0)) throw Error(ErrorCode::NonPositiveMax, "max distance must be positive");
  if (!(distance_m >= 0.0)) throw Error(ErrorCode::InvalidArgument, "distance must be non-negative");
  return {10.0 * std::min(distance_m, max_distance_m) / max_distance_m};
}

const std::array<AllenRelation, kAllenRelationCount>& all_allen_relations() {
  static constexpr std::array<AllenRelation, kAllenRelationCount> all = {
      AllenRelation::Before,       AllenRelation::Meets,     AllenRelation::Overlaps, AllenRelation::Starts,
      AllenRelation::During,       AllenRelation::Finishes,  AllenRelation::Equals,   AllenRelation::After,
      AllenRelation::MetBy,        AllenRelation::OverlappedBy, AllenRelation::StartedBy, AllenRelation::Contains,
      AllenRelation::FinishedBy,
  };
  return all;
}

const char* to_string(AllenRelation rel) {
  switch (rel) {
    case AllenRelation::Before: return "Before";
    case AllenRelation::Meets: return "Meets";
    case AllenRelation::Overlaps: return "Overlaps";
    case AllenRelation::Starts: return "Starts";
    case AllenRelation::During: return "During";
    case AllenRelation::Finishes: return "Finishes";
    case AllenRelation::Equals: return "Equals";
    case AllenRelation::After: return "After";
    case AllenRelation::MetBy: return "MetBy";
    case AllenRelation::OverlappedBy: return "OverlappedBy";
    case AllenRelation::StartedBy: return "StartedBy";
    case AllenRelation::Contains: return "Contains";
    case AllenRelation::FinishedBy: return "FinishedBy";
  }
  return "Before";
}

namespace {

AllenRelation classify_unchecked(double s1, double e1, double s2, double e2) {
  if (e1 < s2) return AllenRelation::Before;
  if (e1 == s2) return AllenRelation::Meets;
  if (s1 > e2) return AllenRelation::After;
  if (s1 == e2) return AllenRelation::MetBy;
  if (s1 == s2) {
    if (e1 == e2) return AllenRelation::Equals;
    return e1 < e2 ? AllenRelation::Starts : AllenRelation::StartedBy;
  }
  if (e1 == e2) return s1 > s2 ? AllenRelation::Finishes : AllenRelation::FinishedBy;
  if (s1 > s2) return e1 < e2 ? AllenRelation::During : AllenRelation::OverlappedBy;
  return e1 > e2 ? AllenRelation::Contains : AllenRelation::Overlaps;
}

}  // namespace

AllenRelation allen_classify(const Interval& i1, const Interval& i2) {
  if (!(i1.lo < i1.hi) || !(i2.lo < i2.hi)) throw Error(ErrorCode::DegenerateInterval, "interval needs start < end");
  return classify_unchecked(i1.lo, i1.hi, i2.lo, i2.hi);
}

AllenDegrees allen_fuzzy_degrees(const FuzzyTimeInterval& i1, const FuzzyTimeInterval& i2, int samples_per_cut) {
  if (samples_per_cut < 1) throw Error(ErrorCode::InvalidArgument, "samples_per_cut must be positive");
  constexpr std::array<double, 4> alphas = {0.25, 0.5, 0.75, 1.0};
  AllenDegrees degrees{};
  double alpha_sum = 0.0;
  for (double alpha : alphas) {
    const Interval s1 = alpha_cut(i1.start, alpha * i1.start.h);
    const Interval e1 = alpha_cut(i1.end, alpha * i1.end.h);
    const Interval s2 = alpha_cut(i2.start, alpha * i2.start.h);
    const Interval e2 = alpha_cut(i2.end, alpha * i2.end.h);
    if (s1.hi >= e1.lo || s2.hi >= e2.lo)
      throw Error(ErrorCode::DegenerateInterval, "alpha-cut of a start reaches its end");
    const auto xs1 = linspace(s1.lo, s1.hi, samples_per_cut);
    const auto xe1 = linspace(e1.lo, e1.hi, samples_per_cut);
    const auto xs2 = linspace(s2.lo, s2.hi, samples_per_cut);
    const auto xe2 = linspace(e2.lo, e2.hi, samples_per_cut);
    std::array<std::size_t, kAllenRelationCount> counts{};
    for (double a : xs1)
      for (double b : xe1)
        for (double c : xs2)
          for (double d : xe2) ++counts[static_cast<std::size_t>(classify_unchecked(a, b, c, d))];
    const double total = static_cast<double>(xs1.size() * xe1.size() * xs2.size() * xe2.size());
    for (std::size_t k = 0; k < kAllenRelationCount; ++k) degrees[k] += alpha * static_cast<double>(counts[k]) / total;
    alpha_sum += alpha;
  }
  for (double& d : degrees) d /= alpha_sum;
  return degrees;
}

DegreeInput to_degree_input(const AllenDegrees& degrees) {
  DegreeInput out;
  for (std::size_t k = 0; k < kAllenRelationCount; ++k) {
    const double d = std::clamp(degrees[k], 0.0, 1.0);
    out.degrees.emplace_back(to_string(all_allen_relations()[k]), Interval{d, d});
  }
  return out;
}

double NeedState::relationship_regression() const noexcept {
  return frustration_g >= threshold ? std::min(1.0, frustration_g / scale) : 0.0;
}

double NeedState::existence_focus() const noexcept {
  return frustration_r >= threshold ? std::min(1.0, frustration_r / scale) : 0.0;
}

NeedState frustration_regression_step(NeedState state, NeedLevel frustrated) {
  switch (frustrated) {
    case NeedLevel::Relatedness: ++state.frustration_r; break;
    case NeedLevel::Growth: ++state.frustration_g; break;
    case NeedLevel::Existence:
      throw Error(ErrorCode::InvalidArgument, "existence has no lower level to regress to");
  }
  return state;
}

NeedState fulfil(NeedState state, NeedLevel level) {
  switch (level) {
    case NeedLevel::Existence: state.e = 1.0; break;
    case NeedLevel::Relatedness:
      state.r = 1.0;
      state.frustration_r = 0;
      break;
    case NeedLevel::Growth:
      state.g = 1.0;
      state.frustration_g = 0;
      break;
  }
  return state;
}

DegreeInput erg_need_degrees(const NeedState& state, const Codebook& needs_codebook) {
  const double span = needs_codebook.domain.hi - needs_codebook.domain.lo;
  auto at = [&](const char* word, double fulfilment) {
    const double x = needs_codebook.domain.lo + std::clamp(fulfilment, 0.0, 1.0) * span;
    return fou_membership(needs_codebook.fou(word), x);
  };
  const double down = state.relationship_regression();
  DegreeInput out;
  out.degrees = {
      {needs::kExistenceUpward, at(needs::kExistenceUpward, state.e)},
      {needs::kRelationshipUpward, at(needs::kRelationshipUpward, state.r)},
      {needs::kRelationshipDownward, {down, down}},
      {needs::kGrowthDownward, at(needs::kGrowthDownward, state.g)},
  };
  return out;
}

VehicleInference infer_vehicle_type(double speed_kmh, const Codebook& mobility, const Codebook& vehicle) {
  if (!std::isfinite(speed_kmh) || speed_kmh < 0.0)
    throw Error(ErrorCode::InvalidArgument, "speed must be finite and non-negative");
  const RuleBase rb = mobility_rulebase();
  CodebookSet books;
  books.emplace(vocab::kMobility, mobility);
  books.emplace(vocab::kVehicle, vehicle);
  const double span = mobility.domain.hi - mobility.domain.lo;
  const double x = mobility.domain.lo + span * std::min(speed_kmh, kMaxSpeedKmh) / kMaxSpeedKmh;
  Inputs inputs;
  inputs.emplace(attr::kMobilitySpeed, SingletonInput{x});
  VehicleInference out;
  out.trace = reason(inputs, rb, books);
  out.vehicle = out.trace.decoded();
  return out;
}

}  // namespace fctx
