#pragma once

// Context attributes fed to the reasoner. Time is compared through fuzzy
// Allen relations; needs follow ERG frustration-regression.

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fctx/codebook.hpp"
#include "fctx/it2fs.hpp"
#include "fctx/reasoner.hpp"

namespace fctx {

/// Planar scenario-local coordinates in meters.
struct GeoPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

double distance(const GeoPoint& p, const GeoPoint& q) noexcept;
/// Throws InvalidArgument for an empty set.
GeoPoint centroid(std::span<const GeoPoint> points);

/// Maps a distance onto the [0, 10] spatial scale, clamped at max_distance_m.
SingletonInput spatial_proximity_input(double distance_m, double max_distance_m);

// ---------------------------------------------------------------------------
// Temporal

enum class AllenRelation {
  Before,
  Meets,
  Overlaps,
  Starts,
  During,
  Finishes,
  Equals,
  After,
  MetBy,
  OverlappedBy,
  StartedBy,
  Contains,
  FinishedBy,
};

inline constexpr std::size_t kAllenRelationCount = 13;
const std::array<AllenRelation, kAllenRelationCount>& all_allen_relations();
const char* to_string(AllenRelation rel);

/// Relation of i1 relative to i2. Throws DegenerateInterval unless lo < hi
/// for both.
AllenRelation allen_classify(const Interval& i1, const Interval& i2);

/// Interval whose start and end are fuzzy numbers over a timeline in minutes.
struct FuzzyTimeInterval {
  Trapezoid start;
  Trapezoid end;

  static FuzzyTimeInterval crisp(double s, double e) { return {{s, s, s, s, 1.0}, {e, e, e, e, 1.0}}; }

  friend bool operator==(const FuzzyTimeInterval&, const FuzzyTimeInterval&) = default;
};

inline constexpr int kDefaultSamplesPerCut = 21;

using AllenDegrees = std::array<double, kAllenRelationCount>;

/// α-weighted fraction of sampled endpoint combinations per relation, over
/// α in {0.25, 0.5, 0.75, 1}. Indexed like all_allen_relations().
AllenDegrees allen_fuzzy_degrees(const FuzzyTimeInterval& i1, const FuzzyTimeInterval& i2,
                                 int samples_per_cut = kDefaultSamplesPerCut);

DegreeInput to_degree_input(const AllenDegrees& degrees);

// ---------------------------------------------------------------------------
// Needs

enum class NeedLevel { Existence, Relatedness, Growth };

namespace needs {
inline constexpr const char* kExistenceUpward = "Existence_upward_fulfill";
inline constexpr const char* kRelationshipUpward = "Relationship_upward_fulfill";
inline constexpr const char* kRelationshipDownward = "Relationship_downward_fulfill";
inline constexpr const char* kGrowthDownward = "Growth_downward_fulfill";
}  // namespace needs

struct NeedState {
  double e = 0.0;  // fulfilment degrees in [0, 1]
  double r = 0.0;
  double g = 0.0;
  int frustration_r = 0;
  int frustration_g = 0;
  int threshold = 3;   // frustrations before regression activates
  double scale = 5.0;  // regression degree = min(1, counter / scale)

  /// Relationship_downward_fulfill degree, driven by Growth frustration.
  double relationship_regression() const noexcept;
  /// Existence focus, driven by Relatedness frustration.
  double existence_focus() const noexcept;

  friend bool operator==(const NeedState&, const NeedState&) = default;
};

/// Throws InvalidArgument for Existence (no higher level regresses into it).
NeedState frustration_regression_step(NeedState state, NeedLevel frustrated);
/// Marks a level fulfilled: degree 1 and the level's frustration counter reset.
NeedState fulfil(NeedState state, NeedLevel level);

DegreeInput erg_need_degrees(const NeedState& state, const Codebook& needs_codebook);

// ---------------------------------------------------------------------------
// Mobility

inline constexpr double kMaxSpeedKmh = 50.0;

struct VehicleInference {
  std::string vehicle;
  ReasoningTrace trace;
};

/// Speed mapped onto [0, 10] (0-50 km/h) and reasoned with the builtin
/// mobility rules.
VehicleInference infer_vehicle_type(double speed_kmh, const Codebook& mobility, const Codebook& vehicle);

}  // namespace fctx
