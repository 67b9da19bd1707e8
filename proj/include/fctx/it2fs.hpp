#pragma once

// Interval type-2 fuzzy set primitives over trapezoidal membership functions.

#include <string>
#include <vector>

namespace fctx {

inline constexpr int kDefaultGrid = 201;

/// Trapezoidal membership function with support [a,d], plateau [b,c] at
/// height h. Degenerate shapes (a == b, c == d, or a == d) are allowed.
struct Trapezoid {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double h = 1.0;

  double operator()(double x) const noexcept;

  bool ordered() const noexcept { return a <= b && b <= c && c <= d; }
  Trapezoid shifted(double delta) const noexcept { return {a + delta, b + delta, c + delta, d + delta, h}; }

  friend bool operator==(const Trapezoid&, const Trapezoid&) = default;
};

double trapezoid_membership(const Trapezoid& t, double x) noexcept;

/// Closed interval of scalars; used for membership intervals, α-cuts and
/// firing strengths.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// α-cut of a trapezoid. Requires 0 <= alpha <= t.h; alpha == 0 yields the
/// closed support.
Interval alpha_cut(const Trapezoid& t, double alpha) noexcept;

/// Exact sup_x min(p(x), q(x)) of two trapezoids.
double sup_min(const Trapezoid& p, const Trapezoid& q) noexcept;

/// Interval type-2 fuzzy set, identified by its footprint of uncertainty.
struct Fou {
  Trapezoid umf;
  Trapezoid lmf;

  static Fou type1(const Trapezoid& t) { return {t, t}; }

  Fou shifted(double delta) const noexcept { return {umf.shifted(delta), lmf.shifted(delta)}; }

  friend bool operator==(const Fou&, const Fou&) = default;
};

/// Violated invariants in human-readable form; empty means valid.
std::vector<std::string> fou_validate(const Fou& f, int grid_n = kDefaultGrid);
inline bool fou_is_valid(const Fou& f, int grid_n = kDefaultGrid) { return fou_validate(f, grid_n).empty(); }

Interval fou_membership(const Fou& f, double x) noexcept;

struct CentroidInterval {
  double c_l = 0.0;
  double c_r = 0.0;

  double center() const noexcept { return 0.5 * (c_l + c_r); }
};

/// Centroid type-reduction by exhaustive switch-point scan over grid_n uniform
/// samples of the upper support. Throws AllZeroMembership when every switch
/// point has a zero denominator.
CentroidInterval km_centroid(const Fou& f, int grid_n = kDefaultGrid);

/// Same quantity via the iterative Karnik-Mendel procedure.
CentroidInterval km_centroid_iterative(const Fou& f, int grid_n = kDefaultGrid);

double centroid_center(const Fou& f);

/// Jaccard similarity on grid_n samples spanning the union of both supports.
/// Throws BothEmpty when the union carries no membership.
double jaccard_similarity(const Fou& fa, const Fou& fb, int grid_n = kDefaultGrid);

/// Uniformly spaced samples in [lo, hi], endpoints included. A degenerate
/// range yields a single sample.
std::vector<double> linspace(double lo, double hi, int n);

/// Pointwise min(lower, upper) refit as a trapezoid through its α = 0 cut and
/// its top cut. Returns lower unchanged when it already lies under upper.
Trapezoid clip_under(const Trapezoid& lower, const Trapezoid& upper);

}  // namespace fctx
