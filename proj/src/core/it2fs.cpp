#include "fctx/it2fs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "fctx/error.hpp"

namespace fctx {

double Trapezoid::operator()(double x) const noexcept { return trapezoid_membership(*this, x); }

double trapezoid_membership(const Trapezoid& t, double x) noexcept {
  if (x < t.a || x > t.d) return 0.0;
  if (x >= t.b && x <= t.c) return t.h;
  if (x < t.b) return t.h * (x - t.a) / (t.b - t.a);
  return t.h * (t.d - x) / (t.d - t.c);
}

Interval alpha_cut(const Trapezoid& t, double alpha) noexcept {
  if (alpha <= 0.0 || t.h <= 0.0) return {t.a, t.d};
  const double r = std::min(alpha / t.h, 1.0);
  return {t.a + r * (t.b - t.a), t.d - r * (t.d - t.c)};
}

namespace {

struct Segment {
  double x0, y0, x1, y1;
};

std::array<Segment, 3> segments(const Trapezoid& t) {
  return {Segment{t.a, 0.0, t.b, t.h}, Segment{t.b, t.h, t.c, t.h}, Segment{t.c, t.h, t.d, 0.0}};
}

// Intersection abscissa of two non-vertical segments, if any.
bool crossing(const Segment& p, const Segment& q, double& x) {
  if (p.x1 <= p.x0 || q.x1 <= q.x0) return false;
  const double sp = (p.y1 - p.y0) / (p.x1 - p.x0);
  const double sq = (q.y1 - q.y0) / (q.x1 - q.x0);
  if (sp == sq) return false;
  // y0p + sp (x - x0p) = y0q + sq (x - x0q)
  x = (q.y0 - p.y0 + sp * p.x0 - sq * q.x0) / (sp - sq);
  const double lo = std::max(p.x0, q.x0);
  const double hi = std::min(p.x1, q.x1);
  return x >= lo && x <= hi;
}

}  // namespace

double sup_min(const Trapezoid& p, const Trapezoid& q) noexcept {
  std::vector<double> xs = {p.a, p.b, p.c, p.d, q.a, q.b, q.c, q.d};
  for (const auto& sp : segments(p)) {
    for (const auto& sq : segments(q)) {
      double x = 0.0;
      if (crossing(sp, sq, x)) xs.push_back(x);
    }
  }
  double best = 0.0;
  for (double x : xs) best = std::max(best, std::min(p(x), q(x)));
  return best;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n <= 1 || hi <= lo) return {lo};
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + step * i;
  xs.back() = hi;
  return xs;
}

std::vector<std::string> fou_validate(const Fou& f, int grid_n) {
  std::vector<std::string> out;
  auto finite = [](const Trapezoid& t) {
    return std::isfinite(t.a) && std::isfinite(t.b) && std::isfinite(t.c) && std::isfinite(t.d) &&
           std::isfinite(t.h);
  };
  if (!finite(f.umf) || !finite(f.lmf)) {
    out.emplace_back("non-finite parameter");
    return out;
  }
  if (!f.umf.ordered()) out.emplace_back("umf abscissae not ordered a <= b <= c <= d");
  if (!f.lmf.ordered()) out.emplace_back("lmf abscissae not ordered a <= b <= c <= d");
  if (f.umf.h != 1.0) out.emplace_back("umf height must be 1");
  if (!(f.lmf.h > 0.0 && f.lmf.h <= 1.0)) out.emplace_back("lmf height must lie in (0, 1]");
  if (f.lmf.a < f.umf.a || f.lmf.d > f.umf.d) out.emplace_back("lmf support exceeds umf support");
  if (!out.empty()) return out;

  for (double x : linspace(f.umf.a, f.umf.d, grid_n)) {
    if (f.lmf(x) > f.umf(x) + 1e-9) {
      std::ostringstream os;
      os << "lmf exceeds umf at x = " << x;
      out.push_back(os.str());
      break;
    }
  }
  return out;
}

Interval fou_membership(const Fou& f, double x) noexcept {
  const double lo = f.lmf(x);
  const double hi = f.umf(x);
  return {std::min(lo, hi), hi};
}

namespace {

struct Samples {
  std::vector<double> x, upper, lower;
};

Samples sample(const Fou& f, int grid_n) {
  Samples s;
  s.x = linspace(f.umf.a, f.umf.d, std::max(grid_n, 1));
  s.upper.reserve(s.x.size());
  s.lower.reserve(s.x.size());
  for (double x : s.x) {
    s.upper.push_back(f.umf(x));
    s.lower.push_back(f.lmf(x));
  }
  return s;
}

// Extremum of Σ x w / Σ w where w takes `first` weights at indices < k and
// `second` weights at indices >= k, over every k in [0, n].
double switch_scan(const std::vector<double>& x, const std::vector<double>& first,
                   const std::vector<double>& second, bool minimize) {
  const std::size_t n = x.size();
  double tail_num = 0.0, tail_den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tail_num += x[i] * second[i];
    tail_den += second[i];
  }
  double head_num = 0.0, head_den = 0.0;
  bool found = false;
  double best = minimize ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k) {
    const double den = head_den + tail_den;
    if (den > 0.0) {
      const double y = (head_num + tail_num) / den;
      best = minimize ? std::min(best, y) : std::max(best, y);
      found = true;
    }
    if (k == n) break;
    head_num += x[k] * first[k];
    head_den += first[k];
    tail_num -= x[k] * second[k];
    tail_den -= second[k];
  }
  if (!found) throw Error(ErrorCode::AllZeroMembership, "every switch point has zero total membership");
  return best;
}

double weighted_mean(const std::vector<double>& x, const std::vector<double>& w) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x[i] * w[i];
    den += w[i];
  }
  if (den <= 0.0) throw Error(ErrorCode::AllZeroMembership, "zero total membership");
  return num / den;
}

// Karnik-Mendel iteration for one endpoint. `left` selects the minimum.
double km_endpoint(const Samples& s, bool left) {
  const std::size_t n = s.x.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 * (s.upper[i] + s.lower[i]);
  double y = weighted_mean(s.x, w);
  for (std::size_t iter = 0; iter <= n + 1; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool below = s.x[i] <= y;
      w[i] = (below == left) ? s.upper[i] : s.lower[i];
    }
    const double next = weighted_mean(s.x, w);
    if (next == y) break;
    y = next;
  }
  return y;
}

}  // namespace

CentroidInterval km_centroid(const Fou& f, int grid_n) {
  const Samples s = sample(f, grid_n);
  return {switch_scan(s.x, s.upper, s.lower, true), switch_scan(s.x, s.lower, s.upper, false)};
}

CentroidInterval km_centroid_iterative(const Fou& f, int grid_n) {
  const Samples s = sample(f, grid_n);
  return {km_endpoint(s, true), km_endpoint(s, false)};
}

double centroid_center(const Fou& f) { return km_centroid(f).center(); }

double jaccard_similarity(const Fou& fa, const Fou& fb, int grid_n) {
  const double lo = std::min(fa.umf.a, fb.umf.a);
  const double hi = std::max(fa.umf.d, fb.umf.d);
  double num = 0.0, den = 0.0;
  for (double x : linspace(lo, hi, grid_n)) {
    const double ua = fa.umf(x), ub = fb.umf(x);
    const double la = fa.lmf(x), lb = fb.lmf(x);
    num += std::min(ua, ub) + std::min(la, lb);
    den += std::max(ua, ub) + std::max(la, lb);
  }
  if (den <= 0.0) throw Error(ErrorCode::BothEmpty, "neither set has membership on the shared grid");
  return num / den;
}

Trapezoid clip_under(const Trapezoid& lower, const Trapezoid& upper) {
  const std::array<double, 8> knots = {lower.a, lower.b, lower.c, lower.d, upper.a, upper.b, upper.c, upper.d};
  const bool inside = lower.a >= upper.a && lower.d <= upper.d &&
                      std::all_of(knots.begin(), knots.end(), [&](double x) { return lower(x) <= upper(x) + 1e-12; });
  if (inside) return lower;

  const double height = sup_min(lower, upper);
  if (height <= 0.0) throw Error(ErrorCode::Internal, "lower membership function lies outside the upper support");
  const double sa = std::max(lower.a, upper.a);
  const double sd = std::min(lower.d, upper.d);
  const Interval cl = alpha_cut(lower, height);
  const Interval cu = alpha_cut(upper, height);
  double tb = std::max(cl.lo, cu.lo);
  double tc = std::min(cl.hi, cu.hi);
  if (tb > tc) tb = tc = 0.5 * (tb + tc);
  tb = std::clamp(tb, sa, sd);
  tc = std::clamp(tc, tb, sd);
  return {sa, tb, tc, sd, height};
}

}  // namespace fctx
