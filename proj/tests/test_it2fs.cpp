#include "doctest.h"

#include "fctx/error.hpp"
#include "fctx/it2fs.hpp"
#include "support.hpp"

using namespace fctx;
using fctx::testing::Rng;

TEST_CASE("trapezoid membership on ramps, plateau and outside") {
  const Trapezoid t{1, 3, 5, 9, 0.8};
  CHECK(t(0.5) == 0.0);
  CHECK(t(2.0) == doctest::Approx(0.4));
  CHECK(t(4.0) == 0.8);
  CHECK(t(7.0) == doctest::Approx(0.4));
  CHECK(t(9.5) == 0.0);
  const Trapezoid shoulder{0, 0, 2, 4, 1};
  CHECK(shoulder(0.0) == 1.0);
  const Trapezoid spike{2, 2, 2, 2, 1};
  CHECK(spike(2.0) == 1.0);
  CHECK(spike(2.0001) == 0.0);
}

TEST_CASE("alpha cuts are exact") {
  const Trapezoid t{0, 2, 4, 8, 1};
  const Interval c = alpha_cut(t, 0.5);
  CHECK(c.lo == doctest::Approx(1.0));
  CHECK(c.hi == doctest::Approx(6.0));
  CHECK(alpha_cut(t, 0.0) == Interval{0, 8});
  CHECK(alpha_cut(t, 1.0) == Interval{2, 4});
}

TEST_CASE("sup-min of identical normal sets is one and of disjoint sets zero") {
  const Trapezoid t{1, 2, 3, 4, 1};
  CHECK(sup_min(t, t) == 1.0);
  CHECK(sup_min(t, Trapezoid{5, 6, 7, 8, 1}) == 0.0);
  // crossing of a falling and a rising ramp at x = 4, height 0.5
  CHECK(sup_min(Trapezoid{0, 1, 3, 5, 1}, Trapezoid{3, 5, 6, 7, 1}) == doctest::Approx(0.5));
}

TEST_CASE("sup-min matches a dense grid maximum") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const Fou p = fctx::testing::random_fou(rng);
    const Fou q = fctx::testing::random_fou(rng);
    double grid = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double x = 10.0 * i / 20000.0;
      grid = std::max(grid, std::min(p.lmf(x), q.umf(x)));
    }
    const double exact = sup_min(p.lmf, q.umf);
    CHECK(exact >= grid - 1e-12);
    CHECK(exact <= grid + 1e-3);
  }
}

TEST_CASE("fou_validate reports each violated invariant") {
  CHECK(fou_is_valid(Fou{{2, 4, 6, 8, 1}, {3, 4.5, 5.5, 7, 0.7}}));
  CHECK_FALSE(fou_validate(Fou{{2, 4, 6, 8, 0.9}, {3, 4.5, 5.5, 7, 0.7}}).empty());
  CHECK_FALSE(fou_validate(Fou{{2, 4, 6, 8, 1}, {1, 4.5, 5.5, 7, 0.7}}).empty());
  CHECK_FALSE(fou_validate(Fou{{2, 4, 6, 8, 1}, {3, 4.5, 5.5, 7, 0.0}}).empty());
  CHECK_FALSE(fou_validate(Fou{{2, 6, 4, 8, 1}, {3, 4.5, 5.5, 7, 0.7}}).empty());
  // lower above upper on the ramp even though the support is nested
  CHECK_FALSE(fou_validate(Fou{{0, 5, 5, 10, 1}, {0.5, 1, 9, 9.5, 0.9}}).empty());
}

TEST_CASE("fou membership is the interval between the two functions") {
  const Fou f{{0, 2, 4, 6, 1}, {1, 2.5, 3.5, 5, 0.6}};
  const Interval m = fou_membership(f, 1.5);
  CHECK(m.lo == doctest::Approx(0.2));
  CHECK(m.hi == doctest::Approx(0.75));
}

TEST_CASE("type-1 symmetric trapezoid has centroid at its middle") {
  const CentroidInterval c = km_centroid(Fou::type1({2, 4, 6, 8, 1}));
  CHECK(c.c_l == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(c.c_r == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("centroid agrees with direct switch-point enumeration") {
  Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    const Fou f = fctx::testing::random_fou(rng);
    REQUIRE(fou_is_valid(f));
    const CentroidInterval got = km_centroid(f);
    const CentroidInterval want = fctx::testing::oracle_centroid(f);
    CHECK(got.c_l == doctest::Approx(want.c_l).epsilon(1e-12));
    CHECK(got.c_r == doctest::Approx(want.c_r).epsilon(1e-12));
    CHECK(got.c_l <= got.c_r);
  }
}

TEST_CASE("iterative centroid matches the scan") {
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const Fou f = fctx::testing::random_fou(rng);
    const CentroidInterval a = km_centroid(f);
    const CentroidInterval b = km_centroid_iterative(f);
    CHECK(std::abs(a.c_l - b.c_l) <= 1e-9);
    CHECK(std::abs(a.c_r - b.c_r) <= 1e-9);
  }
}

TEST_CASE("centroid of a shifted FOU shifts by the same amount") {
  Rng rng(13);
  for (int k = 0; k < 30; ++k) {
    const Fou f = fctx::testing::random_fou(rng, 0.0, 5.0);
    const CentroidInterval a = km_centroid(f);
    const CentroidInterval b = km_centroid(f.shifted(3.25));
    CHECK(b.c_l == doctest::Approx(a.c_l + 3.25).epsilon(1e-9));
    CHECK(b.c_r == doctest::Approx(a.c_r + 3.25).epsilon(1e-9));
  }
}

TEST_CASE("symmetric FOUs have centroid endpoints symmetric about the centre") {
  Rng rng(14);
  for (int k = 0; k < 50; ++k) {
    const double m = fctx::testing::uniform(rng, 3.0, 7.0);
    const CentroidInterval c = km_centroid(fctx::testing::random_symmetric_fou(rng, m));
    CHECK(std::abs(c.c_l + c.c_r - 2.0 * m) <= 1e-6);
  }
}

TEST_CASE("centroid of an all-zero FOU is an error") {
  // a single sample at the foot of the ramp carries no membership
  const Fou f{{1, 2, 3, 4, 1}, {1.5, 2, 3, 3.5, 0.5}};
  try {
    km_centroid(f, 1);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllZeroMembership);
  }
}

TEST_CASE("jaccard similarity equals grid-sum definition") {
  Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    const Fou a = fctx::testing::random_fou(rng);
    const Fou b = fctx::testing::random_fou(rng);
    const double s = jaccard_similarity(a, b);
    CHECK(s == doctest::Approx(fctx::testing::oracle_jaccard(a, b)).epsilon(1e-12));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(s == doctest::Approx(jaccard_similarity(b, a)).epsilon(1e-12));
    CHECK(jaccard_similarity(a, a) == doctest::Approx(1.0));
  }
  CHECK(jaccard_similarity(Fou::type1({0, 1, 2, 3, 1}), Fou::type1({5, 6, 7, 8, 1})) == 0.0);
}

TEST_CASE("jaccard of two empty sets is an error") {
  const Fou f{{1, 2, 3, 4, 1}, {1.5, 2, 3, 3.5, 0.5}};
  try {
    jaccard_similarity(f, f, 1);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BothEmpty);
  }
}

TEST_CASE("linspace includes both ends") {
  const auto xs = linspace(0, 1, 5);
  REQUIRE(xs.size() == 5);
  CHECK(xs.front() == 0.0);
  CHECK(xs.back() == 1.0);
  CHECK(xs[2] == doctest::Approx(0.5));
  CHECK(linspace(2, 2, 7).size() == 1);
}

TEST_CASE("clip_under keeps a lower function that already fits") {
  const Trapezoid upper{0, 2, 4, 6, 1};
  const Trapezoid lower{1, 2.5, 3.5, 5, 0.6};
  CHECK(clip_under(lower, upper) == lower);
  const Trapezoid wide{-1, 1, 5, 7, 0.9};
  const Trapezoid clipped = clip_under(wide, upper);
  CHECK(fou_is_valid(Fou{upper, clipped}));
}
