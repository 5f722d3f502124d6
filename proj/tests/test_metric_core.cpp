#include <cmath>

#include "doctest.h"
#include "error.hpp"
#include "metric_core.hpp"
#include "support.hpp"

using namespace freelip;
using namespace freelip::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("validation rejects broken matrices with the offending indices") {
  CHECK_NOTHROW(MetricSpace::exact({"0", "a"}, {{0, 1}, {1, 0}}, "0"));
  CHECK(code_of([] { MetricSpace::exact({"0", "a"}, {{0, 1}, {2, 0}}, "0"); }) == ErrorCode::kAsymmetricMatrix);
  CHECK(code_of([] { MetricSpace::exact({"0", "a"}, {{1, 1}, {1, 0}}, "0"); }) == ErrorCode::kNonzeroDiagonal);
  CHECK(code_of([] { MetricSpace::exact({"0", "a"}, {{0, 0}, {0, 0}}, "0"); }) == ErrorCode::kZeroOffDiagonal);
  CHECK(code_of([] { MetricSpace::exact({"0", "a"}, {{0, 1}, {1, 0}}, "b"); }) == ErrorCode::kUnknownPoint);
  try {
    MetricSpace::exact({"0", "1", "2"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, "0");
    FAIL("expected a triangle violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTriangleViolation);
    CHECK(std::string(e.what()).find("(0,2,1)") != std::string::npos);
  }
}

TEST_CASE("tripod of the glued family is a valid space") {
  auto t = tripod(2);
  CHECK(t->d(at(t, "0"), at(t, "x2")) == q("3/2"));
  CHECK(t->d(at(t, "x2"), at(t, "y2")) == 2);
  CHECK(metric_segment(*t, at(t, "x2"), at(t, "y2")).size() == 2);
}

TEST_CASE("gromov product identities") {
  auto s = line({0, 1, 3});
  CHECK(gromov_product(*s, at(s, "0"), at(s, "3"), at(s, "1")) == 0);
  CHECK(gromov_product(*s, at(s, "1"), at(s, "3"), at(s, "1")) == 0);
  auto e = equilateral();
  CHECK(gromov_product(*e, PointId{0}, PointId{1}, PointId{2}) == q("1/2"));

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = random_space(seed, 8);
    for (PointId x : r->points()) {
      for (PointId y : r->points()) {
        if (x == y) continue;
        for (PointId z : r->points()) {
          if (z == x || z == y) continue;
          Rational g = gromov_product(*r, x, y, z);
          CHECK(g >= 0);
          CHECK(g <= std::min(r->d(x, z), r->d(y, z)));
          CHECK(gromov_product(*r, x, z, y) + gromov_product(*r, y, z, x) == r->d(x, y));
        }
      }
    }
  }
  CHECK(code_of([&] { gromov_product(*s, PointId{0}, PointId{0}, PointId{1}); }) == ErrorCode::kSamePoint);
}

TEST_CASE("segments and concavity") {
  auto s = line({0, 1, 2});
  CHECK(metric_segment(*s, at(s, "0"), at(s, "2")).size() == 3);
  auto e = equilateral();
  CHECK(metric_segment(*e, PointId{0}, PointId{1}).size() == 2);
  CHECK(is_concave(*e).concave);
  auto rep = is_concave(*s);
  REQUIRE_FALSE(rep.concave);
  CHECK((*rep.witness)[0] == at(s, "0"));
  CHECK((*rep.witness)[1] == at(s, "2"));
  CHECK((*rep.witness)[2] == at(s, "1"));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto r = random_space(seed, 7);
    bool all_trivial = true;
    for (PointId x : r->points())
      for (PointId y : r->points())
        if (x != y && metric_segment(*r, x, y).size() > 2) all_trivial = false;
    CHECK(all_trivial == is_concave(*r).concave);
  }
}

TEST_CASE("concave sup-norm family matches a coordinate re-derivation") {
  const int N = 12;
  auto s = concave_sup_norm_family(N);
  CHECK(s->size() == static_cast<std::size_t>(2 * N - 1));
  // Coordinates in R^(N+1), index k standing for e_k.
  auto coords = [&](const std::string& label) {
    std::vector<double> v(N + 1, 0.0);
    if (label == "0") return v;
    int n = std::stoi(label.substr(1));
    if (label[0] == 'x') {
      v[n] = 2.0 - 1.0 / n;
    } else {
      v[n] = 1.0;
      v[1] = 1.0 + 1.0 / n;
    }
    return v;
  };
  for (PointId p : s->points()) {
    for (PointId r : s->points()) {
      auto a = coords(s->label(p));
      auto b = coords(s->label(r));
      double m = 0;
      for (int k = 0; k <= N; ++k) m = std::max(m, std::abs(a[k] - b[k]));
      CHECK(std::abs(m - s->d(p, r).get_d()) <= 1e-9);
    }
  }
  for (int n = 2; n <= N; ++n) {
    auto x = at(s, ("x" + std::to_string(n)).c_str());
    auto y = at(s, ("y" + std::to_string(n)).c_str());
    CHECK(s->d(s->base(), y) + s->d(y, x) - s->d(s->base(), x) == make_rational(3, n));
  }
  CHECK(is_concave(*s).concave);
}

TEST_CASE("snowflake") {
  auto two = two_points(4);
  auto f = snowflake(*two, q("1/2"));
  CHECK(f->df(PointId{0}, PointId{1}) == doctest::Approx(2.0));
  CHECK_FALSE(f->is_exact());

  auto s = line({0, 1, 2});
  auto sf = snowflake(*s, q("1/2"));
  CHECK(sf->df(PointId{0}, PointId{2}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(is_concave(*sf).concave);
  CHECK_FALSE(is_concave(*s).concave);

  auto g = snowflake(*grid_interval(11), q("1/2"));
  for (PointId a : g->points())
    for (PointId b : g->points())
      for (PointId c : g->points()) CHECK(g->df(a, c) <= g->df(a, b) + g->df(b, c) + kDefaultTolerance);

  CHECK(code_of([&] { snowflake(*s, 1); }) == ErrorCode::kInvalidExponent);
  CHECK(code_of([&] { snowflake(*s, 0); }) == ErrorCode::kInvalidExponent);
}

TEST_CASE("ell1 sums glue at the base") {
  auto a = MetricSpace::exact({"0", "a"}, {{0, 1}, {1, 0}}, "0");
  auto b = MetricSpace::exact({"o", "b"}, {{0, 1}, {1, 0}}, "o");
  auto sum = ell1_sum({a, b});
  CHECK(sum.space->size() == 3);
  CHECK(sum.space->d(at(sum.space, "a"), at(sum.space, "b")) == 2);
  CHECK(l1_glue_constant(*sum.space, sum.parts) == 1);

  auto single = MetricSpace::exact({"o"}, {{0}}, "o");
  auto same = ell1_sum({a, single});
  CHECK(same.space->size() == 2);
  CHECK(same.space->d(PointId{0}, PointId{1}) == 1);

  CHECK(code_of([&] { ell1_sum({a, a}); }) == ErrorCode::kDuplicateLabel);

  auto tri = equilateral();
  CHECK(l1_glue_constant(*tri, {{PointId{1}}, {PointId{2}}}) == 2);
  CHECK(l1_glue_constant(*tri, {{PointId{1}, PointId{2}}}) == 1);
  CHECK(code_of([&] { l1_glue_constant(*tri, {{PointId{1}}}); }) == ErrorCode::kInvalidPartition);
  CHECK(code_of([&] { l1_glue_constant(*tri, {{PointId{1}}, {PointId{1}, PointId{2}}}); }) ==
        ErrorCode::kInvalidPartition);

  auto tripods = tripod_ell1_sum(6);
  CHECK(tripods.space->size() == 11);
  CHECK(l1_glue_constant(*tripods.space, tripods.parts) == 1);
}

TEST_CASE("generators") {
  auto g = grid_interval(11);
  CHECK(g->size() == 11);
  CHECK(g->label(g->base()) == "0");
  CHECK(g->d(at(g, "0"), at(g, "1")) == 1);

  auto c = fat_cantor(1);
  CHECK(c.space->labels() == std::vector<std::string>{"0", "3/8", "5/8", "1"});
  for (int k = 1; k <= 6; ++k) {
    auto fc = fat_cantor(k);
    Rational total = 0;
    for (const auto& iv : fc.retained) total += iv.hi - iv.lo;
    Rational expected = 1;
    for (int n = 1; n <= k; ++n) expected -= make_rational(1 << (n - 1), 1L << (2 * n));
    CHECK(total == expected);
    CHECK(fat_cantor_measure(k) == expected);
  }

  auto u = uniform_gap_space(5, q("9/5"), 3);
  for (PointId a : u->points())
    for (PointId b : u->points())
      if (a != b) {
        CHECK(u->d(a, b) >= 1);
        CHECK(u->d(a, b) < q("9/5"));
      }

  CHECK(code_of([] { grid_interval(1); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { fat_cantor(0); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { concave_sup_norm_family(1); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { uniform_gap_space(4, 2, 0); }) == ErrorCode::kInvalidParameter);
}
