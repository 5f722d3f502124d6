#include <algorithm>

#include "constructions.hpp"
#include "doctest.h"
#include "error.hpp"
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

LipFunction identity(const SpacePtr& s) { return LipFunction::distance_to(s, s->base()); }

}  // namespace

TEST_CASE("curves near a norming pair") {
  auto s = line({0, 1, 2, 3, 4});
  auto f = identity(s);
  auto p = at(s, "0"), q4 = at(s, "4");
  auto straight = make_curve(*s, {p, at(s, "1"), at(s, "2"), at(s, "3"), q4});
  CHECK(straight.length == 4);
  auto rep = curve_attainment_check(f, p, q4, straight, 0);
  CHECK(rep.holds);
  CHECK(rep.min_slack == 0);
  CHECK(rep.pairs_checked == 10);

  // A back-track of length 2 costs exactly the slack it is granted.
  auto back = make_curve(*s, {p, at(s, "1"), at(s, "2"), at(s, "1"), at(s, "2"), at(s, "3"), q4});
  CHECK(back.length == 6);
  CHECK(curve_attainment_check(f, p, q4, back, 2).holds);
  CHECK(code_of([&] { curve_attainment_check(f, p, q4, back, 1); }) == ErrorCode::kCurveTooLong);

  auto bent = LipFunction(s, {0, 1, 1, 1, 1});
  CHECK(code_of([&] { curve_attainment_check(bent, p, q4, straight, 0); }) == ErrorCode::kNotAttaining);
  auto wrong_end = make_curve(*s, {p, at(s, "1")});
  CHECK(code_of([&] { curve_attainment_check(f, p, q4, wrong_end, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("cantor primitive") {
  for (int k = 1; k <= 4; ++k) {
    auto fc = fat_cantor(k);
    auto prim = cantor_primitive(fc.space, fc.retained);
    CHECK(prim.f(at(fc.space, "1")) == fat_cantor_measure(k));
    CHECK(prim.norm == 1);
    CHECK(prim.constant_on_gaps);
  }
  auto fc2 = fat_cantor(2);
  CHECK(cantor_primitive(fc2.space, fc2.retained).f(at(fc2.space, "1")) == q("5/8"));

  auto s = line({0, q("1/2"), 1});
  auto half = cantor_primitive(s, {{0, q("1/4")}, {q("3/4"), 1}});
  CHECK(half.f(at(s, "1/2")) == q("1/4"));
  CHECK(half.f(at(s, "1")) == q("1/2"));
  CHECK(code_of([&] { cantor_primitive(s, {{0, q("1/2")}, {q("1/2"), 1}}); }) == ErrorCode::kOverlappingIntervals);
  CHECK(code_of([&] { cantor_primitive(equilateral(), {}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("support-local perturbation into a norm attaining function") {
  auto g = grid_interval(101);
  auto f = identity(g);
  auto x = at(g, "1/2"), y = at(g, "51/100");
  auto rep = sna_perturbation(f, x, y, q("1/10"));
  CHECK(rep.K == q("11/9"));
  CHECK(rep.K - 1 < q("1/4"));
  CHECK(rep.holds());
  CHECK(rep.norm == rep.K);

  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto r = random_space(seed, 7);
    auto mols = all_molecules(*r);
    auto base = r->base();
    for (const Molecule& m : mols) {
      if (m.x == base || m.y == base) continue;
      Rational d = r->d(m.x, m.y);
      Rational room = r->d(m.x, base) - d;
      Rational radius = d + room / 2;
      if (radius <= d) continue;
      auto unit = LipFunction::distance_to(r, m.y);
      Rational n = lip_norm(unit).norm;
      auto out = sna_perturbation(unit.scaled(1 / n), m.x, m.y, radius);
      CHECK(out.holds());
    }
  }

  CHECK(code_of([&] { sna_perturbation(f, x, y, q("1/100")); }) == ErrorCode::kRadiusTooSmall);
  CHECK(code_of([&] { sna_perturbation(f.scaled(2), x, y, q("1/10")); }) == ErrorCode::kNormNotOne);
  CHECK(code_of([&] { sna_perturbation(f, at(g, "1/100"), at(g, "1/50"), q("1/2")); }) == ErrorCode::kBaseInBall);
}

TEST_CASE("close pairs and the separation outside their balls") {
  auto g = grid_interval(101);
  auto pairs = discreteness_pair_search(*g, 2, q("1/10"));
  CHECK(pairs.size() == 1910);
  for (const auto& p : pairs) CHECK(*p.separation == q("1/100"));

  auto s = line({0, 1, q("11/10"), 5});
  auto few = discreteness_pair_search(*s, 2, q("1/10"));
  REQUIRE(few.size() == 2);
  CHECK(*few[0].separation == 5);

  auto t = line({0, q("1/10")});
  auto none = discreteness_pair_search(*t, 2, 1);
  REQUIRE(none.size() == 2);
  CHECK_FALSE(none[0].separation.has_value());
  CHECK(code_of([&] { discreteness_pair_search(*s, q("3/2"), 1); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("strong diameter two witnesses") {
  auto g = grid_interval(101);
  auto x = at(g, "1"), y = at(g, "99/100");
  auto id = identity(g);

  // Slope 1 rising into x: flattening compresses the rise from 72/100 to 1
  // into [72/100, 91/100], which exceeds 1 + n^(-1/3).
  auto w = ssd2p_witness({id}, x, y, 27);
  REQUIRE(w.bounds.size() == 1);
  CHECK(w.bounds[0].g_norm == q("28/19"));
  CHECK_FALSE(w.bounds[0].g_ok);
  CHECK(w.bounds[0].g_reachable_ok);
  CHECK(w.bounds[0].sum_ok);
  CHECK(w.bounds[0].lower_ok);
  CHECK_FALSE(w.holds());

  std::vector<Rational> capped(g->size());
  for (PointId p : g->points()) capped[p.index] = std::min(g->d(p, g->base()), q("1/2"));
  auto flat = LipFunction(g, capped);
  auto ok = ssd2p_witness({flat, flat.scaled(-1)}, x, y, 27);
  CHECK(ok.holds());
  CHECK(ok.h_scale == 1);
  for (const auto& b : ok.bounds) CHECK(b.g_norm == 1);

  CHECK(code_of([&] { ssd2p_witness({id}, x, y, 9); }) == ErrorCode::kNotACube);
  CHECK(code_of([&] { ssd2p_witness({id}, x, y, 1000); }) == ErrorCode::kBallTooLarge);
  CHECK(code_of([&] { ssd2p_witness({id.scaled(2)}, x, y, 27); }) == ErrorCode::kNormNotOne);
  auto sparse = line({0, 5, 6, 100});
  CHECK(code_of([&] { ssd2p_witness({identity(sparse)}, at(sparse, "5"), at(sparse, "6"), 8); }) ==
        ErrorCode::kBaseInBall);
  auto gap = line({0, 1, 2, 100});
  CHECK(code_of([&] { ssd2p_witness({identity(gap)}, at(gap, "100"), at(gap, "2"), 8); }) == ErrorCode::kBallTooLarge);
}

TEST_CASE("cluster decomposition") {
  auto s = line({0, 3, q("63/8"), 8, q("33/4"), q("17/2"), 20});
  auto dec = cluster_decomposition(*s, {at(s, "8")}, 5);
  CHECK(dec.centers.front() == s->base());
  CHECK(dec.eps0 == 1);
  CHECK(dec.scale == q("1/2"));
  auto has = [](const std::vector<PointId>& v, PointId p) { return std::find(v.begin(), v.end(), p) != v.end(); };
  CHECK(has(dec.E, at(s, "3")));
  CHECK(has(dec.E, at(s, "20")));
  CHECK(has(dec.E, s->base()));
  CHECK(has(dec.N, at(s, "17/2")));
  CHECK(has(dec.clusters[3][1], at(s, "17/2")));
  CHECK(has(dec.tail[1], at(s, "33/4")));
  CHECK(has(dec.tail[1], at(s, "63/8")));
  CHECK(dec.partition_ok);
  CHECK(dec.holds());
  CHECK(dec.pairs_checked > 0);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = random_space(seed, 8);
    std::vector<PointId> centers{PointId{1}};
    auto out = cluster_decomposition(*r, centers, 3);
    CHECK(out.partition_ok);
    CHECK(out.en_ok);
    CHECK(out.clusters_ok);
  }

  CHECK(code_of([&] { cluster_decomposition(*s, {at(s, "8")}, 0); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([&] { cluster_decomposition(*s, {at(s, "8"), at(s, "8")}, 2); }) == ErrorCode::kDegenerateCenters);
  auto two = two_points();
  CHECK(code_of([&] { cluster_decomposition(*two, {PointId{1}}, 2); }) == ErrorCode::kDegenerateCenters);
}
