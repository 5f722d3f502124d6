#include "doctest.h"
#include "error.hpp"
#include "free_space.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace freelip;
using namespace freelip::testing;

namespace {

FreeVector random_vector(const SpacePtr& s, Rng& rng) {
  std::map<std::size_t, Rational> c;
  for (PointId p : s->points()) c[p.index] = Rational(rng.between(-5, 5));
  return FreeVector(s, c);
}

}  // namespace

TEST_CASE("molecule vectors") {
  auto s = line({0, 1, 3});
  auto m = molecule_vector(s, at(s, "3"), at(s, "1"));
  CHECK(m.coeff(at(s, "3")) == q("1/2"));
  CHECK(m.coeff(at(s, "1")) == q("-1/2"));
  auto to_base = molecule_vector(s, at(s, "3"), at(s, "0"));
  CHECK(to_base.coeffs().size() == 1);
  CHECK(to_base.coeff(at(s, "3")) == q("1/3"));
  CHECK((m + molecule_vector(s, at(s, "1"), at(s, "3"))).is_zero());
  try {
    molecule_vector(s, PointId{1}, PointId{1});
    FAIL("expected SamePoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSamePoint);
  }
}

TEST_CASE("dual norm of simple vectors") {
  auto s = line({0, 1, 3});
  auto x = at(s, "3"), y = at(s, "1");
  auto mu = FreeVector::delta(s, x) - FreeVector::delta(s, y);
  auto res = free_norm_dual(mu);
  CHECK(res.norm == 2);
  CHECK(lip_norm(res.witness).norm <= 1);
  CHECK(pairing(res.witness, mu) == 2);
  CHECK(free_norm_dual(molecule_vector(s, x, y)).norm == 1);

  auto a = MetricSpace::exact({"0", "x1"}, {{0, 1}, {1, 0}}, "0");
  auto b = MetricSpace::exact({"o", "x2"}, {{0, 1}, {1, 0}}, "o");
  auto sum = ell1_sum({a, b});
  auto v = FreeVector::delta(sum.space, at(sum.space, "x1")) + FreeVector::delta(sum.space, at(sum.space, "x2"));
  CHECK(free_norm_dual(v).norm == 2);

  auto approx = snowflake(*s, q("1/2"));
  CHECK_THROWS_AS(FreeVector{approx}, Error);
}

TEST_CASE("restricted and full dual programs agree") {
  Rng rng(11);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto s = random_space(seed, 8);
    auto mu = random_vector(s, rng);
    CHECK(free_norm_dual(mu, true).norm == free_norm_dual(mu, false).norm);
  }
}

TEST_CASE("flow oracle matches the dual program") {
  auto s = line({0, 1, 3});
  auto zero = FreeVector(s);
  auto f0 = free_norm_flow(zero);
  CHECK(f0.norm == 0);
  CHECK(f0.plan.flows.empty());

  auto mu = FreeVector::delta(s, at(s, "3")) - FreeVector::delta(s, at(s, "1"));
  auto f1 = free_norm_flow(mu);
  CHECK(f1.norm == 2);
  REQUIRE(f1.plan.flows.size() == 1);
  CHECK(f1.plan.flows[0].from == at(s, "3"));
  CHECK(f1.plan.flows[0].to == at(s, "1"));
  CHECK(f1.plan.flows[0].amount == 1);

  Rng rng(7);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto r = random_space(seed, 8);
    auto v = random_vector(r, rng);
    auto dual = free_norm_dual(v);
    auto flow = free_norm_flow(v);
    CHECK(dual.norm == flow.norm);
    CHECK(plan_balances(flow.plan, v));
    CHECK(plan_cost(*r, flow.plan) == flow.norm);
    CHECK(pairing(dual.witness, v) == dual.norm);
    CHECK(lip_norm(dual.witness).norm <= 1);
  }
}

TEST_CASE("norm axioms and isometric embedding") {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto s = random_space(seed, 7);
    auto a = random_vector(s, rng);
    auto b = random_vector(s, rng);
    Rational na = free_norm_dual(a).norm, nb = free_norm_dual(b).norm;
    CHECK(na >= 0);
    CHECK((na == 0) == a.is_zero());
    CHECK(free_norm_dual(a.scaled(q("-5/2"))).norm == q("5/2") * na);
    CHECK(free_norm_dual(a + b).norm <= na + nb);
    for (PointId x : s->points())
      for (PointId y : s->points())
        if (x != y) CHECK(free_norm_flow(FreeVector::delta(s, x) - FreeVector::delta(s, y)).norm == s->d(x, y));
  }
}

TEST_CASE("molecule distances respect both estimates") {
  auto s = line({0, 1, 3});
  Molecule m10{at(s, "1"), at(s, "0")}, m30{at(s, "3"), at(s, "0")};
  CHECK(molecule_distance(s, m10, m10) == 0);
  CHECK(molecule_distance(s, m10, m10.reversed()) == 2);
  auto check = check_molecule_distance(s, m10, m30);
  CHECK(check.distance >= q("2/3"));
  CHECK(check.distance <= q("4/3"));
  CHECK(check.upper == q("4/3"));
  CHECK(check.upper_ok);
  CHECK(check.lower_ok);

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto r = random_space(seed, 5);
    auto mols = all_molecules(*r);
    for (const auto& a : mols)
      for (const auto& b : mols) {
        auto c = check_molecule_distance(r, a, b);
        CHECK(c.upper_ok);
        CHECK(c.lower_ok);
      }
  }
}
