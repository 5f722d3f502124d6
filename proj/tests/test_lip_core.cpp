#include <algorithm>

#include "doctest.h"
#include "error.hpp"
#include "lip_core.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace freelip;
using namespace freelip::testing;

namespace {

LipFunction on_line(const SpacePtr& s, std::vector<Rational> values) { return LipFunction(s, std::move(values)); }

// Bump of height r at c: max(0, r - d(., c)), shifted to vanish at the base.
LipFunction bump(const SpacePtr& s, PointId c, const Rational& r) {
  std::vector<Rational> v(s->size());
  for (PointId p : s->points()) v[p.index] = std::max(Rational(0), Rational(r - s->d(p, c)));
  return LipFunction(s, v);
}

}  // namespace

TEST_CASE("lip_norm reports every maximizing pair") {
  auto s = line({0, 1, 2});
  auto zero = LipFunction::zero(s);
  CHECK(lip_norm(zero).norm == 0);
  CHECK(lip_norm(zero).pairs.empty());

  auto id = on_line(s, {0, 1, 2});
  auto rep = lip_norm(id);
  CHECK(rep.norm == 1);
  auto has = [&](const AttainmentReport& r, const char* a, const char* b) {
    return std::find(r.pairs.begin(), r.pairs.end(), Molecule{at(s, a), at(s, b)}) != r.pairs.end();
  };
  CHECK(has(rep, "2", "0"));
  CHECK(has(rep, "1", "0"));
  CHECK(has(rep, "2", "1"));
  CHECK(rep.pairs.size() == 3);

  auto flat = on_line(s, {0, 1, 1});
  auto rep2 = lip_norm(flat);
  CHECK(rep2.norm == 1);
  REQUIRE(rep2.pairs.size() == 1);
  CHECK(rep2.pairs[0] == Molecule{at(s, "1"), at(s, "0")});

  for (PointId p : s->points()) {
    for (PointId r : s->points()) {
      if (p == r) continue;
      CHECK(pairing(id, Molecule{p, r}) <= rep.norm);
    }
  }
  CHECK(lip_norm(id.scaled(-3)).norm == 3);
  CHECK_THROWS_AS(LipFunction(s, {1, 1, 1}), Error);
}

TEST_CASE("pairing with molecules") {
  auto s = line({0, 1, 3});
  auto f = on_line(s, {0, 1, 2});
  CHECK(pairing(f, Molecule{at(s, "3"), at(s, "0")}) == q("2/3"));
  auto c = on_line(s, {0, 0, 0});
  CHECK(pairing(c, Molecule{at(s, "3"), at(s, "1")}) == 0);
  CHECK_THROWS_AS(make_molecule(*s, PointId{1}, PointId{1}), Error);
}

TEST_CASE("McShane lower extension") {
  auto s = line({0, 1, 2});
  auto F = mcshane_extend(s, {{at(s, "0"), 0}, {at(s, "2"), 2}}, 1);
  CHECK(F(at(s, "1")) == 1);

  auto only_base = mcshane_extend(s, {{s->base(), 0}}, 1);
  for (PointId p : s->points()) CHECK(only_base(p) == s->d(p, s->base()));

  auto total = mcshane_extend(s, {{PointId{0}, 0}, {PointId{1}, q("1/2")}, {PointId{2}, q("-1/2")}}, 1);
  CHECK(total.values() == std::vector<Rational>{0, q("1/2"), q("-1/2")});

  try {
    mcshane_extend(s, {{at(s, "0"), 0}, {at(s, "1"), 5}}, 1);
    FAIL("expected NotLipschitz");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotLipschitz);
  }
  try {
    mcshane_extend(s, {{at(s, "1"), 0}}, 1);
    FAIL("expected BaseMissing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBaseMissing);
  }

  // Norm equals L when L is the partial function's exact constant.
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = random_space(static_cast<std::uint64_t>(trial) + 1, 9);
    std::vector<PartialValue> partial{{r->base(), 0}};
    std::vector<Rational> raw(r->size());
    std::vector<PointId> domain{r->base()};
    for (PointId p : r->points()) {
      if (p == r->base() || rng.below(2) == 0) continue;
      Rational v = make_rational(rng.between(-6, 6), 3);
      partial.push_back({p, v});
      raw[p.index] = v;
      domain.push_back(p);
    }
    Rational L = lipschitz_constant(*r, raw, domain);
    if (L == 0) continue;
    auto ext = mcshane_extend(r, partial, L);
    CHECK(lip_norm(ext).norm == L);
    for (const auto& pv : partial) CHECK(ext(pv.point) == pv.value);
  }
}

TEST_CASE("disjoint-support combinations") {
  auto s = grid_interval(10);
  auto b1 = bump(s, PointId{2}, q("1/9"));
  auto b2 = bump(s, PointId{6}, q("2/9"));
  auto rep = disjoint_support_combination({b1, b2}, {1, -1});
  CHECK(rep.bound == 2);
  CHECK(rep.bound_holds);
  CHECK(rep.norm <= 2);

  auto single = disjoint_support_combination({b1}, {1});
  CHECK(single.combination.values() == b1.values());

  auto zero = disjoint_support_combination({b1, b2}, {0, 0});
  CHECK(zero.norm == 0);
  CHECK(zero.bound_holds);

  auto wide = bump(s, PointId{3}, q("3/9"));
  try {
    disjoint_support_combination({b1, wide}, {1, 1});
    FAIL("expected OverlappingSupports");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOverlappingSupports);
  }
  try {
    disjoint_support_combination({b1.scaled(2)}, {1});
    FAIL("expected NormExceedsOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNormExceedsOne);
  }
}

TEST_CASE("flatten_on_ball") {
  auto s = grid_interval(101);
  std::vector<Rational> id(s->size());
  for (PointId p : s->points()) id[p.index] = s->d(p, s->base());
  LipFunction f(s, id);
  const PointId c = at(s, "1/2");
  auto g = flatten_on_ball(f, c, q("1/10"), q("1/5"));
  for (PointId p : s->points()) {
    const Rational r = s->d(p, c);
    if (r <= q("1/10")) CHECK(g(p) == f(c));
    if (r > q("1/5")) CHECK(g(p) == f(p));
  }

  auto constant = LipFunction::zero(s);
  auto same = flatten_on_ball(constant, c, q("1/10"), q("1/5"));
  CHECK(same.values() == constant.values());

  try {
    flatten_on_ball(f, c, 0, q("1/5"));
    FAIL("expected EmptyRegion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyRegion);
  }
}
