#pragma once

#include <utility>
#include <vector>

#include "metric_space.hpp"

namespace freelip {

// Ordered pair (x, y) with x != y; stands for (delta(x) - delta(y)) / d(x,y).
struct Molecule {
  PointId x;
  PointId y;
  Molecule reversed() const { return {y, x}; }
  friend auto operator<=>(const Molecule&, const Molecule&) = default;
};

// Throws SamePoint / UnknownPoint.
Molecule make_molecule(const MetricSpace& space, PointId x, PointId y);

// Every ordered pair of distinct points, lexicographic.
std::vector<Molecule> all_molecules(const MetricSpace& space);

// A real function on an exact-backend space that vanishes at the base point.
class LipFunction {
 public:
  LipFunction(SpacePtr space, std::vector<Rational> values);

  static LipFunction zero(SpacePtr space);
  // d(., p) - d(base, p).
  static LipFunction distance_to(SpacePtr space, PointId p);

  const MetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Rational& operator()(PointId p) const { return values_.at(p.index); }
  const std::vector<Rational>& values() const { return values_; }

  LipFunction operator+(const LipFunction& other) const;
  LipFunction operator-(const LipFunction& other) const;
  LipFunction scaled(const Rational& c) const;

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

struct AttainmentReport {
  Rational norm;
  // Every ordered pair achieving the norm; empty when the norm is 0.
  std::vector<Molecule> pairs;
};

AttainmentReport lip_norm(const LipFunction& f);

// Lipschitz constant of arbitrary values restricted to `domain` (all points
// when empty). No base-point requirement.
Rational lipschitz_constant(const MetricSpace& space, const std::vector<Rational>& values,
                            const std::vector<PointId>& domain = {});

// <f, m_{x,y}> = (f(x) - f(y)) / d(x,y).
Rational pairing(const LipFunction& f, const Molecule& m);

struct PartialValue {
  PointId point;
  Rational value;
};

// Lower McShane extension F(t) = min_p (partial(p) + L d(t,p)). The partial
// function must contain the base with value 0 and be L-Lipschitz.
LipFunction mcshane_extend(SpacePtr space, const std::vector<PartialValue>& partial, const Rational& L);

// Same formula without the Lip0 preconditions; the result is shifted so that
// it vanishes at the base point.
LipFunction mcshane_extend_rebased(SpacePtr space, const std::vector<PartialValue>& partial, const Rational& L);

struct CombinationReport {
  LipFunction combination;
  Rational norm;
  Rational bound;  // 2 max |a_j|
  bool bound_holds = false;
};

// sum a_j f_j for functions with pairwise disjoint supports and norm <= 1.
CombinationReport disjoint_support_combination(const std::vector<LipFunction>& fs,
                                               const std::vector<Rational>& coeffs);

// g = f(center) on the closed ball B(center, inner_radius), g = f outside the
// closed ball B(center, outer_radius), McShane-extended in between with the
// Lipschitz constant of that partial function, then shifted to vanish at the
// base point.
LipFunction flatten_on_ball(const LipFunction& f, PointId center, const Rational& inner_radius,
                            const Rational& outer_radius);

}  // namespace freelip
