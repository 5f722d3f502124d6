#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lip_core.hpp"

namespace freelip {

// Finitely supported element of the free space over an exact-backend space.
// The base point's coefficient is dropped (delta(0) = 0) and so are zeros.
class FreeVector {
 public:
  explicit FreeVector(SpacePtr space);
  FreeVector(SpacePtr space, const std::map<std::size_t, Rational>& coeffs);

  static FreeVector delta(SpacePtr space, PointId p);

  const MetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::map<std::size_t, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(PointId p) const;
  bool is_zero() const { return coeffs_.empty(); }

  FreeVector operator+(const FreeVector& other) const;
  FreeVector operator-(const FreeVector& other) const;
  FreeVector operator-() const { return scaled(-1); }
  FreeVector scaled(const Rational& c) const;
  bool operator==(const FreeVector& other) const;

 private:
  void add(std::size_t index, const Rational& value);

  SpacePtr space_;
  std::map<std::size_t, Rational> coeffs_;
};

Rational pairing(const LipFunction& f, const FreeVector& mu);

// (delta(x) - delta(y)) / d(x,y) with the base entry dropped.
FreeVector molecule_vector(SpacePtr space, PointId x, PointId y);
FreeVector molecule_vector(SpacePtr space, const Molecule& m);

struct DualNormResult {
  Rational norm;
  LipFunction witness;  // norm <= 1, <witness, mu> = norm
  std::size_t pivots = 0;
};

// max sum mu(p) v_p over 1-Lipschitz v vanishing at the base, solved by the
// exact simplex. With restrict_to_support the program only carries the
// support of mu plus the base; the optimum is unchanged because every
// 1-Lipschitz function on a subset extends, and the witness is the McShane
// extension of the restricted optimum.
DualNormResult free_norm_dual(const FreeVector& mu, bool restrict_to_support = true);

struct Flow {
  PointId from;
  PointId to;
  Rational amount;
};

struct TransportPlan {
  std::vector<Flow> flows;
};

// sum flow * d(from, to).
Rational plan_cost(const MetricSpace& space, const TransportPlan& plan);

struct FlowNormResult {
  Rational norm;
  TransportPlan plan;
};

// Minimum-cost transshipment with net outflow mu(p) at every non-base point;
// the base absorbs the balance. Independent of the simplex code.
FlowNormResult free_norm_flow(const FreeVector& mu);

// Net outflow of plan at p equals mu(p) for every non-base p.
bool plan_balances(const TransportPlan& plan, const FreeVector& mu);

// ||m1 - m2|| through free_norm_dual.
Rational molecule_distance(SpacePtr space, const Molecule& m1, const Molecule& m2);

struct MoleculeDistanceCheck {
  Rational distance;
  Rational upper;                 // 2 (d(x,u) + d(y,v)) / max(d(x,y), d(u,v))
  std::optional<Rational> lower;  // max(d(x,u), d(y,v)) / min(d(x,y), d(u,v)), only when distance < 1
  bool upper_ok = false;
  bool lower_ok = false;
};

MoleculeDistanceCheck check_molecule_distance(SpacePtr space, const Molecule& m1, const Molecule& m2);

}  // namespace freelip
