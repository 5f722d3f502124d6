#include "free_space.hpp"

#include <algorithm>

#include "error.hpp"
#include "simplex.hpp"

namespace freelip {
namespace {

void require_exact(const MetricSpace& space) {
  if (!space.is_exact())
    throw Error(ErrorCode::kFloatBackendUnsupported, "free-space vectors need an exact-backend space");
}

}  // namespace

FreeVector::FreeVector(SpacePtr space) : space_(std::move(space)) { require_exact(*space_); }

FreeVector::FreeVector(SpacePtr space, const std::map<std::size_t, Rational>& coeffs) : FreeVector(std::move(space)) {
  for (const auto& [index, value] : coeffs) {
    if (index >= space_->size()) throw Error(ErrorCode::kUnknownPoint, "coefficient for an unknown point");
    add(index, value);
  }
}

FreeVector FreeVector::delta(SpacePtr space, PointId p) {
  FreeVector v(std::move(space));
  if (p.index >= v.space().size()) throw Error(ErrorCode::kUnknownPoint, "delta of an unknown point");
  v.add(p.index, 1);
  return v;
}

void FreeVector::add(std::size_t index, const Rational& value) {
  if (index == space_->base().index || sgn(value) == 0) return;
  auto [it, inserted] = coeffs_.emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (sgn(it->second) == 0) coeffs_.erase(it);
  }
}

Rational FreeVector::coeff(PointId p) const {
  auto it = coeffs_.find(p.index);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

FreeVector FreeVector::operator+(const FreeVector& other) const {
  if (!space_->same_as(other.space())) throw Error(ErrorCode::kSpaceMismatch, "vectors live on different spaces");
  FreeVector out(*this);
  for (const auto& [index, value] : other.coeffs_) out.add(index, value);
  return out;
}

FreeVector FreeVector::operator-(const FreeVector& other) const { return *this + (-other); }

FreeVector FreeVector::scaled(const Rational& c) const {
  FreeVector out(space_);
  for (const auto& [index, value] : coeffs_) out.add(index, c * value);
  return out;
}

bool FreeVector::operator==(const FreeVector& other) const {
  return space_->same_as(other.space()) && coeffs_ == other.coeffs_;
}

Rational pairing(const LipFunction& f, const FreeVector& mu) {
  if (!f.space().same_as(mu.space())) throw Error(ErrorCode::kSpaceMismatch, "function and vector live on different spaces");
  Rational total = 0;
  for (const auto& [index, value] : mu.coeffs()) total += value * f(PointId{index});
  return total;
}

FreeVector molecule_vector(SpacePtr space, PointId x, PointId y) {
  Molecule m = make_molecule(*space, x, y);
  return molecule_vector(std::move(space), m);
}

FreeVector molecule_vector(SpacePtr space, const Molecule& m) {
  const Rational inv = 1 / space->d(m.x, m.y);
  std::map<std::size_t, Rational> c;
  c[m.x.index] += inv;
  c[m.y.index] -= inv;
  return FreeVector(std::move(space), c);
}

DualNormResult free_norm_dual(const FreeVector& mu, bool restrict_to_support) {
  const MetricSpace& s = mu.space();
  const PointId o = s.base();
  std::vector<PointId> vars;
  if (restrict_to_support) {
    for (const auto& [index, value] : mu.coeffs()) vars.push_back(PointId{index});
  } else {
    for (PointId p : s.points()) {
      if (p != o) vars.push_back(p);
    }
  }

  // Substituting v_p = w_p - d(p,0) keeps every right-hand side nonnegative,
  // so the all-slack basis is feasible from the start.
  lp::Problem problem;
  problem.num_vars = vars.size();
  problem.objective.resize(vars.size());
  Rational offset = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    problem.objective[i] = mu.coeff(vars[i]);
    offset += problem.objective[i] * s.d(vars[i], o);
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto& upper = problem.add(lp::Relation::kLessEqual, 2 * s.d(vars[i], o));
    upper.coeffs[i] = 1;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (i == j) continue;
      auto& c = problem.add(lp::Relation::kLessEqual, s.d(vars[i], vars[j]) + s.d(vars[i], o) - s.d(vars[j], o));
      c.coeffs[i] = 1;
      c.coeffs[j] = -1;
    }
  }
  lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::kOptimal)
    throw Error(ErrorCode::kInternal, "norm program did not reach an optimum");

  std::vector<PartialValue> partial{{o, Rational(0)}};
  for (std::size_t i = 0; i < vars.size(); ++i) partial.push_back({vars[i], sol.x[i] - s.d(vars[i], o)});
  LipFunction witness = mcshane_extend(mu.space_ptr(), partial, 1);
  return DualNormResult{sol.value - offset, std::move(witness), sol.pivots};
}

Rational molecule_distance(SpacePtr space, const Molecule& m1, const Molecule& m2) {
  make_molecule(*space, m1.x, m1.y);
  make_molecule(*space, m2.x, m2.y);
  if (m1 == m2) return 0;
  FreeVector diff = molecule_vector(space, m1) - molecule_vector(space, m2);
  return free_norm_dual(diff).norm;
}

MoleculeDistanceCheck check_molecule_distance(SpacePtr space, const Molecule& m1, const Molecule& m2) {
  const MetricSpace& s = *space;
  MoleculeDistanceCheck check;
  check.distance = molecule_distance(space, m1, m2);
  const Rational& dxy = s.d(m1.x, m1.y);
  const Rational& duv = s.d(m2.x, m2.y);
  const Rational& dxu = s.d(m1.x, m2.x);
  const Rational& dyv = s.d(m1.y, m2.y);
  check.upper = 2 * (dxu + dyv) / std::max(dxy, duv);
  check.upper_ok = check.distance <= check.upper;
  if (check.distance < 1) {
    check.lower = std::max(dxu, dyv) / std::min(dxy, duv);
    check.lower_ok = *check.lower <= check.distance;
  } else {
    check.lower_ok = true;
  }
  return check;
}

}  // namespace freelip
