#include "lip_core.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace freelip {
namespace {

void require_exact(const MetricSpace& space) {
  if (!space.is_exact())
    throw Error(ErrorCode::kFloatBackendUnsupported, "Lipschitz functions live on exact-backend spaces");
}

void require_same_space(const LipFunction& a, const LipFunction& b) {
  if (!a.space().same_as(b.space())) throw Error(ErrorCode::kSpaceMismatch, "functions live on different spaces");
}

std::vector<Rational> lower_extension(const MetricSpace& space, const std::vector<PartialValue>& partial,
                                      const Rational& L) {
  std::vector<Rational> out(space.size());
  for (PointId t : space.points()) {
    bool first = true;
    for (const auto& pv : partial) {
      Rational v = pv.value + L * space.d(t, pv.point);
      if (first || v < out[t.index]) {
        out[t.index] = std::move(v);
        first = false;
      }
    }
  }
  return out;
}

void check_partial_lipschitz(const MetricSpace& space, const std::vector<PartialValue>& partial,
                             const Rational& L) {
  for (std::size_t i = 0; i < partial.size(); ++i) {
    for (std::size_t j = 0; j < partial.size(); ++j) {
      if (i == j) continue;
      const auto& a = partial[i];
      const auto& b = partial[j];
      if (a.point == b.point) {
        if (a.value != b.value)
          throw Error(ErrorCode::kInvalidArgument, "partial function assigns two values to '" + space.label(a.point) + "'");
        continue;
      }
      if (a.value - b.value > L * space.d(a.point, b.point))
        throw Error(ErrorCode::kNotLipschitz, "partial function is not " + to_string(L) + "-Lipschitz at (" +
                                                  space.label(a.point) + "," + space.label(b.point) + ")");
    }
  }
}

}  // namespace

Molecule make_molecule(const MetricSpace& space, PointId x, PointId y) {
  if (x.index >= space.size() || y.index >= space.size())
    throw Error(ErrorCode::kUnknownPoint, "molecule endpoint out of range");
  if (x == y) throw Error(ErrorCode::kSamePoint, "molecule needs distinct points, got '" + space.label(x) + "' twice");
  return {x, y};
}

std::vector<Molecule> all_molecules(const MetricSpace& space) {
  std::vector<Molecule> out;
  out.reserve(space.size() * (space.size() - 1));
  for (PointId x : space.points()) {
    for (PointId y : space.points()) {
      if (x != y) out.push_back({x, y});
    }
  }
  return out;
}

LipFunction::LipFunction(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  require_exact(*space_);
  if (values_.size() != space_->size())
    throw Error(ErrorCode::kInvalidArgument, "function needs one value per point");
  if (values_[space_->base().index] != 0)
    throw Error(ErrorCode::kInvalidArgument, "function must vanish at the base point");
}

LipFunction LipFunction::zero(SpacePtr space) {
  const std::size_t n = space->size();
  return LipFunction(std::move(space), std::vector<Rational>(n));
}

LipFunction LipFunction::distance_to(SpacePtr space, PointId p) {
  std::vector<Rational> v(space->size());
  const PointId o = space->base();
  for (PointId t : space->points()) v[t.index] = space->d(t, p) - space->d(o, p);
  return LipFunction(std::move(space), std::move(v));
}

LipFunction LipFunction::operator+(const LipFunction& other) const {
  require_same_space(*this, other);
  std::vector<Rational> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return LipFunction(space_, std::move(v));
}

LipFunction LipFunction::operator-(const LipFunction& other) const {
  require_same_space(*this, other);
  std::vector<Rational> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
  return LipFunction(space_, std::move(v));
}

LipFunction LipFunction::scaled(const Rational& c) const {
  std::vector<Rational> v(values_);
  for (auto& x : v) x *= c;
  return LipFunction(space_, std::move(v));
}

AttainmentReport lip_norm(const LipFunction& f) {
  const MetricSpace& s = f.space();
  AttainmentReport report;
  report.norm = 0;
  for (PointId x : s.points()) {
    for (PointId y : s.points()) {
      if (x == y) continue;
      Rational slope = (f(x) - f(y)) / s.d(x, y);
      if (slope > report.norm) {
        report.norm = slope;
        report.pairs.clear();
        report.pairs.push_back({x, y});
      } else if (slope == report.norm && slope > 0) {
        report.pairs.push_back({x, y});
      }
    }
  }
  return report;
}

Rational lipschitz_constant(const MetricSpace& space, const std::vector<Rational>& values,
                            const std::vector<PointId>& domain) {
  const std::vector<PointId> pts = domain.empty() ? space.points() : domain;
  Rational best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) continue;
      Rational slope = abs(values[pts[i].index] - values[pts[j].index]) / space.d(pts[i], pts[j]);
      if (slope > best) best = slope;
    }
  }
  return best;
}

Rational pairing(const LipFunction& f, const Molecule& m) {
  const MetricSpace& s = f.space();
  if (m.x.index >= s.size() || m.y.index >= s.size())
    throw Error(ErrorCode::kSpaceMismatch, "molecule does not belong to the function's space");
  if (m.x == m.y) throw Error(ErrorCode::kSamePoint, "degenerate molecule");
  return (f(m.x) - f(m.y)) / s.d(m.x, m.y);
}

LipFunction mcshane_extend(SpacePtr space, const std::vector<PartialValue>& partial, const Rational& L) {
  require_exact(*space);
  if (L < 0) throw Error(ErrorCode::kInvalidArgument, "Lipschitz constant must be nonnegative");
  const PointId o = space->base();
  auto base_it = std::find_if(partial.begin(), partial.end(), [&](const PartialValue& pv) { return pv.point == o; });
  if (base_it == partial.end()) throw Error(ErrorCode::kBaseMissing, "partial function does not contain the base point");
  if (base_it->value != 0) throw Error(ErrorCode::kBaseMissing, "partial function must vanish at the base point");
  for (const auto& pv : partial) {
    if (pv.point.index >= space->size()) throw Error(ErrorCode::kUnknownPoint, "partial function names an unknown point");
  }
  check_partial_lipschitz(*space, partial, L);
  auto values = lower_extension(*space, partial, L);
  return LipFunction(std::move(space), std::move(values));
}

LipFunction mcshane_extend_rebased(SpacePtr space, const std::vector<PartialValue>& partial, const Rational& L) {
  require_exact(*space);
  if (partial.empty()) throw Error(ErrorCode::kEmptyRegion, "partial function has an empty domain");
  auto values = lower_extension(*space, partial, L);
  const Rational shift = values[space->base().index];
  for (auto& v : values) v -= shift;
  return LipFunction(std::move(space), std::move(values));
}

CombinationReport disjoint_support_combination(const std::vector<LipFunction>& fs,
                                               const std::vector<Rational>& coeffs) {
  if (fs.empty()) throw Error(ErrorCode::kInvalidArgument, "combination needs at least one function");
  if (fs.size() != coeffs.size()) throw Error(ErrorCode::kInvalidArgument, "one coefficient per function required");
  const MetricSpace& s = fs.front().space();
  std::vector<int> owner(s.size(), -1);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    require_same_space(fs.front(), fs[j]);
    if (lip_norm(fs[j]).norm > 1)
      throw Error(ErrorCode::kNormExceedsOne, "function " + std::to_string(j) + " has Lipschitz norm above 1");
    for (PointId p : s.points()) {
      if (fs[j](p) == 0) continue;
      if (owner[p.index] >= 0)
        throw Error(ErrorCode::kOverlappingSupports, "supports of functions " + std::to_string(owner[p.index]) +
                                                         " and " + std::to_string(j) + " meet at '" + s.label(p) + "'");
      owner[p.index] = static_cast<int>(j);
    }
  }
  std::vector<Rational> v(s.size());
  Rational biggest = 0;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (abs(coeffs[j]) > biggest) biggest = abs(coeffs[j]);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += coeffs[j] * fs[j].values()[i];
  }
  LipFunction combo(fs.front().space_ptr(), std::move(v));
  Rational norm = lip_norm(combo).norm;
  Rational bound = 2 * biggest;
  bool holds = norm <= bound;
  return CombinationReport{std::move(combo), std::move(norm), std::move(bound), holds};
}

LipFunction flatten_on_ball(const LipFunction& f, PointId center, const Rational& inner_radius,
                            const Rational& outer_radius) {
  const MetricSpace& s = f.space();
  if (center.index >= s.size()) throw Error(ErrorCode::kUnknownPoint, "ball center out of range");
  if (inner_radius <= 0) throw Error(ErrorCode::kEmptyRegion, "inner radius must be positive");
  if (outer_radius < inner_radius) throw Error(ErrorCode::kInvalidArgument, "outer radius below inner radius");
  std::vector<PartialValue> partial;
  std::vector<PointId> domain;
  std::vector<Rational> raw(s.size());
  for (PointId t : s.points()) {
    const Rational& r = s.d(t, center);
    if (r <= inner_radius) {
      partial.push_back({t, f(center)});
    } else if (r > outer_radius) {
      partial.push_back({t, f(t)});
    } else {
      continue;
    }
    raw[t.index] = partial.back().value;
    domain.push_back(t);
  }
  Rational L = lipschitz_constant(s, raw, domain);
  return mcshane_extend_rebased(f.space_ptr(), partial, L);
}

}  // namespace freelip
