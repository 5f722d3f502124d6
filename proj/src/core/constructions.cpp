#include "constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "error.hpp"

namespace freelip {
namespace {

void require_point(const MetricSpace& s, PointId p) {
  if (p.index >= s.size()) throw Error(ErrorCode::kUnknownPoint, "point index " + std::to_string(p.index) + " out of range");
}

Rational max_abs_difference(const LipFunction& a, const LipFunction& b) {
  Rational best = 0;
  for (PointId p : a.space().points()) best = std::max(best, Rational(abs(a(p) - b(p))));
  return best;
}

// Integer cube root when n is a perfect cube.
std::optional<long> cube_root(long n) {
  for (long c = 1; c * c * c <= n; ++c) {
    if (c * c * c == n) return c;
  }
  return std::nullopt;
}

}  // namespace

CurveSample make_curve(const MetricSpace& space, std::vector<PointId> points) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "a curve needs at least one point");
  CurveSample curve{std::move(points), Rational(0)};
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    require_point(space, curve.points[i]);
    if (i > 0) curve.length += space.d(curve.points[i - 1], curve.points[i]);
  }
  return curve;
}

CurveReport curve_attainment_check(const LipFunction& f, PointId p, PointId q, const CurveSample& curve,
                                   const Rational& eps) {
  const MetricSpace& s = f.space();
  make_molecule(s, p, q);
  if (sgn(eps) < 0) throw Error(ErrorCode::kInvalidArgument, "eps must be nonnegative");
  CurveReport report;
  report.norm = lip_norm(f).norm;
  if (abs(f(p) - f(q)) != report.norm * s.d(p, q))
    throw Error(ErrorCode::kNotAttaining, "f does not attain its norm at (" + s.label(p) + "," + s.label(q) + ")");
  if (curve.points.front() != p || curve.points.back() != q)
    throw Error(ErrorCode::kInvalidArgument, "curve must start at p and end at q");
  Rational length = make_curve(s, curve.points).length;
  if (length > s.d(p, q) + eps)
    throw Error(ErrorCode::kCurveTooLong, "curve length " + to_string(length) + " exceeds d(p,q) + eps");

  bool first = true;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    for (std::size_t j = i + 1; j < curve.points.size(); ++j) {
      PointId a = curve.points[i], b = curve.points[j];
      Rational slack = abs(f(a) - f(b)) - report.norm * (s.d(a, b) - eps);
      if (first || slack < report.min_slack) report.min_slack = slack;
      first = false;
      ++report.pairs_checked;
    }
  }
  if (first) report.min_slack = 0;
  report.holds = sgn(report.min_slack) >= 0;
  return report;
}

CantorPrimitive cantor_primitive(SpacePtr space, std::vector<ClosedInterval> intervals) {
  const MetricSpace& s = *space;
  const PointId o = s.base();
  for (PointId a : s.points()) {
    for (PointId b : s.points()) {
      if (s.d(a, b) != abs(s.d(a, o) - s.d(b, o)))
        throw Error(ErrorCode::kInvalidArgument,
                    "space is not a subset of the line with the base as its least point at (" + s.label(a) + "," +
                        s.label(b) + ")");
    }
  }
  std::sort(intervals.begin(), intervals.end(), [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].hi < intervals[i].lo) throw Error(ErrorCode::kInvalidArgument, "interval with hi < lo");
    if (i > 0 && intervals[i].lo <= intervals[i - 1].hi)
      throw Error(ErrorCode::kOverlappingIntervals, "intervals [" + to_string(intervals[i - 1].lo) + "," +
                                                        to_string(intervals[i - 1].hi) + "] and [" +
                                                        to_string(intervals[i].lo) + "," + to_string(intervals[i].hi) +
                                                        "] intersect");
  }

  auto mass_up_to = [&](const Rational& t) {
    Rational total = 0;
    for (const auto& iv : intervals) {
      Rational lo = std::max(iv.lo, Rational(0));
      Rational hi = std::min(iv.hi, t);
      if (hi > lo) total += hi - lo;
    }
    return total;
  };
  std::vector<Rational> values(s.size());
  for (PointId p : s.points()) values[p.index] = mass_up_to(s.d(p, o));
  CantorPrimitive out{LipFunction(space, values), Rational(0), true};
  out.norm = lip_norm(out.f).norm;
  if (out.norm > 1)
    throw Error(ErrorCode::kConstructionAssertFailed, "primitive has Lipschitz constant " + to_string(out.norm));

  std::vector<PointId> order = s.points();
  std::sort(order.begin(), order.end(), [&](PointId a, PointId b) { return s.d(a, o) < s.d(b, o); });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const Rational& a = s.d(order[i], o);
    const Rational& b = s.d(order[i + 1], o);
    bool touches = false;
    for (const auto& iv : intervals) {
      if (iv.lo < b && iv.hi > a) touches = true;
    }
    if (!touches && out.f(order[i]) != out.f(order[i + 1])) out.constant_on_gaps = false;
  }
  return out;
}

SnaReport sna_perturbation(const LipFunction& g, PointId x, PointId y, const Rational& r) {
  const MetricSpace& s = g.space();
  make_molecule(s, x, y);
  const Rational& d = s.d(x, y);
  if (d >= r) throw Error(ErrorCode::kRadiusTooSmall, "need d(x,y) < r, got d = " + to_string(d) + ", r = " + to_string(r));
  Rational g_norm = lip_norm(g).norm;
  if (g_norm != 1) throw Error(ErrorCode::kNormNotOne, "g has norm " + to_string(g_norm));

  const Rational K = (r + d) / (r - d);
  std::vector<Rational> values(s.size());
  for (PointId t : s.points()) {
    Rational cone = g(y) + K * (d - s.d(t, x));
    values[t.index] = std::max(g(t), cone);
  }
  if (sgn(values[s.base().index]) != 0)
    throw Error(ErrorCode::kBaseInBall, "the perturbation moves the base point; choose r < d(x, base)");

  SnaReport report{LipFunction(g.space_ptr(), values), K, 0, 0, 0};
  const LipFunction& h = report.perturbed;
  report.support_ok = true;
  for (PointId t : s.points()) {
    if (h(t) != g(t) && s.d(t, x) > r) report.support_ok = false;
  }
  report.fixed_at_y = h(y) == g(y);
  AttainmentReport att = lip_norm(h);
  report.norm = att.norm;
  report.norm_is_K = att.norm == K;
  report.attains_at_xy = std::find(att.pairs.begin(), att.pairs.end(), Molecule{x, y}) != att.pairs.end();
  report.sup_difference = max_abs_difference(h, g);
  report.closeness_bound = (1 + K) * (r + d);
  report.closeness_ok = report.sup_difference <= report.closeness_bound;
  return report;
}

std::vector<ClosePair> discreteness_pair_search(const MetricSpace& space, const Rational& k, const Rational& eps) {
  if (k < 2) throw Error(ErrorCode::kInvalidParameter, "k must be at least 2");
  std::vector<ClosePair> out;
  for (PointId x : space.points()) {
    for (PointId y : space.points()) {
      if (x == y || space.d(x, y) > eps) continue;
      const Rational radius = k * space.d(x, y);
      std::vector<PointId> outside;
      for (PointId t : space.points()) {
        if (space.d(t, x) > radius) outside.push_back(t);
      }
      ClosePair pair{x, y, std::nullopt};
      for (std::size_t i = 0; i < outside.size(); ++i) {
        for (std::size_t j = i + 1; j < outside.size(); ++j) {
          const Rational& v = space.d(outside[i], outside[j]);
          if (!pair.separation || v < *pair.separation) pair.separation = v;
        }
      }
      out.push_back(pair);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ClosePair& a, const ClosePair& b) {
    if (!a.separation || !b.separation) return a.separation.has_value() && !b.separation.has_value();
    return *a.separation < *b.separation;
  });
  return out;
}

bool SsdWitness::holds() const {
  for (const auto& b : bounds) {
    if (!(b.g_ok && b.sum_ok && b.lower_ok)) return false;
  }
  return true;
}

SsdWitness ssd2p_witness(const std::vector<LipFunction>& fs, PointId x, PointId y, long n) {
  if (fs.empty()) throw Error(ErrorCode::kEmptySet, "no functions given");
  const SpacePtr& space = fs.front().space_ptr();
  const MetricSpace& s = *space;
  make_molecule(s, x, y);
  auto c = n >= 8 ? cube_root(n) : std::nullopt;
  if (!c) throw Error(ErrorCode::kNotACube, "n must be a perfect cube >= 8, got " + std::to_string(n));
  for (const auto& f : fs) {
    if (!f.space().same_as(s)) throw Error(ErrorCode::kSpaceMismatch, "functions live on different spaces");
    Rational norm = lip_norm(f).norm;
    if (norm != 1) throw Error(ErrorCode::kNormNotOne, "input function has norm " + to_string(norm));
  }
  const Rational delta = s.d(x, y);
  const Rational outer = delta * n;
  const Rational inner = delta * (*c) * (*c);
  const Rational tent = delta * (*c);

  bool outside = false;
  for (PointId t : s.points()) {
    if (s.d(t, x) > outer) outside = true;
  }
  if (!outside) throw Error(ErrorCode::kBallTooLarge, "B(x, n d(x,y)) covers the whole space");
  if (s.d(s.base(), x) <= outer) throw Error(ErrorCode::kBaseInBall, "the base point lies in B(x, n d(x,y))");
  bool inner_nonempty = false;
  for (PointId t : s.points()) {
    if (t != x && s.d(t, x) <= tent) inner_nonempty = true;
  }
  if (!inner_nonempty) throw Error(ErrorCode::kInnerBallEmpty, "B(x, n^(1/3) d(x,y)) holds no point besides x");

  std::vector<Rational> h0(s.size());
  for (PointId t : s.points()) {
    const Rational& r = s.d(t, x);
    h0[t.index] = std::min(r, std::max(Rational(0), Rational(tent - r)));
  }
  Rational h_scale = lipschitz_constant(s, h0);
  for (auto& v : h0) v /= h_scale;

  SsdWitness w{{}, LipFunction(space, h0), h_scale, {}};
  const Rational gap = Rational(1) / (*c - 1);
  for (const auto& f : fs) {
    LipFunction g = flatten_on_ball(f, x, inner, outer);
    SsdBounds b;
    b.g_norm = lip_norm(g).norm;
    b.plus_norm = lip_norm(g + w.h).norm;
    b.minus_norm = lip_norm(g - w.h).norm;
    b.g_bound = 1 + Rational(1) / *c;
    b.g_bound_reachable = 1 + gap;
    b.sum_bound = b.g_norm + gap;
    b.g_ok = b.g_norm <= b.g_bound;
    b.g_reachable_ok = b.g_norm <= b.g_bound_reachable;
    b.sum_ok = b.plus_norm <= b.sum_bound && b.minus_norm <= b.sum_bound;
    b.lower_ok = b.plus_norm >= 1 && b.minus_norm >= 1;
    w.gs.push_back(std::move(g));
    w.bounds.push_back(b);
  }
  return w;
}

ClusterDecomposition cluster_decomposition(const MetricSpace& space, std::vector<PointId> centers, int depth) {
  if (depth < 1) throw Error(ErrorCode::kInvalidParameter, "depth must be at least 1");
  const PointId o = space.base();
  for (PointId a : centers) require_point(space, a);
  centers.erase(std::remove(centers.begin(), centers.end(), o), centers.end());
  centers.insert(centers.begin(), o);
  std::set<PointId> unique(centers.begin(), centers.end());
  if (unique.size() != centers.size()) throw Error(ErrorCode::kDegenerateCenters, "centers repeat a point");
  if (centers.size() >= space.size()) throw Error(ErrorCode::kDegenerateCenters, "centers cover every point");
  const std::size_t k = centers.size();

  ClusterDecomposition out;
  out.centers = centers;
  if (k >= 2) {
    std::optional<Rational> sep;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const Rational& v = space.d(centers[i], centers[j]);
        if (!sep || v < *sep) sep = v;
      }
    out.eps0 = *sep / 8;
  } else {
    Rational far = 0;
    for (PointId p : space.points()) far = std::max(far, space.d(p, o));
    out.eps0 = far / 2;
  }
  out.scale = 1 / (2 * out.eps0);
  auto dd = [&](PointId a, PointId b) { return Rational(space.d(a, b) * out.scale); };

  // Nearest center and its rescaled distance for every point.
  std::vector<std::size_t> owner(space.size());
  std::vector<Rational> reach(space.size());
  for (PointId p : space.points()) {
    for (std::size_t i = 0; i < k; ++i) {
      Rational v = dd(p, centers[i]);
      if (i == 0 || v < reach[p.index]) {
        reach[p.index] = v;
        owner[p.index] = i;
      }
    }
  }
  const Rational half(1, 2);
  std::vector<int> side(space.size(), 0);  // 1: E, 2: N, 3: both (the base)
  for (PointId p : space.points()) {
    if (reach[p.index] > half || p == o) {
      out.E.push_back(p);
      side[p.index] |= 1;
    }
    if (reach[p.index] <= half) {
      out.N.push_back(p);
      side[p.index] |= 2;
    }
  }

  out.clusters.assign(static_cast<std::size_t>(depth), std::vector<std::vector<PointId>>(k));
  out.alpha.assign(static_cast<std::size_t>(depth), std::vector<std::optional<Rational>>(k));
  out.tail.assign(k, {});
  std::vector<int> level(space.size(), -1);  // 0 for centers, n for clusters, depth + 1 for the tail
  for (std::size_t i = 0; i < k; ++i) level[centers[i].index] = 0;
  for (PointId p : out.N) {
    if (level[p.index] == 0) continue;
    const std::size_t i = owner[p.index];
    const Rational& r = reach[p.index];
    bool placed = false;
    for (int n = 1; n <= depth && !placed; ++n) {
      if (r > Rational(1, n + 1) && r <= Rational(1, n)) {
        out.clusters[static_cast<std::size_t>(n - 1)][i].push_back(p);
        level[p.index] = n;
        placed = true;
      }
    }
    if (!placed) {
      out.tail[i].push_back(p);
      level[p.index] = depth + 1;
    }
  }
  for (int n = 1; n <= depth; ++n) {
    for (std::size_t i = 0; i < k; ++i) {
      for (PointId p : out.clusters[static_cast<std::size_t>(n - 1)][i]) {
        for (PointId q : space.points()) {
          if (q == p) continue;
          Rational v = dd(p, q);
          auto& a = out.alpha[static_cast<std::size_t>(n - 1)][i];
          if (!a || v < *a) a = v;
        }
      }
      if (const auto& a = out.alpha[static_cast<std::size_t>(n - 1)][i]) {
        Rational cand = *a * n;
        if (!out.C || cand < *out.C) out.C = cand;
      }
    }
  }

  // Partition: every point lies in E or N, only the base in both, and every
  // non-center point of N has exactly one level.
  out.partition_ok = true;
  for (PointId p : space.points()) {
    if (side[p.index] == 0 || (side[p.index] == 3 && p != o)) out.partition_ok = false;
    if ((side[p.index] & 2) && level[p.index] < 0) out.partition_ok = false;
  }

  // E against N.
  out.R = 0;
  for (PointId y : out.N) out.R = std::max(out.R, space.d(y, o));
  std::optional<Rational> en;
  for (PointId x : out.E)
    for (PointId y : out.N)
      if (x != y && (!en || space.d(x, y) < *en)) en = space.d(x, y);
  out.alpha_EN = en ? *en : Rational(1);
  out.L_EN = 1 + 2 * out.R / out.alpha_EN;
  out.en_ok = true;
  for (PointId x : out.E)
    for (PointId y : out.N) {
      if (x == y) continue;
      ++out.pairs_checked;
      if (space.d(x, o) + space.d(y, o) > out.L_EN * space.d(x, y)) out.en_ok = false;
    }

  // Clusters of N around distinct centers.
  out.L_clusters = 1;
  if (k >= 2) {
    Rational diam = 0;
    for (PointId a : out.N)
      for (PointId b : out.N) diam = std::max(diam, space.d(a, b));
    Rational sep = 0;
    bool first = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        if (first || space.d(centers[i], centers[j]) < sep) sep = space.d(centers[i], centers[j]);
        first = false;
      }
    out.L_clusters = 4 * diam / sep;
  }
  out.clusters_ok = true;
  for (PointId x : out.N)
    for (PointId y : out.N) {
      if (x == o || y == o || x == y || owner[x.index] == owner[y.index]) continue;
      ++out.pairs_checked;
      if (space.d(x, o) + space.d(y, o) > out.L_clusters * space.d(x, y)) out.clusters_ok = false;
    }

  // Levels inside one cluster, glued at its center; the base joins level 0.
  out.L_levels = out.C ? Rational(1 + 2 / *out.C) : Rational(1);
  out.levels_ok = true;
  for (std::size_t i = 0; i < k; ++i) {
    const PointId a = centers[i];
    std::vector<std::pair<PointId, int>> members{{o, 0}};
    for (PointId p : out.N)
      if (owner[p.index] == i && level[p.index] >= 1 && level[p.index] <= depth) members.push_back({p, level[p.index]});
    for (const auto& [x, n] : members)
      for (const auto& [y, m] : members) {
        if (n >= m || x == y || x == a || y == a) continue;
        ++out.pairs_checked;
        if (space.d(x, a) + space.d(y, a) > out.L_levels * space.d(x, y)) out.levels_ok = false;
      }
  }
  return out;
}

}  // namespace freelip
