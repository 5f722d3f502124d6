#pragma once

#include <optional>
#include <vector>

#include "lip_core.hpp"
#include "metric_core.hpp"

namespace freelip {

struct CurveSample {
  std::vector<PointId> points;
  Rational length;  // sum of consecutive distances
};

CurveSample make_curve(const MetricSpace& space, std::vector<PointId> points);

struct CurveReport {
  Rational norm;
  Rational min_slack;  // min |f(z1) - f(z2)| - ||f|| (d(z1,z2) - eps) over the curve
  std::size_t pairs_checked = 0;
  bool holds = false;
};

// f must attain its norm at (p, q) (NotAttaining) and the curve must run from
// p to q with length <= d(p,q) + eps (CurveTooLong).
CurveReport curve_attainment_check(const LipFunction& f, PointId p, PointId q, const CurveSample& curve,
                                   const Rational& eps);

struct CantorPrimitive {
  LipFunction f;  // length of A intersected with [0, t]
  Rational norm;
  bool constant_on_gaps = false;  // equal values across consecutive points with no mass between
};

// The space must be a subset of the line with the base as its least point;
// coordinates are recovered as distances to the base. Intervals must be
// pairwise disjoint (OverlappingIntervals).
CantorPrimitive cantor_primitive(SpacePtr space, std::vector<ClosedInterval> intervals);

struct SnaReport {
  LipFunction perturbed;
  Rational K;  // (r + d) / (r - d)
  Rational norm;
  Rational sup_difference;
  Rational closeness_bound;  // (1 + K)(r + d)
  bool support_ok = false;
  bool fixed_at_y = false;
  bool norm_is_K = false;
  bool attains_at_xy = false;
  bool closeness_ok = false;
  bool holds() const { return support_ok && fixed_at_y && norm_is_K && attains_at_xy && closeness_ok; }
};

// g'(t) = max(g(t), g(y) + K (d(x,y) - d(t,x))). Throws RadiusTooSmall when
// d(x,y) >= r, NormNotOne when ||g|| != 1 and BaseInBall when g' would not
// vanish at the base point.
SnaReport sna_perturbation(const LipFunction& g, PointId x, PointId y, const Rational& r);

struct ClosePair {
  PointId x;
  PointId y;
  std::optional<Rational> separation;  // empty: fewer than two points outside the ball
};

// Ordered pairs with 0 < d(x,y) <= eps, each with the least distance between
// two points outside the closed ball B(x, k d(x,y)). Sorted by separation,
// the empty separation last.
std::vector<ClosePair> discreteness_pair_search(const MetricSpace& space, const Rational& k, const Rational& eps);

struct SsdBounds {
  Rational g_norm;
  Rational plus_norm;   // ||g + h||
  Rational minus_norm;  // ||g - h||
  Rational g_bound;          // 1 + n^(-1/3)
  Rational g_bound_reachable;  // 1 + 1/(n^(1/3) - 1)
  Rational sum_bound;        // ||g|| + 1/(n^(1/3) - 1)
  bool g_ok = false;
  bool g_reachable_ok = false;
  bool sum_ok = false;
  bool lower_ok = false;  // both sums have norm >= 1
};

struct SsdWitness {
  std::vector<LipFunction> gs;
  LipFunction h;
  Rational h_scale;  // h = h0 / h_scale
  std::vector<SsdBounds> bounds;
  bool holds() const;
};

// n must be a perfect cube >= 8 (NotACube). With delta = d(x,y): g_i flattens
// f_i on B(x, n^(2/3) delta) and keeps it outside B(x, n delta); h is a tent of
// radius n^(1/3) delta around x. The outer ball must miss some point
// (BallTooLarge) and the base (BaseInBall).
SsdWitness ssd2p_witness(const std::vector<LipFunction>& fs, PointId x, PointId y, long n);

struct ClusterDecomposition {
  std::vector<PointId> centers;  // base first
  Rational eps0;                 // the radius rescaled to 1/2
  Rational scale;                // 1 / (2 eps0)
  std::vector<PointId> E;        // far from every center, plus the base
  std::vector<PointId> N;        // within eps0 of some center
  // clusters[n-1][i]: points of N in E_{1/(n+1)} and in B(a_i, 1/n), in
  // rescaled units, where E_r holds the points farther than r from every
  // center.
  std::vector<std::vector<std::vector<PointId>>> clusters;
  std::vector<std::vector<std::optional<Rational>>> alpha;  // rescaled isolation distances
  std::vector<std::vector<PointId>> tail;  // points of N closer to a_i than the last level
  Rational R;
  Rational alpha_EN;
  Rational L_EN;        // 1 + 2R / alpha_EN
  Rational L_clusters;  // 4 diam(N) / min d(a_i, a_j), 1 with a single center
  std::optional<Rational> C;  // min n alpha_n^i over nonempty levels
  Rational L_levels;          // 1 + 2 / C
  bool partition_ok = false;
  bool en_ok = false;
  bool clusters_ok = false;
  bool levels_ok = false;
  std::size_t pairs_checked = 0;
  bool holds() const { return partition_ok && en_ok && clusters_ok && levels_ok; }
};

// Prepends the base to the centers when missing. Throws DegenerateCenters on
// repeated centers or when the centers exhaust the space.
ClusterDecomposition cluster_decomposition(const MetricSpace& space, std::vector<PointId> centers, int depth);

}  // namespace freelip
