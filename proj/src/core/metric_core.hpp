#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "metric_space.hpp"

namespace freelip {

// (x,y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2. Requires x != y.
Rational gromov_product(const MetricSpace& space, PointId x, PointId y, PointId z);
double gromov_product_approx(const MetricSpace& space, PointId x, PointId y, PointId z);

// All z with d(x,z) + d(z,y) = d(x,y) (within the space tolerance on the
// float backend). Always contains x and y.
std::vector<PointId> metric_segment(const MetricSpace& space, PointId x, PointId y);

struct ConcavityReport {
  bool concave = true;
  // (x, y, z) with z on the segment [x, y]; set only when concave is false.
  std::optional<std::array<PointId, 3>> witness;
};

ConcavityReport is_concave(const MetricSpace& space);

// (M, d^theta) on the float backend. theta must lie strictly between 0 and 1.
SpacePtr snowflake(const MetricSpace& space, const Rational& theta, double tol = kDefaultTolerance);

struct Ell1Sum {
  SpacePtr space;
  // parts[c] lists the non-base points coming from input space c.
  std::vector<std::vector<PointId>> parts;
};

// Glues the inputs at their base points; the base label of the first input
// names the shared base.
Ell1Sum ell1_sum(const std::vector<SpacePtr>& spaces);

// Smallest C with d(x,0) + d(y,0) <= C d(x,y) across parts. 1 when there are
// no cross-part pairs.
Rational l1_glue_constant(const MetricSpace& space, const std::vector<std::vector<PointId>>& parts);

// ---------------------------------------------------------------- generators

// n equally spaced points of [0,1], base 0.
SpacePtr grid_interval(std::size_t n);

struct ClosedInterval {
  Rational lo;
  Rational hi;
};

struct FatCantor {
  SpacePtr space;
  std::vector<ClosedInterval> retained;
};

// Smith-Volterra-Cantor construction after k steps: step n removes an open
// middle interval of length 4^-n from every remaining interval. The space
// holds every endpoint of the retained intervals.
FatCantor fat_cantor(int k);

// Total length of the retained intervals after k steps, 1 - sum 2^(n-1) 4^-n.
Rational fat_cantor_measure(int k);

// {0} u {x_n, y_n : 2 <= n <= N} with x_n = (2 - 1/n) e_n and
// y_n = e_n + (1 + 1/n) e_1 inside c_0. Distances are closed-form rationals.
SpacePtr concave_sup_norm_family(int N);

// l1-sum of the tripods {0, x_n, y_n}, 2 <= n <= N, with
// d(0,x_n) = d(0,y_n) = 1 + 1/n and d(x_n,y_n) = 2.
Ell1Sum tripod_ell1_sum(int N);
SpacePtr tripod(int n);

// n points with pseudo-random distances in [1, D); any such matrix is a metric
// because D < 2.
SpacePtr uniform_gap_space(std::size_t n, const Rational& D, std::uint64_t seed);

// n distinct points of the cube {0..side}^dim with the sup distance scaled by
// 1/side. Valid by construction.
SpacePtr random_linf_space(std::size_t n, std::size_t dim, std::uint64_t side, std::uint64_t seed);

}  // namespace freelip
