#include "metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace freelip {
namespace {

void require_distinct(PointId x, PointId y) {
  if (x == y) throw Error(ErrorCode::kSamePoint, "operation needs two distinct points");
}

void require_point(const MetricSpace& space, PointId p) {
  if (p.index >= space.size())
    throw Error(ErrorCode::kUnknownPoint, "point index " + std::to_string(p.index) + " out of range");
}

bool on_segment(const MetricSpace& space, PointId x, PointId y, PointId z) {
  if (space.is_exact()) return space.d(x, z) + space.d(z, y) == space.d(x, y);
  return std::abs(space.df(x, z) + space.df(z, y) - space.df(x, y)) <= space.tolerance();
}

std::vector<std::vector<Rational>> abs_difference_matrix(const std::vector<Rational>& coords) {
  std::vector<std::vector<Rational>> dist(coords.size(), std::vector<Rational>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = 0; j < coords.size(); ++j) dist[i][j] = abs(coords[i] - coords[j]);
  }
  return dist;
}

SpacePtr line_space(const std::vector<Rational>& coords) {
  std::vector<std::string> labels;
  labels.reserve(coords.size());
  for (const auto& c : coords) labels.push_back(to_string(c));
  return MetricSpace::exact(std::move(labels), abs_difference_matrix(coords), "0");
}

}  // namespace

Rational gromov_product(const MetricSpace& space, PointId x, PointId y, PointId z) {
  require_point(space, x);
  require_point(space, y);
  require_point(space, z);
  require_distinct(x, y);
  Rational g = (space.d(x, z) + space.d(y, z) - space.d(x, y)) / 2;
  return g;
}

double gromov_product_approx(const MetricSpace& space, PointId x, PointId y, PointId z) {
  require_point(space, x);
  require_point(space, y);
  require_point(space, z);
  require_distinct(x, y);
  return 0.5 * (space.df(x, z) + space.df(y, z) - space.df(x, y));
}

std::vector<PointId> metric_segment(const MetricSpace& space, PointId x, PointId y) {
  require_point(space, x);
  require_point(space, y);
  require_distinct(x, y);
  std::vector<PointId> out;
  for (PointId z : space.points()) {
    if (z == x || z == y || on_segment(space, x, y, z)) out.push_back(z);
  }
  return out;
}

ConcavityReport is_concave(const MetricSpace& space) {
  ConcavityReport report;
  const auto pts = space.points();
  for (PointId x : pts) {
    for (PointId y : pts) {
      if (y <= x) continue;
      for (PointId z : pts) {
        if (z == x || z == y) continue;
        if (on_segment(space, x, y, z)) {
          report.concave = false;
          report.witness = std::array<PointId, 3>{x, y, z};
          return report;
        }
      }
    }
  }
  return report;
}

SpacePtr snowflake(const MetricSpace& space, const Rational& theta, double tol) {
  if (!space.is_exact())
    throw Error(ErrorCode::kInvalidArgument, "snowflake expects an exact-backend space");
  if (theta <= 0 || theta >= 1)
    throw Error(ErrorCode::kInvalidExponent, "snowflake exponent must lie in (0,1), got " + to_string(theta));
  const double t = theta.get_d();
  const std::size_t n = space.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = std::pow(space.d(PointId{i}, PointId{j}).get_d(), t);
      dist[i][j] = dist[j][i] = v;
    }
  }
  return MetricSpace::approx(space.labels(), std::move(dist), space.label(space.base()), tol);
}

Ell1Sum ell1_sum(const std::vector<SpacePtr>& spaces) {
  if (spaces.empty()) throw Error(ErrorCode::kInvalidArgument, "ell1_sum needs at least one space");
  for (const auto& s : spaces) {
    if (!s->is_exact()) throw Error(ErrorCode::kFloatBackendUnsupported, "ell1_sum expects exact-backend spaces");
  }
  struct Member {
    std::size_t space;
    PointId point;
  };
  std::vector<std::string> labels{spaces.front()->label(spaces.front()->base())};
  std::vector<Member> members{{0, spaces.front()->base()}};
  std::set<std::string> seen{labels.front()};
  std::vector<std::vector<PointId>> parts(spaces.size());
  for (std::size_t c = 0; c < spaces.size(); ++c) {
    for (PointId p : spaces[c]->points()) {
      if (p == spaces[c]->base()) continue;
      const auto& label = spaces[c]->label(p);
      if (!seen.insert(label).second)
        throw Error(ErrorCode::kDuplicateLabel, "label '" + label + "' appears in more than one summand");
      parts[c].push_back(PointId{labels.size()});
      labels.push_back(label);
      members.push_back({c, p});
    }
  }
  const std::size_t n = labels.size();
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  auto to_base = [&](const Member& m) { return spaces[m.space]->d(m.point, spaces[m.space]->base()); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Member& a = members[i];
      const Member& b = members[j];
      if (i == 0) {
        dist[i][j] = to_base(b);
      } else if (j == 0) {
        dist[i][j] = to_base(a);
      } else if (a.space == b.space) {
        dist[i][j] = spaces[a.space]->d(a.point, b.point);
      } else {
        dist[i][j] = to_base(a) + to_base(b);
      }
    }
  }
  Ell1Sum out;
  const std::string base = labels.front();
  out.space = MetricSpace::exact(std::move(labels), std::move(dist), base);
  out.parts = std::move(parts);
  return out;
}

Rational l1_glue_constant(const MetricSpace& space, const std::vector<std::vector<PointId>>& parts) {
  std::vector<int> owner(space.size(), -1);
  for (std::size_t c = 0; c < parts.size(); ++c) {
    for (PointId p : parts[c]) {
      if (p.index >= space.size()) throw Error(ErrorCode::kInvalidPartition, "partition names an unknown point");
      if (p == space.base()) throw Error(ErrorCode::kInvalidPartition, "partition must not contain the base point");
      if (owner[p.index] != -1)
        throw Error(ErrorCode::kInvalidPartition, "point '" + space.label(p) + "' lies in two parts");
      owner[p.index] = static_cast<int>(c);
    }
  }
  for (PointId p : space.points()) {
    if (p != space.base() && owner[p.index] == -1)
      throw Error(ErrorCode::kInvalidPartition, "point '" + space.label(p) + "' is not covered by the partition");
  }
  const PointId o = space.base();
  Rational best = 1;
  for (PointId x : space.points()) {
    for (PointId y : space.points()) {
      if (owner[x.index] < 0 || owner[y.index] < 0 || owner[x.index] >= owner[y.index]) continue;
      Rational ratio = (space.d(x, o) + space.d(y, o)) / space.d(x, y);
      if (ratio > best) best = ratio;
    }
  }
  return best;
}

SpacePtr grid_interval(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidParameter, "grid_interval needs n >= 2");
  std::vector<Rational> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational c(static_cast<long>(i), static_cast<long>(n - 1));
    c.canonicalize();
    coords.push_back(c);
  }
  return line_space(coords);
}

FatCantor fat_cantor(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidParameter, "fat_cantor needs k >= 1");
  std::vector<ClosedInterval> intervals{{Rational(0), Rational(1)}};
  Rational removed(1, 4);
  for (int step = 1; step <= k; ++step) {
    std::vector<ClosedInterval> next;
    next.reserve(intervals.size() * 2);
    for (const auto& iv : intervals) {
      Rational mid = (iv.lo + iv.hi) / 2;
      next.push_back({iv.lo, mid - removed / 2});
      next.push_back({mid + removed / 2, iv.hi});
    }
    intervals = std::move(next);
    removed /= 4;
  }
  std::vector<Rational> coords;
  coords.reserve(intervals.size() * 2);
  for (const auto& iv : intervals) {
    coords.push_back(iv.lo);
    coords.push_back(iv.hi);
  }
  return FatCantor{line_space(coords), std::move(intervals)};
}

Rational fat_cantor_measure(int k) {
  Rational total = 1;
  Rational removed(1, 4);
  Rational count = 1;
  for (int step = 1; step <= k; ++step) {
    total -= count * removed;
    count *= 2;
    removed /= 4;
  }
  return total;
}

SpacePtr concave_sup_norm_family(int N) {
  if (N < 2) throw Error(ErrorCode::kInvalidParameter, "family needs N >= 2");
  // Index 0 is the base; x_n sits at 2(n-2)+1 and y_n at 2(n-2)+2.
  const std::size_t size = 1 + 2 * static_cast<std::size_t>(N - 1);
  std::vector<std::string> labels(size);
  labels[0] = "0";
  struct Tag {
    bool is_x;
    long n;
  };
  std::vector<Tag> tags(size, Tag{false, 0});
  for (long n = 2; n <= N; ++n) {
    std::size_t xi = 2 * static_cast<std::size_t>(n - 2) + 1;
    labels[xi] = "x" + std::to_string(n);
    labels[xi + 1] = "y" + std::to_string(n);
    tags[xi] = {true, n};
    tags[xi + 1] = {false, n};
  }
  auto inv = [](long n) { return Rational(1, n); };
  std::vector<std::vector<Rational>> dist(size, std::vector<Rational>(size));
  for (std::size_t i = 1; i < size; ++i) {
    const Tag& a = tags[i];
    dist[0][i] = dist[i][0] = a.is_x ? Rational(2 - inv(a.n)) : Rational(1 + inv(a.n));
    for (std::size_t j = i + 1; j < size; ++j) {
      const Tag& b = tags[j];
      Rational v;
      if (a.n == b.n) {
        v = 1 + inv(a.n);  // d(x_n, y_n)
      } else if (a.is_x && b.is_x) {
        v = 2 - inv(std::max(a.n, b.n));
      } else if (a.is_x) {
        v = 2 - inv(a.n);  // d(x_n, y_m), n != m
      } else if (b.is_x) {
        v = 2 - inv(b.n);
      } else {
        v = 1;  // d(y_n, y_m)
      }
      dist[i][j] = dist[j][i] = v;
    }
  }
  return MetricSpace::exact(std::move(labels), std::move(dist), "0");
}

SpacePtr tripod(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidParameter, "tripod index must be positive");
  const std::string x = "x" + std::to_string(n);
  const std::string y = "y" + std::to_string(n);
  Rational arm = 1 + Rational(1, n);
  std::vector<std::vector<Rational>> dist{{0, arm, arm}, {arm, 0, 2}, {arm, 2, 0}};
  return MetricSpace::exact({"0", x, y}, std::move(dist), "0");
}

Ell1Sum tripod_ell1_sum(int N) {
  if (N < 2) throw Error(ErrorCode::kInvalidParameter, "tripod sum needs N >= 2");
  std::vector<SpacePtr> parts;
  for (int n = 2; n <= N; ++n) parts.push_back(tripod(n));
  return ell1_sum(parts);
}

SpacePtr uniform_gap_space(std::size_t n, const Rational& D, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidParameter, "uniform_gap_space needs n >= 2");
  if (D < 1 || D >= 2) throw Error(ErrorCode::kInvalidParameter, "uniform_gap_space needs 1 <= D < 2");
  constexpr long kSteps = 1000;
  Rng rng(seed);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational step(static_cast<long>(rng.below(kSteps)), kSteps);
      step.canonicalize();
      dist[i][j] = dist[j][i] = 1 + (D - 1) * step;
    }
  }
  return MetricSpace::exact(std::move(labels), std::move(dist), "p0");
}

SpacePtr random_linf_space(std::size_t n, std::size_t dim, std::uint64_t side, std::uint64_t seed) {
  if (n < 1 || dim < 1 || side < 1) throw Error(ErrorCode::kInvalidParameter, "random space needs n, dim, side >= 1");
  std::uint64_t cells = 1;
  for (std::size_t k = 0; k < dim && cells <= n; ++k) cells *= side + 1;
  if (cells < n) throw Error(ErrorCode::kInvalidParameter, "cube too small for the requested number of points");
  Rng rng(seed);
  std::set<std::vector<std::uint64_t>> used;
  std::vector<std::vector<std::uint64_t>> pts;
  while (pts.size() < n) {
    std::vector<std::uint64_t> p(dim);
    for (auto& c : p) c = rng.below(side + 1);
    if (used.insert(p).second) pts.push_back(std::move(p));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint64_t m = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        std::uint64_t a = pts[i][k], b = pts[j][k];
        m = std::max(m, a > b ? a - b : b - a);
      }
      Rational v(static_cast<long>(m), static_cast<long>(side));
      v.canonicalize();
      dist[i][j] = dist[j][i] = v;
    }
  }
  return MetricSpace::exact(std::move(labels), std::move(dist), "p0");
}

}  // namespace freelip
