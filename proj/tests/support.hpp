#pragma once

#include <string>
#include <vector>

#include "metric_core.hpp"

namespace freelip::testing {

inline Rational q(const char* text) { return parse_rational(text); }

// Points of the real line with |.|, labelled by their coordinates; the first
// coordinate is the base.
inline SpacePtr line(const std::vector<Rational>& coords) {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> dist(coords.size(), std::vector<Rational>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    labels.push_back(to_string(coords[i]));
    for (std::size_t j = 0; j < coords.size(); ++j) dist[i][j] = abs(coords[i] - coords[j]);
  }
  std::string base = labels.front();
  return MetricSpace::exact(std::move(labels), std::move(dist), base);
}

inline SpacePtr equilateral(std::size_t n = 3, const Rational& side = 1) {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "0" : "p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = i == j ? Rational(0) : side;
  }
  return MetricSpace::exact(std::move(labels), std::move(dist), "0");
}

inline SpacePtr two_points(const Rational& d = 1) {
  return MetricSpace::exact({"0", "a"}, {{0, d}, {d, 0}}, "0");
}

// Seeded random space with between 3 and maxn points drawn from a small
// sup-norm cube.
inline SpacePtr random_space(std::uint64_t seed, std::size_t maxn) {
  std::size_t n = 3 + seed % (maxn - 2);
  return random_linf_space(n, 2 + seed % 2, 4, seed * 7919 + 13);
}

inline PointId at(const SpacePtr& s, const char* label) { return s->resolve(label); }

}  // namespace freelip::testing
