#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rational.hpp"

namespace freelip {

enum class Backend { kExact, kFloat };

inline constexpr double kDefaultTolerance = 1e-9;

// Index of a point inside one MetricSpace. Only meaningful together with the
// space that produced it.
struct PointId {
  std::size_t index = 0;
  friend auto operator<=>(const PointId&, const PointId&) = default;
};

class MetricSpace;
using SpacePtr = std::shared_ptr<const MetricSpace>;

// A finite pointed metric space. Immutable once built; every factory checks
// the metric axioms before handing out a space.
class MetricSpace {
 public:
  // Square row-major matrix of exact distances. Errors name the offending
  // pair or triple.
  static SpacePtr exact(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist,
                        std::string_view base);
  // Binary floating distances; the triangle inequality may fail by at most tol.
  static SpacePtr approx(std::vector<std::string> labels, std::vector<std::vector<double>> dist,
                         std::string_view base, double tol = kDefaultTolerance);

  std::size_t size() const { return labels_.size(); }
  Backend backend() const { return backend_; }
  bool is_exact() const { return backend_ == Backend::kExact; }
  double tolerance() const { return tol_; }

  PointId base() const { return base_; }
  const std::string& label(PointId p) const { return labels_.at(p.index); }
  const std::vector<std::string>& labels() const { return labels_; }

  // Throws UnknownPoint.
  PointId resolve(std::string_view label) const;
  PointId point(std::size_t index) const;
  std::vector<PointId> points() const;

  // Exact distance; throws FloatBackendUnsupported on a float space.
  const Rational& d(PointId p, PointId q) const;
  // Distance as a double on either backend.
  double df(PointId p, PointId q) const { return approx_[p.index * size() + q.index]; }

  bool same_as(const MetricSpace& other) const;

 private:
  MetricSpace() = default;
  void index_labels();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  PointId base_;
  Backend backend_ = Backend::kExact;
  double tol_ = kDefaultTolerance;
  std::vector<Rational> exact_;
  std::vector<double> approx_;
};

}  // namespace freelip
