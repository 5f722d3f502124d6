#include "metric_space.hpp"

#include <cmath>

#include "error.hpp"

namespace freelip {
namespace {

template <class Matrix>
void check_square(const std::vector<std::string>& labels, const Matrix& dist) {
  if (labels.empty()) throw Error(ErrorCode::kInvalidArgument, "metric space needs at least one point");
  if (dist.size() != labels.size())
    throw Error(ErrorCode::kInvalidArgument, "distance matrix has " + std::to_string(dist.size()) +
                                                 " rows for " + std::to_string(labels.size()) + " labels");
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i].size() != labels.size())
      throw Error(ErrorCode::kInvalidArgument, "distance matrix row " + std::to_string(i) + " has wrong length");
  }
}

std::string pair_text(const std::vector<std::string>& labels, std::size_t i, std::size_t j) {
  return "(" + labels[i] + "," + labels[j] + ")";
}

std::string triple_text(const std::vector<std::string>& labels, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + labels[i] + "," + labels[j] + "," + labels[k] + ")";
}

}  // namespace

void MetricSpace::index_labels() {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw Error(ErrorCode::kDuplicateLabel, "duplicate label '" + labels_[i] + "'");
  }
}

SpacePtr MetricSpace::exact(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist,
                            std::string_view base) {
  check_square(labels, dist);
  const std::size_t n = labels.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0)
      throw Error(ErrorCode::kNonzeroDiagonal, "nonzero diagonal at " + pair_text(labels, i, i));
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[i][j] < 0)
        throw Error(ErrorCode::kInvalidArgument, "negative distance at " + pair_text(labels, i, j));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i])
        throw Error(ErrorCode::kAsymmetricMatrix, "asymmetric entries at " + pair_text(labels, i, j));
      if (dist[i][j] == 0)
        throw Error(ErrorCode::kZeroOffDiagonal, "zero distance between distinct points " + pair_text(labels, i, j));
    }
  }
  // Reported as (x,y,z) with d(x,y) > d(x,z) + d(z,y).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k])
          throw Error(ErrorCode::kTriangleViolation,
                      "triangle inequality fails at " + triple_text(labels, i, k, j));
      }
    }
  }

  std::shared_ptr<MetricSpace> space(new MetricSpace());
  space->labels_ = std::move(labels);
  space->index_labels();
  space->backend_ = Backend::kExact;
  space->exact_.reserve(n * n);
  space->approx_.reserve(n * n);
  for (auto& row : dist) {
    for (auto& v : row) {
      space->approx_.push_back(v.get_d());
      space->exact_.push_back(std::move(v));
    }
  }
  space->base_ = space->resolve(base);
  return space;
}

SpacePtr MetricSpace::approx(std::vector<std::string> labels, std::vector<std::vector<double>> dist,
                             std::string_view base, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  check_square(labels, dist);
  const std::size_t n = labels.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0.0)
      throw Error(ErrorCode::kNonzeroDiagonal, "nonzero diagonal at " + pair_text(labels, i, i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(dist[i][j]) || dist[i][j] < 0)
        throw Error(ErrorCode::kInvalidArgument, "invalid distance at " + pair_text(labels, i, j));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i])
        throw Error(ErrorCode::kAsymmetricMatrix, "asymmetric entries at " + pair_text(labels, i, j));
      if (dist[i][j] == 0.0)
        throw Error(ErrorCode::kZeroOffDiagonal, "zero distance between distinct points " + pair_text(labels, i, j));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k] + tol)
          throw Error(ErrorCode::kTriangleViolation,
                      "triangle inequality fails beyond tolerance at " + triple_text(labels, i, k, j));
      }
    }
  }

  std::shared_ptr<MetricSpace> space(new MetricSpace());
  space->labels_ = std::move(labels);
  space->index_labels();
  space->backend_ = Backend::kFloat;
  space->tol_ = tol;
  space->approx_.reserve(n * n);
  for (const auto& row : dist) space->approx_.insert(space->approx_.end(), row.begin(), row.end());
  space->base_ = space->resolve(base);
  return space;
}

PointId MetricSpace::resolve(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw Error(ErrorCode::kUnknownPoint, "unknown point '" + std::string(label) + "'");
  return PointId{it->second};
}

PointId MetricSpace::point(std::size_t index) const {
  if (index >= size()) throw Error(ErrorCode::kUnknownPoint, "point index " + std::to_string(index) + " out of range");
  return PointId{index};
}

std::vector<PointId> MetricSpace::points() const {
  std::vector<PointId> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = PointId{i};
  return out;
}

const Rational& MetricSpace::d(PointId p, PointId q) const {
  if (backend_ != Backend::kExact)
    throw Error(ErrorCode::kFloatBackendUnsupported, "exact distance requested from a float-backend space");
  return exact_[p.index * size() + q.index];
}

bool MetricSpace::same_as(const MetricSpace& other) const {
  if (this == &other) return true;
  return labels_ == other.labels_ && base_ == other.base_ && backend_ == other.backend_ &&
         exact_ == other.exact_ && approx_ == other.approx_;
}

}  // namespace freelip
