#pragma once

#include <cstddef>
#include <vector>

#include "rational.hpp"

namespace freelip::lp {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::vector<Rational> coeffs;  // one per variable
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// maximize objective . x subject to the constraints and x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;

  Constraint& add(Relation relation, Rational rhs);
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  Rational value;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

// Dense two-phase tableau simplex over exact rationals with Bland's
// smallest-index rule, so it cannot cycle.
Solution solve(const Problem& problem);

}  // namespace freelip::lp
