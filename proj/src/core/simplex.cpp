#include "simplex.hpp"

#include "error.hpp"

namespace freelip::lp {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows, std::vector<Rational>(cols + 1)), cols_(cols) {}

  std::vector<Rational>& row(std::size_t r) { return rows_[r]; }
  Rational& rhs(std::size_t r) { return rows_[r][cols_]; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<Rational>& objective() { return objective_; }

  void erase_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  // Reduced costs for cost vector c; the last entry holds -(objective value).
  void price(const std::vector<Rational>& c) {
    objective_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) objective_[j] = c[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = c[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(rows_[r][j]) != 0) objective_[j] -= cb * rows_[r][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    std::vector<Rational>& prow = rows_[r];
    const Rational inv = 1 / prow[q];
    nonzero_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& target) {
      if (sgn(target[q]) == 0) return;
      const Rational factor = target[q];
      for (std::size_t j : nonzero_) target[j] -= factor * prow[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(objective_);
    basis_[r] = q;
  }

  // Runs Bland-rule iterations on the current objective. Columns at or beyond
  // `column_limit` never enter. Returns false when unbounded.
  bool optimize(std::size_t column_limit, std::size_t& pivots) {
    for (;;) {
      std::size_t entering = column_limit;
      for (std::size_t j = 0; j < column_limit; ++j) {
        if (sgn(objective_[j]) > 0) {
          entering = j;
          break;
        }
      }
      if (entering == column_limit) return true;
      std::size_t leaving = rows_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& a = rows_[r][entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = rows_[r][cols_] / a;
        if (leaving == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_.size()) return false;
      pivot(leaving, entering);
      ++pivots;
    }
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::size_t cols_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> objective_;
  std::vector<std::size_t> nonzero_;
};

}  // namespace

Constraint& Problem::add(Relation relation, Rational rhs) {
  constraints.push_back(Constraint{std::vector<Rational>(num_vars), relation, std::move(rhs)});
  return constraints.back();
}

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  if (problem.objective.size() != n)
    throw Error(ErrorCode::kInvalidArgument, "objective length does not match the variable count");
  for (const auto& c : problem.constraints) {
    if (c.coeffs.size() != n)
      throw Error(ErrorCode::kInvalidArgument, "constraint length does not match the variable count");
  }

  // Normalize to nonnegative right-hand sides and count auxiliary columns.
  struct Row {
    const Constraint* source;
    bool flipped;
    Relation relation;
  };
  std::vector<Row> rows;
  std::size_t slack_count = 0, artificial_count = 0;
  for (const auto& c : problem.constraints) {
    Row row{&c, sgn(c.rhs) < 0, c.relation};
    if (row.flipped) {
      if (row.relation == Relation::kLessEqual) row.relation = Relation::kGreaterEqual;
      else if (row.relation == Relation::kGreaterEqual) row.relation = Relation::kLessEqual;
    }
    if (row.relation != Relation::kEqual) ++slack_count;
    if (row.relation != Relation::kLessEqual) ++artificial_count;
    rows.push_back(row);
  }

  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + slack_count;
  const std::size_t cols = first_artificial + artificial_count;
  Tableau t(rows.size(), cols);
  t.basis().assign(rows.size(), 0);
  std::size_t next_slack = first_slack, next_artificial = first_artificial;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& dst = t.row(r);
    const Constraint& src = *rows[r].source;
    for (std::size_t j = 0; j < n; ++j) dst[j] = rows[r].flipped ? Rational(-src.coeffs[j]) : src.coeffs[j];
    t.rhs(r) = rows[r].flipped ? Rational(-src.rhs) : src.rhs;
    switch (rows[r].relation) {
      case Relation::kLessEqual:
        dst[next_slack] = 1;
        t.basis()[r] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        dst[next_slack++] = -1;
        dst[next_artificial] = 1;
        t.basis()[r] = next_artificial++;
        break;
      case Relation::kEqual:
        dst[next_artificial] = 1;
        t.basis()[r] = next_artificial++;
        break;
    }
  }

  Solution solution;
  if (artificial_count > 0) {
    std::vector<Rational> phase1(cols);
    for (std::size_t j = first_artificial; j < cols; ++j) phase1[j] = -1;
    t.price(phase1);
    t.optimize(cols, solution.pivots);
    if (sgn(t.objective()[cols]) != 0) {
      solution.status = Status::kInfeasible;
      return solution;
    }
    // Drive zero-valued artificials out of the basis; rows that cannot be
    // pivoted are linearly dependent and dropped.
    for (std::size_t r = 0; r < t.num_rows();) {
      if (t.basis()[r] < first_artificial) {
        ++r;
        continue;
      }
      std::size_t q = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(t.row(r)[j]) != 0) {
          q = j;
          break;
        }
      }
      if (q == first_artificial) {
        t.erase_row(r);
      } else {
        t.pivot(r, q);
        ++solution.pivots;
        ++r;
      }
    }
  }

  std::vector<Rational> cost(cols);
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
  t.price(cost);
  if (!t.optimize(first_artificial, solution.pivots)) {
    solution.status = Status::kUnbounded;
    return solution;
  }
  solution.status = Status::kOptimal;
  solution.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    if (t.basis()[r] < n) solution.x[t.basis()[r]] = t.rhs(r);
  }
  solution.value = 0;
  for (std::size_t j = 0; j < n; ++j) solution.value += problem.objective[j] * solution.x[j];
  return solution;
}

}  // namespace freelip::lp
