#pragma once

#include "mincode/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mincode {

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { minimize, maximize };

struct LpTerm {
  std::size_t var;
  Rational coef;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  Relation relation = Relation::equal;
  Rational rhs;
};

struct LpVariable {
  std::string name;
  bool integral = false;
};

/// Linear program over nonnegative variables with exact coefficients.
/// Every variable carries an implicit lower bound of zero; upper bounds are
/// ordinary rows.
class LinearProgram {
 public:
  std::size_t add_variable(std::string name, bool integral = false);
  /// Terms on the same variable are merged; zero coefficients dropped.
  std::size_t add_row(std::string name, std::vector<LpTerm> terms, Relation relation, Rational rhs);
  void set_objective(Sense sense, std::vector<LpTerm> terms);
  void mark_integral(std::size_t var, bool integral = true) { variables_.at(var).integral = integral; }

  const std::vector<LpVariable>& variables() const noexcept { return variables_; }
  const std::vector<LpRow>& rows() const noexcept { return rows_; }
  const std::vector<LpTerm>& objective() const noexcept { return objective_; }
  Sense sense() const noexcept { return sense_; }
  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::optional<std::size_t> find_variable(const std::string& name) const;
  bool has_integrality() const;

  Rational row_activity(std::size_t row, const std::vector<Rational>& values) const;
  Rational objective_value(const std::vector<Rational>& values) const;
  /// Names of rows (and "var>=0" bounds) not satisfied exactly by `values`.
  std::vector<std::string> violations(const std::vector<Rational>& values) const;

 private:
  std::vector<LpVariable> variables_;
  std::vector<LpRow> rows_;
  std::vector<LpTerm> objective_;
  Sense sense_ = Sense::minimize;
};

enum class LpStatus { optimal, infeasible, unbounded };
std::string to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational objective;
  std::vector<Rational> values;
  /// Structural variables basic at the optimum, by index.
  std::vector<std::size_t> basis;
  /// Simplex pivots (solve_lp) or total pivots over all nodes (solve_ilp).
  std::size_t pivots = 0;
  /// Branch-and-bound nodes solved; 1 for a plain LP.
  std::size_t nodes = 1;
};

/// Two-phase primal simplex in exact arithmetic with Bland's rule. Integrality
/// marks are rejected with `std::invalid_argument`. An optimal assignment is
/// re-checked against every row before it is returned.
LpResult solve_lp(const LinearProgram& lp);

struct BranchOptions {
  std::size_t node_limit = 20000;
};

/// Best-first branch-and-bound over `solve_lp` relaxations, branching on the
/// lowest-index fractional integral variable. Throws `ResourceLimitError` if
/// the node budget runs out before optimality is proven.
LpResult solve_ilp(const LinearProgram& lp, const BranchOptions& options = {});

/// CPLEX-style LP text. Coefficients are written as "p/q".
std::string write_lp_format(const LinearProgram& lp);

}  // namespace mincode
