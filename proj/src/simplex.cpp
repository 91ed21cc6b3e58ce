#include "mincode/errors.hpp"
#include "mincode/lp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mincode {

std::size_t LinearProgram::add_variable(std::string name, bool integral) {
  variables_.push_back({std::move(name), integral});
  return variables_.size() - 1;
}

namespace {

std::vector<LpTerm> merge_terms(std::vector<LpTerm> terms, std::size_t var_count) {
  std::map<std::size_t, Rational> merged;
  for (auto& t : terms) {
    if (t.var >= var_count) throw std::out_of_range("term references an undeclared variable");
    merged[t.var] += t.coef;
  }
  std::vector<LpTerm> out;
  for (auto& [var, coef] : merged)
    if (coef != 0) out.push_back({var, coef});
  return out;
}

}  // namespace

std::size_t LinearProgram::add_row(std::string name, std::vector<LpTerm> terms, Relation relation,
                                   Rational rhs) {
  rows_.push_back({std::move(name), merge_terms(std::move(terms), variables_.size()), relation, std::move(rhs)});
  return rows_.size() - 1;
}

void LinearProgram::set_objective(Sense sense, std::vector<LpTerm> terms) {
  sense_ = sense;
  objective_ = merge_terms(std::move(terms), variables_.size());
}

std::optional<std::size_t> LinearProgram::find_variable(const std::string& name) const {
  for (std::size_t j = 0; j < variables_.size(); ++j)
    if (variables_[j].name == name) return j;
  return std::nullopt;
}

bool LinearProgram::has_integrality() const {
  return std::any_of(variables_.begin(), variables_.end(), [](const LpVariable& v) { return v.integral; });
}

Rational LinearProgram::row_activity(std::size_t row, const std::vector<Rational>& values) const {
  Rational total(0);
  for (const auto& t : rows_.at(row).terms) total += t.coef * values.at(t.var);
  return total;
}

Rational LinearProgram::objective_value(const std::vector<Rational>& values) const {
  Rational total(0);
  for (const auto& t : objective_) total += t.coef * values.at(t.var);
  return total;
}

std::vector<std::string> LinearProgram::violations(const std::vector<Rational>& values) const {
  std::vector<std::string> out;
  if (values.size() != variables_.size()) {
    out.push_back("assignment size");
    return out;
  }
  for (std::size_t j = 0; j < variables_.size(); ++j)
    if (values[j] < 0) out.push_back(variables_[j].name + ">=0");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational lhs = row_activity(i, values);
    const auto& row = rows_[i];
    const bool ok = row.relation == Relation::less_equal      ? lhs <= row.rhs
                    : row.relation == Relation::greater_equal ? lhs >= row.rhs
                                                              : lhs == row.rhs;
    if (!ok) out.push_back(row.name);
  }
  return out;
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Dense tableau over [structural | slack/surplus | artificial] columns.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : structural_(lp.variable_count()) {
    const auto& rows = lp.rows();
    std::size_t slacks = 0, artificials = 0;
    for (const auto& row : rows) {
      const bool flip = row.rhs < 0;
      Relation rel = row.relation;
      if (flip && rel != Relation::equal)
        rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
      if (rel != Relation::equal) ++slacks;
      if (rel != Relation::less_equal) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    columns_ = first_artificial_ + artificials;

    a_.assign(rows.size(), std::vector<Rational>(columns_, Rational(0)));
    rhs_.resize(rows.size());
    basis_.resize(rows.size());
    std::size_t next_slack = structural_, next_art = first_artificial_;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      const bool flip = row.rhs < 0;
      const Rational sign = flip ? Rational(-1) : Rational(1);
      Relation rel = row.relation;
      if (flip && rel != Relation::equal)
        rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
      for (const auto& t : row.terms) a_[i][t.var] = sign * t.coef;
      rhs_[i] = sign * row.rhs;
      if (rel == Relation::less_equal) {
        a_[i][next_slack] = 1;
        basis_[i] = next_slack++;
      } else {
        if (rel == Relation::greater_equal) a_[i][next_slack++] = -1;
        a_[i][next_art] = 1;
        basis_[i] = next_art++;
      }
    }
  }

  // Phase 1: minimize the sum of artificials. Returns false if infeasible.
  bool phase_one() {
    std::vector<Rational> cost(columns_, Rational(0));
    for (std::size_t j = first_artificial_; j < columns_; ++j) cost[j] = 1;
    load_costs(cost);
    run(columns_);
    if (value_ != 0) return false;
    drive_out_artificials();
    return true;
  }

  // Phase 2 on the structural objective (minimization form). Returns false
  // if unbounded.
  bool phase_two(const std::vector<Rational>& structural_cost) {
    std::vector<Rational> cost(columns_, Rational(0));
    std::copy(structural_cost.begin(), structural_cost.end(), cost.begin());
    load_costs(cost);
    return run(first_artificial_);
  }

  std::vector<Rational> assignment() const {
    std::vector<Rational> x(structural_, Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < structural_) x[basis_[i]] = rhs_[i];
    return x;
  }

  std::vector<std::size_t> structural_basis() const {
    std::vector<std::size_t> out;
    for (std::size_t b : basis_)
      if (b < structural_) out.push_back(b);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t pivots() const noexcept { return pivots_; }

 private:
  void load_costs(const std::vector<Rational>& cost) {
    reduced_ = cost;
    value_ = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < columns_; ++j)
        if (a_[i][j] != 0) reduced_[j] -= cb * a_[i][j];
      value_ += cb * rhs_[i];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false on unboundedness.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (reduced_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;

      std::optional<std::size_t> leave;
      Rational best_ratio;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / a_[i][enter];
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    auto& prow = a_[r];
    const Rational inv = 1 / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < columns_; ++j) {
      if (prow[j] != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || a_[i][c] == 0) continue;
      const Rational f = a_[i][c];
      auto& row = a_[i];
      for (std::size_t j : nz) row[j] -= f * prow[j];
      rhs_[i] -= f * rhs_[r];
    }
    if (reduced_[c] != 0) {
      const Rational f = reduced_[c];
      for (std::size_t j : nz) reduced_[j] -= f * prow[j];
      value_ += f * rhs_[r];
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < a_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial_ && !col; ++j)
        if (a_[i][j] != 0) col = j;
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        // Redundant equality row.
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t structural_;
  std::size_t first_artificial_ = 0;
  std::size_t columns_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> reduced_;
  Rational value_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  if (lp.has_integrality()) throw std::invalid_argument("solve_lp called on a program with integrality marks");
  LpResult result;
  Tableau tableau(lp);
  if (!tableau.phase_one()) {
    result.status = LpStatus::infeasible;
    result.pivots = tableau.pivots();
    return result;
  }
  std::vector<Rational> cost(lp.variable_count(), Rational(0));
  for (const auto& t : lp.objective()) cost[t.var] = lp.sense() == Sense::minimize ? t.coef : Rational(-t.coef);
  const bool bounded = tableau.phase_two(cost);
  result.pivots = tableau.pivots();
  if (!bounded) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.values = tableau.assignment();
  result.basis = tableau.structural_basis();
  result.objective = lp.objective_value(result.values);
  if (const auto bad = lp.violations(result.values); !bad.empty())
    throw std::logic_error("simplex optimum violates row '" + bad.front() + "'");
  return result;
}

std::string write_lp_format(const LinearProgram& lp) {
  std::ostringstream out;
  auto write_terms = [&](const std::vector<LpTerm>& terms) {
    if (terms.empty()) {
      out << " 0 " << lp.variables().front().name;
      return;
    }
    for (const auto& t : terms) {
      out << (t.coef < 0 ? " - " : " + ") << to_string(abs(t.coef)) << ' ' << lp.variables()[t.var].name;
    }
  };
  out << "\\ exact rational program, coefficients written as p/q\n";
  out << (lp.sense() == Sense::minimize ? "Minimize\n" : "Maximize\n") << " obj:";
  if (lp.variable_count() == 0)
    out << " 0";
  else
    write_terms(lp.objective());
  out << "\nSubject To\n";
  for (const auto& row : lp.rows()) {
    out << ' ' << row.name << ':';
    if (lp.variable_count() == 0)
      out << " 0";
    else
      write_terms(row.terms);
    out << (row.relation == Relation::less_equal ? " <= " : row.relation == Relation::equal ? " = " : " >= ")
        << to_string(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : lp.variables()) out << " " << v.name << " >= 0\n";
  bool any_integral = false;
  for (const auto& v : lp.variables()) {
    if (!v.integral) continue;
    if (!any_integral) out << "General\n";
    any_integral = true;
    out << ' ' << v.name << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace mincode
