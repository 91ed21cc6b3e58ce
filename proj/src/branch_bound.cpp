#include "mincode/errors.hpp"
#include "mincode/lp.hpp"

#include <queue>

namespace mincode {

namespace {

struct BoundRow {
  std::size_t var;
  Relation relation;
  Integer value;
};

struct Node {
  Rational bound;  // relaxation objective in minimization form
  std::size_t order;
  std::vector<BoundRow> bounds;
  LpResult relaxation;
};

struct WorseFirst {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.order > b.order;
  }
};

LinearProgram relaxation_of(const LinearProgram& lp, const std::vector<BoundRow>& bounds) {
  LinearProgram out = lp;
  for (std::size_t j = 0; j < out.variable_count(); ++j) out.mark_integral(j, false);
  for (const auto& b : bounds) {
    out.add_row("branch_" + lp.variables()[b.var].name, {{b.var, Rational(1)}}, b.relation, Rational(b.value));
  }
  return out;
}

std::optional<std::size_t> first_fractional(const LinearProgram& lp, const std::vector<Rational>& values) {
  for (std::size_t j = 0; j < lp.variable_count(); ++j)
    if (lp.variables()[j].integral && !is_integral(values[j])) return j;
  return std::nullopt;
}

}  // namespace

LpResult solve_ilp(const LinearProgram& lp, const BranchOptions& options) {
  const Rational sign = lp.sense() == Sense::minimize ? Rational(1) : Rational(-1);
  std::size_t pivots = 0, solved = 0, order = 0;

  auto evaluate = [&](std::vector<BoundRow> bounds) -> std::optional<Node> {
    if (solved >= options.node_limit)
      throw ResourceLimitError("branch-and-bound node budget of " + std::to_string(options.node_limit) +
                               " exhausted");
    LpResult res = solve_lp(relaxation_of(lp, bounds));
    ++solved;
    pivots += res.pivots;
    if (res.status != LpStatus::optimal) {
      if (res.status == LpStatus::unbounded) {
        Node n{Rational(0), order++, std::move(bounds), std::move(res)};
        return n;
      }
      return std::nullopt;
    }
    Rational bound = sign * res.objective;
    return Node{std::move(bound), order++, std::move(bounds), std::move(res)};
  };

  auto root = evaluate({});
  LpResult best;
  best.status = LpStatus::infeasible;
  if (!root) {
    best.pivots = pivots;
    best.nodes = solved;
    return best;
  }
  if (root->relaxation.status == LpStatus::unbounded) {
    root->relaxation.nodes = solved;
    return root->relaxation;
  }

  std::optional<Rational> incumbent;
  std::priority_queue<Node, std::vector<Node>, WorseFirst> open;
  open.push(std::move(*root));
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (incumbent && node.bound >= *incumbent) break;  // best-first: nothing better remains
    if (node.relaxation.status == LpStatus::unbounded) {
      node.relaxation.nodes = solved;
      node.relaxation.pivots = pivots;
      return node.relaxation;
    }
    const auto frac = first_fractional(lp, node.relaxation.values);
    if (!frac) {
      incumbent = node.bound;
      best = std::move(node.relaxation);
      continue;
    }
    const Rational& value = node.relaxation.values[*frac];
    for (int side = 0; side < 2; ++side) {
      auto bounds = node.bounds;
      if (side == 0)
        bounds.push_back({*frac, Relation::less_equal, floor_of(value)});
      else
        bounds.push_back({*frac, Relation::greater_equal, ceil_of(value)});
      if (auto child = evaluate(std::move(bounds))) {
        if (!incumbent || child->bound < *incumbent || child->relaxation.status == LpStatus::unbounded)
          open.push(std::move(*child));
      }
    }
  }
  best.pivots = pivots;
  best.nodes = solved;
  return best;
}

}  // namespace mincode
