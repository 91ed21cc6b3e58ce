#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <vector>

namespace mincode::detail {

// Residual network for Edmonds-Karp augmentation. Each added arc owns a
// reverse twin at index `arc ^ 1`.
template <typename Cap>
class ResidualGraph {
 public:
  explicit ResidualGraph(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, const Cap& capacity) {
    const std::size_t id = to_.size();
    to_.push_back(to);
    residual_.push_back(capacity);
    capacity_.push_back(capacity);
    adj_[from].push_back(id);
    to_.push_back(from);
    residual_.push_back(Cap(0));
    capacity_.push_back(Cap(0));
    adj_[to].push_back(id + 1);
    return id;
  }

  // Augments along shortest paths until `limit` units have been pushed or
  // no augmenting path remains. Returns the value pushed.
  Cap augment(std::size_t s, std::size_t t, const std::optional<Cap>& limit = std::nullopt) {
    Cap total(0);
    if (s == t) return total;
    std::vector<std::size_t> via(adj_.size());
    std::vector<char> seen(adj_.size());
    while (!limit || total < *limit) {
      std::fill(seen.begin(), seen.end(), 0);
      std::queue<std::size_t> frontier;
      frontier.push(s);
      seen[s] = 1;
      while (!frontier.empty() && !seen[t]) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t arc : adj_[u]) {
          const std::size_t w = to_[arc];
          if (!seen[w] && residual_[arc] > 0) {
            seen[w] = 1;
            via[w] = arc;
            frontier.push(w);
          }
        }
      }
      if (!seen[t]) break;
      Cap push = limit ? Cap(*limit - total) : residual_[via[t]];
      for (std::size_t w = t; w != s; w = to_[via[w] ^ 1]) {
        if (residual_[via[w]] < push) push = residual_[via[w]];
      }
      for (std::size_t w = t; w != s; w = to_[via[w] ^ 1]) {
        residual_[via[w]] -= push;
        residual_[via[w] ^ 1] += push;
      }
      total += push;
    }
    return total;
  }

  Cap flow(std::size_t arc) const { return capacity_[arc] - residual_[arc]; }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> to_;
  std::vector<Cap> residual_;
  std::vector<Cap> capacity_;
};

}  // namespace mincode::detail
