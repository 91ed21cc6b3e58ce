#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mincode {

/// Subset of receivers as a bit mask; bit k is receiver k (0-based).
using ReceiverSet = std::uint32_t;

/// A collection of two or more pairwise disjoint receiver sets, stored as
/// sorted indices into the catalog's set list.
struct Collection {
  std::vector<std::size_t> members;
  std::size_t union_index = 0;
};

inline constexpr std::size_t kMaxReceivers = 6;

/// Fixed enumeration of the nonempty receiver sets and of every collection
/// of disjoint receiver sets.
///
/// Sets are ordered by cardinality, then lexicographically on their sorted
/// members: {1},{2},{3},{1,2},{1,3},{2,3},{1,2,3}. Collections are ordered
/// lexicographically on the sorted tuple of their member set indices.
/// Keys printed by `set_key` / `collection_key` use 1-based receiver labels.
class Catalog {
 public:
  /// Throws `std::out_of_range` unless 1 <= receivers <= kMaxReceivers.
  explicit Catalog(std::size_t receivers);

  std::size_t receivers() const noexcept { return receivers_; }
  std::size_t set_count() const noexcept { return sets_.size(); }
  std::size_t collection_count() const noexcept { return collections_.size(); }

  ReceiverSet set(std::size_t i) const { return sets_.at(i); }
  std::size_t index_of(ReceiverSet set) const;
  bool contains(std::size_t i, std::size_t k) const { return (sets_.at(i) >> k) & 1u; }
  std::size_t cardinality(std::size_t i) const;
  std::size_t singleton(std::size_t k) const { return index_of(ReceiverSet{1} << k); }
  std::size_t full_set() const { return sets_.size() - 1; }

  const Collection& collection(std::size_t j) const { return collections_.at(j); }
  /// Collections having P_i as a member.
  std::span<const std::size_t> collections_with_member(std::size_t i) const { return with_member_.at(i); }
  /// Collections whose union is P_i.
  std::span<const std::size_t> collections_with_union(std::size_t i) const { return with_union_.at(i); }
  /// The collection of all singletons of P_i; P_i must have two or more members.
  std::size_t singleton_split(std::size_t i) const;

  /// "1,2" style key.
  std::string set_key(std::size_t i) const;
  /// "{1}|{2,3}" style key.
  std::string collection_key(std::size_t j) const;
  std::optional<std::size_t> find_set(std::string_view key) const;
  std::optional<std::size_t> find_collection(std::string_view key) const;

 private:
  std::size_t receivers_;
  std::vector<ReceiverSet> sets_;
  std::vector<std::size_t> position_;  // mask -> set index
  std::vector<Collection> collections_;
  std::vector<std::vector<std::size_t>> with_member_;
  std::vector<std::vector<std::size_t>> with_union_;
};

inline Catalog build_catalog(std::size_t receivers) { return Catalog(receivers); }

}  // namespace mincode
