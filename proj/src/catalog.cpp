#include "mincode/catalog.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace mincode {

namespace {

std::vector<std::size_t> members_of(ReceiverSet set) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; set >> k; ++k)
    if ((set >> k) & 1u) out.push_back(k);
  return out;
}

// All partitions of `elements` into blocks, via restricted growth strings.
void partitions(const std::vector<std::size_t>& elements, std::vector<ReceiverSet>& blocks,
                std::size_t at, std::vector<std::vector<ReceiverSet>>& out) {
  if (at == elements.size()) {
    out.push_back(blocks);
    return;
  }
  const ReceiverSet bit = ReceiverSet{1} << elements[at];
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b] |= bit;
    partitions(elements, blocks, at + 1, out);
    blocks[b] &= ~bit;
  }
  blocks.push_back(bit);
  partitions(elements, blocks, at + 1, out);
  blocks.pop_back();
}

}  // namespace

Catalog::Catalog(std::size_t receivers) : receivers_(receivers) {
  if (receivers < 1 || receivers > kMaxReceivers)
    throw std::out_of_range("receiver count must be in [1, " + std::to_string(kMaxReceivers) + "]");

  const ReceiverSet limit = ReceiverSet{1} << receivers;
  for (ReceiverSet s = 1; s < limit; ++s) sets_.push_back(s);
  std::sort(sets_.begin(), sets_.end(), [](ReceiverSet a, ReceiverSet b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    return members_of(a) < members_of(b);
  });
  position_.assign(limit, 0);
  for (std::size_t i = 0; i < sets_.size(); ++i) position_[sets_[i]] = i;

  for (ReceiverSet u = 1; u < limit; ++u) {
    if (std::popcount(u) < 2) continue;
    std::vector<std::vector<ReceiverSet>> found;
    std::vector<ReceiverSet> blocks;
    partitions(members_of(u), blocks, 0, found);
    for (const auto& partition : found) {
      if (partition.size() < 2) continue;
      Collection c;
      for (ReceiverSet block : partition) c.members.push_back(position_[block]);
      std::sort(c.members.begin(), c.members.end());
      c.union_index = position_[u];
      collections_.push_back(std::move(c));
    }
  }
  std::sort(collections_.begin(), collections_.end(),
            [](const Collection& a, const Collection& b) { return a.members < b.members; });

  with_member_.assign(sets_.size(), {});
  with_union_.assign(sets_.size(), {});
  for (std::size_t j = 0; j < collections_.size(); ++j) {
    for (std::size_t i : collections_[j].members) with_member_[i].push_back(j);
    with_union_[collections_[j].union_index].push_back(j);
  }
}

std::size_t Catalog::index_of(ReceiverSet set) const {
  if (set == 0 || set >= position_.size()) throw std::out_of_range("receiver set outside catalog");
  return position_[set];
}

std::size_t Catalog::cardinality(std::size_t i) const {
  return static_cast<std::size_t>(std::popcount(sets_.at(i)));
}

std::size_t Catalog::singleton_split(std::size_t i) const {
  const std::size_t want = cardinality(i);
  for (std::size_t j : with_union_.at(i))
    if (collections_[j].members.size() == want) return j;
  throw std::invalid_argument("singleton split needs a set with two or more receivers");
}

std::string Catalog::set_key(std::size_t i) const {
  std::string key;
  for (std::size_t k : members_of(sets_.at(i))) {
    if (!key.empty()) key += ',';
    key += std::to_string(k + 1);
  }
  return key;
}

std::string Catalog::collection_key(std::size_t j) const {
  std::string key;
  for (std::size_t i : collections_.at(j).members) {
    if (!key.empty()) key += '|';
    key += '{' + set_key(i) + '}';
  }
  return key;
}

std::optional<std::size_t> Catalog::find_set(std::string_view key) const {
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (set_key(i) == key) return i;
  return std::nullopt;
}

std::optional<std::size_t> Catalog::find_collection(std::string_view key) const {
  for (std::size_t j = 0; j < collections_.size(); ++j)
    if (collection_key(j) == key) return j;
  return std::nullopt;
}

}  // namespace mincode
