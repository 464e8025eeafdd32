#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace idim {

/// Dense item index in [0, universe_size).
using Item = std::uint32_t;

/// Sorted, duplicate-free list of items.
using ItemSet = std::vector<Item>;

/// Sorts and deduplicates in place.
void canonicalize(ItemSet& items);

/// True when `sub` is a subset of `super`; both must be canonical.
bool is_subset(std::span<const Item> sub, std::span<const Item> super);

/// A universe of `universe_size` items and a set of pairwise distinct
/// transactions over it, each a canonical ItemSet.
class TransactionDatabase {
 public:
  /// Canonicalizes every transaction. Throws std::invalid_argument for an
  /// empty transaction list, an item outside the universe, repeated
  /// transactions, or more labels than items.
  TransactionDatabase(std::size_t universe_size, std::vector<ItemSet> transactions,
                      std::vector<std::string> labels = {});

  std::size_t universe_size() const { return universe_size_; }
  std::size_t transaction_count() const { return transactions_.size(); }
  const std::vector<ItemSet>& transactions() const { return transactions_; }
  const ItemSet& transaction(std::size_t i) const { return transactions_.at(i); }

  /// Original token of `item`; items without one print as their index.
  std::string label(Item item) const;
  const std::vector<std::string>& labels() const { return labels_; }

  /// Number of transactions containing every item of `items`.
  std::size_t cover_count(std::span<const Item> items) const;

 private:
  std::size_t universe_size_;
  std::vector<ItemSet> transactions_;
  std::vector<std::string> labels_;
};

/// Removes repeated transactions (as sets), keeping first occurrences in
/// order. Returns how many were dropped. Transactions must be canonical.
std::size_t collapse_duplicates(std::vector<ItemSet>& transactions);

/// Reorders transactions: transaction i moves to position order[i].
TransactionDatabase permute_transactions(const TransactionDatabase& db,
                                         std::span<const std::size_t> order);

/// Renames item i to mapping[i] (a bijection on the universe); labels move
/// with their items.
TransactionDatabase relabel_items(const TransactionDatabase& db, std::span<const Item> mapping);

}  // namespace idim
