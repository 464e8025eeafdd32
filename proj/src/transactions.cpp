#include "idim/transactions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace idim {

void canonicalize(ItemSet& items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

bool is_subset(std::span<const Item> sub, std::span<const Item> super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

TransactionDatabase::TransactionDatabase(std::size_t universe_size,
                                         std::vector<ItemSet> transactions,
                                         std::vector<std::string> labels)
    : universe_size_(universe_size),
      transactions_(std::move(transactions)),
      labels_(std::move(labels)) {
  if (transactions_.empty()) throw std::invalid_argument("no transactions");
  if (labels_.size() > universe_size_) {
    throw std::invalid_argument("more item labels than items in the universe");
  }
  std::set<ItemSet> seen;
  for (ItemSet& t : transactions_) {
    canonicalize(t);
    if (!t.empty() && t.back() >= universe_size_) {
      throw std::invalid_argument("item " + std::to_string(t.back()) +
                                  " outside universe of size " + std::to_string(universe_size_));
    }
    if (!seen.insert(t).second) throw std::invalid_argument("repeated transaction");
  }
}

std::string TransactionDatabase::label(Item item) const {
  return item < labels_.size() ? labels_[item] : std::to_string(item);
}

std::size_t TransactionDatabase::cover_count(std::span<const Item> items) const {
  return static_cast<std::size_t>(std::count_if(
      transactions_.begin(), transactions_.end(),
      [&](const ItemSet& t) { return is_subset(items, t); }));
}

std::size_t collapse_duplicates(std::vector<ItemSet>& transactions) {
  std::set<ItemSet> seen;
  const std::size_t before = transactions.size();
  std::erase_if(transactions, [&](const ItemSet& t) { return !seen.insert(t).second; });
  return before - transactions.size();
}

TransactionDatabase permute_transactions(const TransactionDatabase& db,
                                         std::span<const std::size_t> order) {
  const std::size_t m = db.transaction_count();
  if (order.size() != m) throw std::invalid_argument("permutation length differs from |T|");
  std::vector<ItemSet> out(m);
  std::vector<bool> filled(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (order[i] >= m || filled[order[i]]) throw std::invalid_argument("not a permutation");
    filled[order[i]] = true;
    out[order[i]] = db.transactions()[i];
  }
  return TransactionDatabase(db.universe_size(), std::move(out), db.labels());
}

TransactionDatabase relabel_items(const TransactionDatabase& db, std::span<const Item> mapping) {
  const std::size_t n = db.universe_size();
  if (mapping.size() != n) throw std::invalid_argument("item mapping length differs from |I|");
  std::vector<bool> used(n, false);
  for (Item target : mapping) {
    if (target >= n || used[target]) throw std::invalid_argument("item mapping is not a bijection");
    used[target] = true;
  }

  std::vector<ItemSet> out;
  out.reserve(db.transaction_count());
  for (const ItemSet& t : db.transactions()) {
    ItemSet mapped;
    mapped.reserve(t.size());
    for (Item i : t) mapped.push_back(mapping[i]);
    out.push_back(std::move(mapped));
  }
  std::vector<std::string> labels;
  if (!db.labels().empty()) {
    labels.resize(n);
    for (Item i = 0; i < n; ++i) labels[mapping[i]] = db.label(i);
  }
  return TransactionDatabase(n, std::move(out), std::move(labels));
}

}  // namespace idim
