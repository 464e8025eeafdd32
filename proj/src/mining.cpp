#include "idim/mining.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>
#include <string>

#include "idim/parallel.hpp"

namespace idim {
namespace {

using Id = FrequentItemsetTable::Id;
using Bitset = std::vector<std::uint64_t>;

void check_threshold(const Rational& value, const char* name) {
  if (!(value > Rational(0)) || value > Rational(1)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1], got " + value.str());
  }
}

/// Smallest count c with c / m >= threshold.
std::size_t min_count(const Rational& threshold, std::size_t m) {
  const __int128 scaled = static_cast<__int128>(threshold.num()) * static_cast<__int128>(m);
  const __int128 den = threshold.den();
  return static_cast<std::size_t>((scaled + den - 1) / den);
}

/// count_joint / count_body >= threshold, in integers.
bool meets_confidence(std::size_t count_joint, std::size_t count_body, const Rational& threshold) {
  return static_cast<__int128>(count_joint) * threshold.den() >=
         static_cast<__int128>(threshold.num()) * count_body;
}

std::size_t popcount(const Bitset& bits) {
  std::size_t total = 0;
  for (std::uint64_t w : bits) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

/// Flattened itemset list produced by one mining worker.
struct ItemsetBuffer {
  std::vector<Item> items;
  std::vector<std::uint32_t> ends;
  std::vector<std::uint32_t> counts;

  void push(const ItemSet& itemset, std::size_t count) {
    items.insert(items.end(), itemset.begin(), itemset.end());
    ends.push_back(static_cast<std::uint32_t>(items.size()));
    counts.push_back(static_cast<std::uint32_t>(count));
  }
};

struct Extension {
  Item item;
  Bitset tids;
  std::size_t count;
};

/// Depth-first vertical mining over tid bitsets. Visiting extensions in
/// ascending item order emits itemsets in lexicographic order.
class VerticalMiner {
 public:
  VerticalMiner(std::size_t min_count, std::optional<std::size_t> max_size)
      : min_count_(min_count), max_size_(max_size) {}

  void expand(ItemSet& prefix, const std::vector<Extension>& siblings, std::size_t index,
              ItemsetBuffer& out) const {
    const Extension& self = siblings[index];
    prefix.push_back(self.item);
    out.push(prefix, self.count);
    if (!max_size_ || prefix.size() < *max_size_) {
      std::vector<Extension> next;
      for (std::size_t j = index + 1; j < siblings.size(); ++j) {
        Bitset tids(self.tids.size());
        for (std::size_t w = 0; w < tids.size(); ++w) tids[w] = self.tids[w] & siblings[j].tids[w];
        const std::size_t count = popcount(tids);
        if (count >= min_count_) next.push_back({siblings[j].item, std::move(tids), count});
      }
      for (std::size_t j = 0; j < next.size(); ++j) expand(prefix, next, j, out);
    }
    prefix.pop_back();
  }

 private:
  std::size_t min_count_;
  std::optional<std::size_t> max_size_;
};

std::string rational_field(const Rational& r) {
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

void write_itemset(std::ostream& out, std::span<const Item> items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ' ';
    out << items[i];
  }
}

}  // namespace

void MiningParams::validate() const {
  check_threshold(min_support, "min_support");
  check_threshold(min_confidence, "min_confidence");
  if (max_itemset_size && *max_itemset_size == 0) {
    throw std::invalid_argument("max_itemset_size must be positive");
  }
}

// ---------------------------------------------------------------------------
// FrequentItemsetTable

FrequentItemsetTable::FrequentItemsetTable(std::size_t transaction_count)
    : transaction_count_(transaction_count), offsets_{0} {
  append({}, transaction_count);
}

FrequentItemsetTable::Id FrequentItemsetTable::append(std::span<const Item> items,
                                                      std::size_t count) {
  const Id id = static_cast<Id>(counts_.size());
  std::optional<Id> parent;
  if (!items.empty()) {
    parent = find(items.first(items.size() - 1));
    if (!parent) throw std::invalid_argument("itemset list is not closed under prefixes");
    if (child(*parent, items.back())) throw std::invalid_argument("repeated itemset");
  }
  items_.insert(items_.end(), items.begin(), items.end());
  offsets_.push_back(static_cast<std::uint32_t>(items_.size()));
  counts_.push_back(static_cast<std::uint32_t>(count));
  children_.emplace_back();
  if (parent) {
    auto& siblings = children_[*parent];
    auto pos = std::lower_bound(siblings.begin(), siblings.end(), items.back(),
                                [](const auto& entry, Item v) { return entry.first < v; });
    siblings.insert(pos, {items.back(), id});
  }
  return id;
}

FrequentItemsetTable FrequentItemsetTable::mine(const TransactionDatabase& db,
                                                const Rational& min_support,
                                                std::optional<std::size_t> max_size) {
  check_threshold(min_support, "min_support");
  if (max_size && *max_size == 0) throw std::invalid_argument("max_size must be positive");

  const std::size_t m = db.transaction_count();
  const std::size_t threshold = min_count(min_support, m);
  const std::size_t words = (m + 63) / 64;

  std::vector<Bitset> item_tids(db.universe_size(), Bitset(words, 0));
  for (std::size_t t = 0; t < m; ++t) {
    for (Item i : db.transactions()[t]) item_tids[i][t / 64] |= std::uint64_t{1} << (t % 64);
  }
  std::vector<Extension> singletons;
  for (Item i = 0; i < db.universe_size(); ++i) {
    const std::size_t count = popcount(item_tids[i]);
    if (count >= threshold) singletons.push_back({i, std::move(item_tids[i]), count});
  }

  const VerticalMiner miner(threshold, max_size);
  std::vector<ItemsetBuffer> buffers(singletons.size());
  parallel_for(singletons.size(), [&](std::size_t index) {
    ItemSet prefix;
    miner.expand(prefix, singletons, index, buffers[index]);
  });

  FrequentItemsetTable table(m);
  table.min_support_ = min_support;
  table.max_size_ = max_size;
  for (const ItemsetBuffer& buffer : buffers) {
    std::uint32_t begin = 0;
    for (std::size_t k = 0; k < buffer.counts.size(); ++k) {
      const std::uint32_t end = buffer.ends[k];
      table.append(std::span(buffer.items).subspan(begin, end - begin), buffer.counts[k]);
      begin = end;
    }
  }
  return table;
}

FrequentItemsetTable FrequentItemsetTable::from_list(std::size_t transaction_count,
                                                     std::span<const FrequentItemset> itemsets) {
  std::vector<const FrequentItemset*> sorted;
  sorted.reserve(itemsets.size());
  for (const auto& f : itemsets) {
    if (f.items.empty()) throw std::invalid_argument("empty itemset in frequent list");
    if (!std::is_sorted(f.items.begin(), f.items.end()) ||
        std::adjacent_find(f.items.begin(), f.items.end()) != f.items.end()) {
      throw std::invalid_argument("itemset is not canonical");
    }
    sorted.push_back(&f);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->items < b->items; });

  FrequentItemsetTable table(transaction_count);
  for (const auto* f : sorted) table.append(f->items, f->count);
  for (const auto& f : itemsets) {
    if (transaction_count == 0) break;
    table.min_support_ = std::min(table.min_support_,
                                  Rational(static_cast<std::int64_t>(f.count),
                                           static_cast<std::int64_t>(transaction_count)));
  }

  // Every (k-1)-subset must be present; by induction all subsets are.
  ItemSet sub;
  for (Id id = 1; id < table.size(); ++id) {
    const auto items = table.items(id);
    for (std::size_t skip = 0; skip + 1 < items.size(); ++skip) {
      sub.assign(items.begin(), items.end());
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(skip));
      if (!table.find(sub)) throw std::invalid_argument("itemset list is not closed under subsets");
    }
  }
  return table;
}

Rational FrequentItemsetTable::support(Id id) const {
  return Rational(static_cast<std::int64_t>(counts_[id]),
                  static_cast<std::int64_t>(transaction_count_));
}

std::optional<FrequentItemsetTable::Id> FrequentItemsetTable::child(Id parent, Item item) const {
  const auto& siblings = children_[parent];
  auto pos = std::lower_bound(siblings.begin(), siblings.end(), item,
                              [](const auto& entry, Item v) { return entry.first < v; });
  if (pos == siblings.end() || pos->first != item) return std::nullopt;
  return pos->second;
}

std::optional<FrequentItemsetTable::Id> FrequentItemsetTable::find(
    std::span<const Item> items) const {
  Id node = kEmpty;
  for (Item item : items) {
    auto next = child(node, item);
    if (!next) return std::nullopt;
    node = *next;
  }
  return node;
}

std::vector<FrequentItemset> FrequentItemsetTable::to_list() const {
  std::vector<FrequentItemset> out;
  out.reserve(size() - 1);
  for (Id id = 1; id < size(); ++id) {
    auto items_view = items(id);
    out.push_back({ItemSet(items_view.begin(), items_view.end()), count(id), support(id)});
  }
  return out;
}

std::vector<FrequentItemset> mine_frequent_itemsets(const TransactionDatabase& db,
                                                    const Rational& min_support,
                                                    std::optional<std::size_t> max_size) {
  return FrequentItemsetTable::mine(db, min_support, max_size).to_list();
}

// ---------------------------------------------------------------------------
// RuleSet

RuleSet::RuleSet(std::shared_ptr<const FrequentItemsetTable> itemsets, std::vector<Entry> entries,
                 std::size_t universe_size, MiningParams params)
    : itemsets_(std::move(itemsets)),
      entries_(std::move(entries)),
      universe_size_(universe_size),
      params_(std::move(params)) {}

Rational RuleSet::head_measure(std::size_t i) const {
  return Rational(static_cast<std::int64_t>(itemsets_->length(entries_[i].head)),
                  static_cast<std::int64_t>(universe_size_));
}

AssociationRule RuleSet::operator[](std::size_t i) const {
  const Entry& e = entries_.at(i);
  const auto body = itemsets_->items(e.body);
  const auto head = itemsets_->items(e.head);
  const Rational body_support = itemsets_->support(e.body);
  const Rational joint_support = itemsets_->support(e.joint);
  return AssociationRule{ItemSet(body.begin(), body.end()),
                         ItemSet(head.begin(), head.end()),
                         body_support,
                         joint_support,
                         joint_support / body_support,
                         head_measure(i)};
}

std::vector<AssociationRule> RuleSet::materialize() const {
  std::vector<AssociationRule> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
  return out;
}

RuleSet derive_rules(const TransactionDatabase& db,
                     std::shared_ptr<const FrequentItemsetTable> itemsets,
                     const Rational& min_confidence, bool include_empty_body) {
  check_threshold(min_confidence, "min_confidence");
  if (!itemsets || itemsets->transaction_count() != db.transaction_count()) {
    throw std::invalid_argument("frequent itemsets were not mined from this database");
  }
  const FrequentItemsetTable& table = *itemsets;

  constexpr std::size_t kMaxRuleItems = 30;
  const std::size_t n_ids = table.size();
  const std::size_t chunks = std::min<std::size_t>(n_ids, worker_count() * 8);
  std::vector<std::vector<RuleSet::Entry>> parts(chunks);

  parallel_for(chunks, [&](std::size_t chunk) {
    std::vector<Id> subset_ids;
    auto& out = parts[chunk];
    for (Id joint = static_cast<Id>(1 + chunk); joint < n_ids; joint += static_cast<Id>(chunks)) {
      const auto items = table.items(joint);
      const std::size_t k = items.size();
      if (k < 2 && !include_empty_body) continue;
      if (k > kMaxRuleItems) throw std::length_error("itemset too long for rule enumeration");
      if (items.back() >= db.universe_size()) {
        throw std::invalid_argument("itemset references an item outside the database");
      }

      const std::uint64_t full = (std::uint64_t{1} << k) - 1;
      subset_ids.assign(full + 1, FrequentItemsetTable::kEmpty);
      for (std::uint64_t mask = 1; mask <= full; ++mask) {
        const int top = std::bit_width(mask) - 1;
        auto id = table.child(subset_ids[mask ^ (std::uint64_t{1} << top)], items[top]);
        if (!id) throw std::invalid_argument("frequent itemsets are not closed under subsets");
        subset_ids[mask] = *id;
      }

      const std::size_t joint_count = table.count(joint);
      for (std::uint64_t mask = include_empty_body ? 0 : 1; mask < full; ++mask) {
        const Id body = subset_ids[mask];
        if (meets_confidence(joint_count, table.count(body), min_confidence)) {
          out.push_back({body, subset_ids[full ^ mask], joint});
        }
      }
    }
  });

  std::vector<RuleSet::Entry> entries;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  entries.reserve(total);
  for (auto& p : parts) entries.insert(entries.end(), p.begin(), p.end());
  // Ids follow lexicographic itemset order, so this is (body, head) order.
  std::sort(entries.begin(), entries.end(), [](const RuleSet::Entry& a, const RuleSet::Entry& b) {
    return a.body != b.body ? a.body < b.body : a.head < b.head;
  });

  MiningParams params;
  params.min_support = table.min_support();
  params.max_itemset_size = table.max_size();
  params.min_confidence = min_confidence;
  params.include_empty_body = include_empty_body;
  return RuleSet(std::move(itemsets), std::move(entries), db.universe_size(), params);
}

RuleSet derive_rules(const TransactionDatabase& db, std::span<const FrequentItemset> frequents,
                     const Rational& min_confidence, bool include_empty_body) {
  const auto m = static_cast<std::int64_t>(db.transaction_count());
  for (const FrequentItemset& f : frequents) {
    if (!f.items.empty() && f.items.back() >= db.universe_size()) {
      throw std::invalid_argument("frequent itemset references an item outside the database");
    }
    const std::size_t actual = db.cover_count(f.items);
    if (actual != f.count || f.support != Rational(static_cast<std::int64_t>(actual), m)) {
      throw std::invalid_argument("frequent itemset support does not match the database");
    }
  }
  auto table = std::make_shared<const FrequentItemsetTable>(
      FrequentItemsetTable::from_list(db.transaction_count(), frequents));
  return derive_rules(db, std::move(table), min_confidence, include_empty_body);
}

RuleSet mine_rules(const TransactionDatabase& db, const MiningParams& params) {
  params.validate();
  auto table = std::make_shared<const FrequentItemsetTable>(
      FrequentItemsetTable::mine(db, params.min_support, params.max_itemset_size));
  return derive_rules(db, std::move(table), params.min_confidence, params.include_empty_body);
}

// ---------------------------------------------------------------------------
// Closed-form observable diameter and dimension

Scalar obs_diam_rules(const RuleSet& rules, const Scalar& alpha) {
  if (alpha < Scalar(0) || alpha > Scalar(1)) {
    throw std::invalid_argument("alpha must lie in [0, 1], got " + alpha.str());
  }
  const Scalar upper = Scalar(1) - alpha;
  Scalar best = 0;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Scalar s = rules.body_support(i);
    if (alpha < s && s < upper) best = max(best, rules.head_measure(i));
  }
  return best;
}

namespace {

/// Breakpoints as integer counts b = min(c, m - c) of the body cover, each
/// with the largest head length among rules having that breakpoint, sorted
/// ascending; zero breakpoints are dropped since those rules never fire.
struct Breakpoints {
  std::vector<std::size_t> at;           // ascending, in units of 1/m
  std::vector<std::size_t> suffix_max;   // longest head among at[i..], size at.size() + 1
};

Breakpoints breakpoint_heads(const RuleSet& rules) {
  const FrequentItemsetTable& table = rules.itemsets();
  const std::size_t m = rules.transaction_count();
  std::vector<std::size_t> longest_head(m / 2 + 1, 0);
  for (const RuleSet::Entry& e : rules.entries()) {
    const std::size_t c = table.count(e.body);
    const std::size_t b = std::min(c, m - c);
    longest_head[b] = std::max(longest_head[b], table.length(e.head));
  }
  Breakpoints out;
  std::vector<std::size_t> heads;
  for (std::size_t b = 1; b < longest_head.size(); ++b) {
    if (longest_head[b] > 0) {
      out.at.push_back(b);
      heads.push_back(longest_head[b]);
    }
  }
  out.suffix_max.assign(heads.size() + 1, 0);
  for (std::size_t i = heads.size(); i-- > 0;) {
    out.suffix_max[i] = std::max(out.suffix_max[i + 1], heads[i]);
  }
  return out;
}

}  // namespace

StepFunction obs_diam_rules_curve(const RuleSet& rules) {
  if (rules.empty()) return StepFunction();
  const Breakpoints points = breakpoint_heads(rules);
  const auto m = static_cast<std::int64_t>(rules.transaction_count());
  const auto n = static_cast<std::int64_t>(rules.universe_size());

  // Value on [at[i-1], at[i]) is the longest head among breakpoints >= at[i].
  std::vector<StepFunction::Step> steps;
  steps.push_back(
      {Scalar(0), Scalar(Rational(static_cast<std::int64_t>(points.suffix_max[0]), n))});
  for (std::size_t i = 0; i < points.at.size(); ++i) {
    steps.push_back({Scalar(Rational(static_cast<std::int64_t>(points.at[i]), m)),
                     Scalar(Rational(static_cast<std::int64_t>(points.suffix_max[i + 1]), n))});
  }
  return StepFunction(std::move(steps));
}

RulesDimension intrinsic_dimension_exact(const RuleSet& rules) {
  StepFunction curve = obs_diam_rules_curve(rules);
  Scalar integral = 0;
  if (!rules.empty()) {
    // Sum in integer units of 1/(m n): segment widths are multiples of 1/m,
    // values multiples of 1/n.
    const Breakpoints points = breakpoint_heads(rules);
    __int128 units = 0;
    std::size_t previous = 0;
    for (std::size_t i = 0; i < points.at.size(); ++i) {
      units += static_cast<__int128>(points.at[i] - previous) * points.suffix_max[i];
      previous = points.at[i];
    }
    const __int128 denom = static_cast<__int128>(rules.transaction_count()) * rules.universe_size();
    if (units <= INT64_MAX && denom <= INT64_MAX) {
      integral = Rational(static_cast<std::int64_t>(units), static_cast<std::int64_t>(denom));
    } else {
      integral = Scalar::inexact(static_cast<double>(units) / static_cast<double>(denom));
    }
  }
  Dimension dim = Dimension::from_integral(integral);
  return RulesDimension{std::move(curve), std::move(integral), std::move(dim)};
}

EmpiricalDataStructure to_data_structure(const TransactionDatabase& db, const RuleSet& rules) {
  if (rules.transaction_count() != db.transaction_count() ||
      rules.universe_size() != db.universe_size()) {
    throw std::invalid_argument("rule set was not mined from this database");
  }
  const FrequentItemsetTable& table = rules.itemsets();
  std::vector<std::vector<Scalar>> features;
  features.reserve(rules.size());
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const auto body = table.items(rules.entries()[r].body);
    const auto head = table.items(rules.entries()[r].head);
    if ((!body.empty() && body.back() >= db.universe_size()) ||
        (!head.empty() && head.back() >= db.universe_size())) {
      throw std::invalid_argument("rule references an item outside the database");
    }
    const Scalar h = rules.head_measure(r);
    std::vector<Scalar> row;
    row.reserve(db.transaction_count());
    for (const ItemSet& t : db.transactions()) row.push_back(is_subset(body, t) ? h : Scalar(0));
    features.push_back(std::move(row));
  }
  return EmpiricalDataStructure::uniform(db.transaction_count(), std::move(features));
}

void write_rules_csv(std::ostream& out, const RuleSet& rules) {
  out << "body;head;body_support;joint_support;confidence;head_measure\n";
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const AssociationRule r = rules[i];
    write_itemset(out, r.body);
    out << ';';
    write_itemset(out, r.head);
    out << ';' << rational_field(r.body_support) << ';' << rational_field(r.joint_support) << ';'
        << rational_field(r.confidence) << ';' << rational_field(r.head_measure) << '\n';
  }
}

}  // namespace idim
