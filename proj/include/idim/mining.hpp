#pragma once

// Association rules over a transaction database, the rule feature family
// h(Y) * 1[X is contained in t], and its observable diameter / intrinsic
// dimension in closed form.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "idim/dimension.hpp"
#include "idim/geometry.hpp"
#include "idim/rational.hpp"
#include "idim/scalar.hpp"
#include "idim/transactions.hpp"

namespace idim {

struct MiningParams {
  Rational min_support = 1;
  Rational min_confidence = 1;
  std::optional<std::size_t> max_itemset_size;
  /// Admit rules with an empty body (X^T = T). Off by default.
  bool include_empty_body = false;

  /// Throws std::invalid_argument unless both thresholds lie in (0, 1] and
  /// max_itemset_size, when set, is positive.
  void validate() const;
};

struct FrequentItemset {
  ItemSet items;
  std::size_t count = 0;  // |Z^T|
  Rational support;       // |Z^T| / |T|

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

/// All frequent itemsets of a database, ordered lexicographically and
/// indexed by a prefix trie. Id 0 is the empty itemset (count |T|), which
/// is frequent at every threshold.
class FrequentItemsetTable {
 public:
  using Id = std::uint32_t;
  static constexpr Id kEmpty = 0;

  /// Throws std::invalid_argument for thresholds outside (0, 1] or a zero
  /// max_size.
  static FrequentItemsetTable mine(const TransactionDatabase& db, const Rational& min_support,
                                   std::optional<std::size_t> max_size = std::nullopt);

  /// Builds a table from an explicit list, which must be closed under
  /// taking non-empty subsets. Throws std::invalid_argument otherwise.
  static FrequentItemsetTable from_list(std::size_t transaction_count,
                                        std::span<const FrequentItemset> itemsets);

  std::size_t size() const { return counts_.size(); }
  std::span<const Item> items(Id id) const {
    return {items_.data() + offsets_[id], items_.data() + offsets_[id + 1]};
  }
  std::size_t length(Id id) const { return offsets_[id + 1] - offsets_[id]; }
  std::size_t count(Id id) const { return counts_[id]; }
  Rational support(Id id) const;
  std::size_t transaction_count() const { return transaction_count_; }
  /// Threshold the table was mined at; for tables built from a list, the
  /// smallest listed support.
  const Rational& min_support() const { return min_support_; }
  std::optional<std::size_t> max_size() const { return max_size_; }

  std::optional<Id> find(std::span<const Item> items) const;
  /// Id of items(parent) + {item}, where item exceeds every item of parent.
  std::optional<Id> child(Id parent, Item item) const;

  /// Non-empty itemsets with their supports, lexicographic order.
  std::vector<FrequentItemset> to_list() const;

 private:
  explicit FrequentItemsetTable(std::size_t transaction_count);
  Id append(std::span<const Item> items, std::size_t count);

  std::size_t transaction_count_;
  Rational min_support_ = 1;
  std::optional<std::size_t> max_size_;
  std::vector<Item> items_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::vector<std::pair<Item, Id>>> children_;
};

/// Exactly the non-empty itemsets Z with support >= min_support and, if
/// given, |Z| <= max_size, in lexicographic order.
std::vector<FrequentItemset> mine_frequent_itemsets(const TransactionDatabase& db,
                                                    const Rational& min_support,
                                                    std::optional<std::size_t> max_size = std::nullopt);

struct AssociationRule {
  ItemSet body;
  ItemSet head;
  Rational body_support;   // |X^T| / |T|
  Rational joint_support;  // |(X u Y)^T| / |T|
  Rational confidence;     // joint_support / body_support
  Rational head_measure;   // |Y| / |I|

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

/// Rules stored compactly as itemset ids into a shared FrequentItemsetTable,
/// sorted lexicographically by (body, head).
class RuleSet {
 public:
  struct Entry {
    FrequentItemsetTable::Id body;
    FrequentItemsetTable::Id head;
    FrequentItemsetTable::Id joint;
  };

  RuleSet(std::shared_ptr<const FrequentItemsetTable> itemsets, std::vector<Entry> entries,
          std::size_t universe_size, MiningParams params);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  const FrequentItemsetTable& itemsets() const { return *itemsets_; }
  std::size_t universe_size() const { return universe_size_; }
  std::size_t transaction_count() const { return itemsets_->transaction_count(); }
  const MiningParams& params() const { return params_; }

  AssociationRule operator[](std::size_t i) const;
  std::vector<AssociationRule> materialize() const;

  Rational body_support(std::size_t i) const { return itemsets_->support(entries_[i].body); }
  Rational head_measure(std::size_t i) const;

 private:
  std::shared_ptr<const FrequentItemsetTable> itemsets_;
  std::vector<Entry> entries_;
  std::size_t universe_size_;
  MiningParams params_;
};

/// Every rule (X, Y) with X u Y in the table, X and Y disjoint and
/// non-empty (X may be empty when include_empty_body is set), and
/// confidence >= min_confidence.
RuleSet derive_rules(const TransactionDatabase& db,
                     std::shared_ptr<const FrequentItemsetTable> itemsets,
                     const Rational& min_confidence, bool include_empty_body = false);

/// List-based entry point. The list must be what mine_frequent_itemsets
/// returns for `db`; supports are re-verified and an inconsistent pairing
/// throws std::invalid_argument.
RuleSet derive_rules(const TransactionDatabase& db, std::span<const FrequentItemset> frequents,
                     const Rational& min_confidence, bool include_empty_body = false);

/// mine + derive under `params`.
RuleSet mine_rules(const TransactionDatabase& db, const MiningParams& params);

/// sup{ head_measure : alpha < body_support < 1 - alpha }, 0 if none.
Scalar obs_diam_rules(const RuleSet& rules, const Scalar& alpha);

/// The same quantity as a step function: a rule stays active while
/// alpha < min(s, 1 - s) for its body support s.
StepFunction obs_diam_rules_curve(const RuleSet& rules);

struct RulesDimension {
  StepFunction obs_diam;
  /// Exact unless a rational overflowed.
  Scalar integral;
  Dimension dimension;
};

/// Integrates the observable diameter step function between its
/// breakpoints. Head measures never exceed 1, so no clamping is needed.
RulesDimension intrinsic_dimension_exact(const RuleSet& rules);

/// One point per transaction (uniform weights) and one feature per rule,
/// equal to head_measure on transactions containing the body and 0
/// elsewhere. Throws std::invalid_argument if `rules` was not mined from a
/// database of this shape.
EmpiricalDataStructure to_data_structure(const TransactionDatabase& db, const RuleSet& rules);

/// `body;head;body_support;joint_support;confidence;head_measure` with a
/// header row; itemsets as space-separated indices, rationals as p/q.
void write_rules_csv(std::ostream& out, const RuleSet& rules);

}  // namespace idim
