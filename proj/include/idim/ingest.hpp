#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "idim/rational.hpp"
#include "idim/transactions.hpp"

namespace idim {

/// Raised for unreadable or malformed transaction input. `line()` is the
/// 1-based offending line, or 0 when the problem is not tied to one line.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& message, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct DatasetStats {
  std::size_t num_transactions = 0;  // after duplicate removal
  std::size_t num_duplicates_removed = 0;
  std::size_t universe_size = 0;
  Rational density;  // mean transaction length / universe_size

  /// One `key=value` pair per line.
  std::string to_key_value() const;
  static std::string csv_header();
  std::string csv_row() const;
};

DatasetStats compute_stats(const TransactionDatabase& db, std::size_t duplicates_removed = 0);

struct ParsedDatabase {
  TransactionDatabase db;
  DatasetStats stats;
};

/// Reads FIMI-style text: one transaction per non-blank line, items as
/// whitespace-separated tokens. Tokens become dense indices in order of
/// first appearance; repeated tokens within a line and repeated
/// transactions are collapsed.
ParsedDatabase parse_transactions(std::istream& in,
                                  std::optional<std::size_t> declared_universe = std::nullopt);

ParsedDatabase read_transactions_file(const std::filesystem::path& path,
                                      std::optional<std::size_t> declared_universe = std::nullopt);

/// Writes one line per transaction, item labels in index order.
void write_transactions(std::ostream& out, const TransactionDatabase& db);

}  // namespace idim
