#include "idim/ingest.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace idim {

IngestError::IngestError(const std::string& message, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::string DatasetStats::to_key_value() const {
  std::ostringstream out;
  out << "num_transactions=" << num_transactions << '\n'
      << "num_duplicates_removed=" << num_duplicates_removed << '\n'
      << "universe_size=" << universe_size << '\n'
      << "density=" << density.str() << '\n';
  return out.str();
}

std::string DatasetStats::csv_header() {
  return "num_transactions,num_duplicates_removed,universe_size,density";
}

std::string DatasetStats::csv_row() const {
  return std::to_string(num_transactions) + "," + std::to_string(num_duplicates_removed) + "," +
         std::to_string(universe_size) + "," + density.str();
}

DatasetStats compute_stats(const TransactionDatabase& db, std::size_t duplicates_removed) {
  std::int64_t total_length = 0;
  for (const ItemSet& t : db.transactions()) total_length += static_cast<std::int64_t>(t.size());
  const auto m = static_cast<std::int64_t>(db.transaction_count());
  const auto n = static_cast<std::int64_t>(db.universe_size());
  return DatasetStats{db.transaction_count(), duplicates_removed, db.universe_size(),
                      n == 0 ? Rational(0) : Rational(total_length) / Rational(m * n)};
}

ParsedDatabase parse_transactions(std::istream& in, std::optional<std::size_t> declared_universe) {
  if (!in) throw IngestError("unreadable input stream");

  std::unordered_map<std::string, Item> index;
  std::vector<std::string> labels;
  std::vector<ItemSet> transactions;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ItemSet t;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      std::size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') {
        const auto c = static_cast<unsigned char>(line[end]);
        if (c < 0x20 || c == 0x7f) throw IngestError("control character in item token", line_no);
        ++end;
      }
      if (end == pos) break;
      std::string token = line.substr(pos, end - pos);
      auto [it, inserted] = index.try_emplace(std::move(token), static_cast<Item>(labels.size()));
      if (inserted) labels.push_back(it->first);
      t.push_back(it->second);
      pos = end;
    }
    if (t.empty()) continue;
    canonicalize(t);
    transactions.push_back(std::move(t));
  }
  if (in.bad()) throw IngestError("read error after line " + std::to_string(line_no));
  if (transactions.empty()) throw IngestError("no transactions");

  std::size_t universe = labels.size();
  if (declared_universe) {
    if (*declared_universe < labels.size()) {
      throw IngestError("declared universe size " + std::to_string(*declared_universe) +
                        " is smaller than the " + std::to_string(labels.size()) +
                        " distinct items observed");
    }
    universe = *declared_universe;
  }

  const std::size_t removed = collapse_duplicates(transactions);
  TransactionDatabase db(universe, std::move(transactions), std::move(labels));
  DatasetStats stats = compute_stats(db, removed);
  return ParsedDatabase{std::move(db), stats};
}

ParsedDatabase read_transactions_file(const std::filesystem::path& path,
                                      std::optional<std::size_t> declared_universe) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  return parse_transactions(in, declared_universe);
}

void write_transactions(std::ostream& out, const TransactionDatabase& db) {
  for (const ItemSet& t : db.transactions()) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << ' ';
      out << db.label(t[i]);
    }
    out << '\n';
  }
}

}  // namespace idim
