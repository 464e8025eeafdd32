#pragma once

// Report and sweep drivers behind the command-line tool, kept in the library
// so that they can be tested without spawning processes.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idim/dimension.hpp"
#include "idim/geometry.hpp"
#include "idim/mining.hpp"
#include "idim/rational.hpp"
#include "idim/transactions.hpp"

namespace idim {

struct DimReport {
  std::size_t num_rules = 0;
  Scalar integral;
  Dimension dimension = Dimension::infinite();

  /// `rules=<k> integral=<I> dimension=<d>` with exact values as p/q.
  std::string line() const;
};

DimReport compute_dim(const TransactionDatabase& db, const MiningParams& params);

struct SweepConfig {
  std::string dataset;
  std::vector<Rational> supports;
  std::vector<Rational> confidences;
  std::optional<std::size_t> max_itemset_size;
  bool include_empty_body = false;
};

struct SweepRow {
  std::string dataset;
  Rational min_support;
  Rational min_confidence;
  std::size_t num_rules = 0;
  Scalar integral;
  Dimension dimension = Dimension::infinite();
};

/// One row per (support, confidence) pair, sorted by (confidence, support).
/// Frequent itemsets are mined once per support and shared across
/// confidence levels. Throws std::invalid_argument for an empty grid or a
/// threshold outside (0, 1].
std::vector<SweepRow> run_sweep(const TransactionDatabase& db, const SweepConfig& config);

std::string sweep_csv_header();
/// Header plus one line per row; numbers at 17 significant digits, `inf`
/// for an infinite dimension, and the exact integral in the last column.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct CurveSample {
  Scalar alpha;
  Scalar value;
};

/// Samples at 0, 1, every breakpoint, and every midpoint between
/// consecutive samples, which determines a step function exactly. A
/// non-zero `resolution` adds the uniform points i / resolution.
std::vector<CurveSample> sample_curve(const StepFunction& curve, std::size_t resolution = 0);

void write_curve_csv(std::ostream& out, std::span<const CurveSample> samples);

/// Writes through a sibling temporary file and renames it into place, so
/// a failed write never leaves partial output at `path`.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& write);

}  // namespace idim
