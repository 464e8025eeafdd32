#include "idim/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace idim {

EmpiricalDataStructure hamming_cube_structure(const HypercubeSpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw std::invalid_argument("cube dimension must be positive");
  const auto sn = static_cast<std::int64_t>(n);

  std::vector<Scalar> values;
  std::vector<Scalar> weights;
  values.reserve(n + 1);
  weights.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) values.push_back(Rational(static_cast<std::int64_t>(k), sn));

  if (n <= kExactCubeLimit) {
    const std::int64_t total = std::int64_t{1} << n;
    std::int64_t binom = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      weights.push_back(Rational(binom, total));
      binom = binom * static_cast<std::int64_t>(n - k) / static_cast<std::int64_t>(k + 1);
    }
  } else {
    std::vector<double> raw(n + 1);
    double sum = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double log_binom = std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
                               std::lgamma(double(n - k) + 1);
      raw[k] = std::exp(log_binom - double(n) * std::log(2.0));
      sum += raw[k];
    }
    for (double w : raw) weights.push_back(Scalar::inexact(w / sum));
  }
  return EmpiricalDataStructure(std::move(weights), {std::move(values)});
}

TransactionDatabase random_transaction_db(const RandomDatabaseSpec& spec) {
  if (spec.n_items == 0) throw std::invalid_argument("n_items must be >= 1");
  if (spec.n_transactions == 0) throw std::invalid_argument("n_transactions must be >= 1");
  if (!(spec.item_probability > 0.0 && spec.item_probability < 1.0)) {
    throw std::invalid_argument("item_probability must lie in (0, 1)");
  }

  std::mt19937_64 gen(spec.seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

  std::vector<ItemSet> transactions;
  transactions.reserve(spec.n_transactions);
  for (std::size_t t = 0; t < spec.n_transactions; ++t) {
    ItemSet draw;
    while (draw.empty()) {
      for (Item i = 0; i < spec.n_items; ++i) {
        if (uniform() < spec.item_probability) draw.push_back(i);
      }
    }
    transactions.push_back(std::move(draw));
  }
  collapse_duplicates(transactions);

  std::vector<std::string> labels;
  labels.reserve(spec.n_items);
  for (std::size_t i = 0; i < spec.n_items; ++i) labels.push_back(std::to_string(i + 1));
  return TransactionDatabase(spec.n_items, std::move(transactions), std::move(labels));
}

}  // namespace idim
