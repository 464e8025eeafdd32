#pragma once

#include <random>
#include <sstream>
#include <string>

#include "idim/ingest.hpp"
#include "idim/synthetic.hpp"
#include "idim/transactions.hpp"

namespace idim::fixtures {

/// I = {a, b, c}, T = {{a, b}, {a, b, c}, {c}}.
inline constexpr const char* kToyText = "a b\na b c\nc\n";

inline TransactionDatabase toy_db() {
  std::istringstream in(kToyText);
  return parse_transactions(in).db;
}

/// Small random database with |I| <= 8 and |T| <= 12, drawn from `rng`.
inline TransactionDatabase small_random_db(std::mt19937_64& rng) {
  const std::size_t n_items = 1 + rng() % 8;
  const std::size_t n_trans = 1 + rng() % 12;
  const double p = 0.2 + 0.6 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return random_transaction_db({rng(), n_items, n_trans, p});
}

}  // namespace idim::fixtures
