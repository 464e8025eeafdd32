#pragma once

#include <cstddef>
#include <cstdint>

#include "idim/geometry.hpp"
#include "idim/transactions.hpp"

namespace idim {

struct HypercubeSpec {
  std::size_t n = 1;
};

/// Largest cube dimension whose binomial weights are kept as exact rationals.
inline constexpr std::size_t kExactCubeLimit = 30;

/// The uniform measure on {0,1}^n pushed forward by the normalized
/// coordinate sum: points k/n with weights C(n,k)/2^n, k = 0..n, and that
/// single feature. Throws std::invalid_argument for n == 0.
EmpiricalDataStructure hamming_cube_structure(const HypercubeSpec& spec);

struct RandomDatabaseSpec {
  std::uint64_t seed = 0;
  std::size_t n_items = 1;
  std::size_t n_transactions = 1;
  double item_probability = 0.5;
};

/// Each transaction holds each item independently with the given
/// probability; empty draws are redrawn and repeats collapsed. Uses
/// std::mt19937_64 (whose output sequence the standard fixes) and takes
/// uniforms from its top 53 bits, so results are platform independent.
/// Item i is labeled i + 1. Throws std::invalid_argument for out-of-range
/// parameters.
TransactionDatabase random_transaction_db(const RandomDatabaseSpec& spec);

}  // namespace idim
