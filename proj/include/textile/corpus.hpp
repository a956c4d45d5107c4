#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "textile/matrix.hpp"
#include "textile/system.hpp"

namespace textile {

/// A named system in the validation corpus.
struct CorpusEntry {
  std::string name;
  TextileSystem system;
};

/// Circulant matrix whose first row is `first_row`; any two circulants of the
/// same size commute.
inline CountMatrix circulant(const std::vector<std::int64_t>& first_row) {
  const std::size_t n = first_row.size();
  CountMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = first_row[(j + n - i) % n];
  return c;
}

namespace detail {

inline std::string row_text(const std::vector<std::int64_t>& row) {
  std::string s;
  for (auto v : row) s += std::to_string(v);
  return s;
}

inline std::vector<std::int64_t> random_circulant_row(std::mt19937_64& rng, std::size_t n,
                                                      std::size_t max_weight) {
  std::uniform_int_distribution<std::size_t> weight(1, std::min(n, max_weight));
  std::vector<std::int64_t> row(n, 0);
  std::vector<std::size_t> slots(n);
  for (std::size_t k = 0; k < n; ++k) slots[k] = k;
  std::shuffle(slots.begin(), slots.end(), rng);
  const std::size_t w = weight(rng);
  for (std::size_t k = 0; k < w; ++k) row[slots[k]] = 1;
  return row;
}

} // namespace detail

/// `count` circulant {0,1} pairs of size 2..5 with canonical specifications,
/// drawn deterministically from `seed`.
inline std::vector<CorpusEntry> circulant_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, 5);
  std::vector<CorpusEntry> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = size(rng);
    // Small weights keep |Omega_kappa| within search range for most pairs.
    const auto ra = detail::random_circulant_row(rng, n, 2);
    const auto rb = detail::random_circulant_row(rng, n, 2);
    out.push_back({"circulant(" + detail::row_text(ra) + "," + detail::row_text(rb) + ")",
                   build_canonical_system(circulant(ra), circulant(rb))});
  }
  return out;
}

/// The standard validation corpus: exchange systems for 2 <= N <= M <= 6,
/// `circulant_count` seeded circulant pairs, pairs (A, I) and (A, A), and
/// reducible systems (including A = B = I_2) that are not transitive.
inline std::vector<CorpusEntry> standard_corpus(std::uint64_t seed = 1,
                                                std::size_t circulant_count = 24) {
  std::vector<CorpusEntry> out;
  for (std::int64_t n = 2; n <= 6; ++n)
    for (std::int64_t m = n; m <= 6; ++m)
      out.push_back({"exchange(" + std::to_string(n) + "," + std::to_string(m) + ")",
                     build_exchange_system(n, m)});

  for (auto& entry : circulant_corpus(seed, circulant_count)) out.push_back(std::move(entry));

  const CountMatrix i2 = CountMatrix::identity(2);
  const CountMatrix i3 = CountMatrix::identity(3);
  const CountMatrix upper{{1, 1}, {0, 1}};
  const CountMatrix swap{{0, 1}, {1, 0}};
  const CountMatrix cycle3 = circulant({0, 1, 0});
  const CountMatrix full2{{1, 1}, {1, 1}};
  const CountMatrix blocks{{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}};

  out.push_back({"identity(I2,I2)", build_canonical_system(i2, i2)});
  out.push_back({"pair(upper,I2)", build_canonical_system(upper, i2)});
  out.push_back({"pair(swap,I2)", build_canonical_system(swap, i2)});
  out.push_back({"pair(cycle3,I3)", build_canonical_system(cycle3, i3)});
  out.push_back({"pair(full2,full2)", build_canonical_system(full2, full2)});
  out.push_back({"pair(swap,swap)", build_canonical_system(swap, swap)});
  out.push_back({"pair([2],[2])", build_canonical_system(CountMatrix{{2}}, CountMatrix{{2}})});
  out.push_back({"pair(blocks,I4)", build_canonical_system(blocks, CountMatrix::identity(4))});
  out.push_back({"pair(blocks,blocks)", build_canonical_system(blocks, blocks)});
  return out;
}

} // namespace textile
