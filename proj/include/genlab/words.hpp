#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "genlab/bitset.hpp"
#include "genlab/rational.hpp"

namespace genlab {

// Finite approximation of a set of words over a fixed alphabet: membership
// is stored for every word of length <= bound. Words are sequences of
// letters in [0, alphabet_size); ranks are length-major.
class WordSetPrefix {
 public:
  WordSetPrefix(std::uint32_t alphabet_size, std::uint32_t bound);

  static WordSetPrefix from_predicate(
      std::uint32_t alphabet_size, std::uint32_t bound,
      const std::function<bool(std::span<const std::uint8_t>)>& pred);

  std::uint32_t alphabet_size() const { return sigma_; }
  std::uint32_t bound() const { return bound_; }

  bool contains(std::span<const std::uint8_t> word) const;
  void insert(std::span<const std::uint8_t> word);

  // |Sigma^* restricted to length <= n| = (sigma^{n+1}-1)/(sigma-1), or n+1
  // for the unary alphabet.
  std::uint64_t universe_count(std::uint32_t n) const;

  // Members of length <= n.
  std::uint64_t count_through(std::uint32_t n) const;

 private:
  std::uint64_t rank(std::span<const std::uint8_t> word) const;

  std::uint32_t sigma_;
  std::uint32_t bound_;
  std::vector<std::uint64_t> level_offset_;  // rank of first word per length
  DynBitset bits_;
};

// |S restricted to n| / |Sigma^* restricted to n|; requires n <= S.bound().
Rational word_prefix_density(const WordSetPrefix& s, std::uint32_t n);

}  // namespace genlab
