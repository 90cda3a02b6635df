#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>

#include "genlab/bitset.hpp"

namespace genlab {

// Finite, extensional approximation of a subset of omega: membership is
// known for every m < bound() and for nothing else. Queries at or above the
// bound throw instead of guessing.
class NatSetPrefix {
 public:
  NatSetPrefix() = default;
  explicit NatSetPrefix(std::uint64_t bound) : bits_(bound) {}

  static NatSetPrefix from_predicate(std::uint64_t bound,
                                     const std::function<bool(std::uint64_t)>& pred);
  static NatSetPrefix from_elements(std::uint64_t bound,
                                    std::initializer_list<std::uint64_t> elems);

  std::uint64_t bound() const { return bits_.size(); }

  bool contains(std::uint64_t m) const;  // throws out_of_range for m >= bound
  void insert(std::uint64_t m);
  void erase(std::uint64_t m);

  // |A ∩ [0, n]|, the prefix count behind every density; requires n < bound.
  std::uint64_t count_through(std::uint64_t n) const;

  // Popcount of the whole known prefix.
  std::uint64_t size() const;

  bool empty_through(std::uint64_t n) const { return count_through(n) == 0; }

  const DynBitset& bits() const { return bits_; }
  DynBitset& bits() { return bits_; }

  bool operator==(const NatSetPrefix&) const = default;

 private:
  DynBitset bits_;
};

// Stock prefixes used throughout the tests and the CLI.
namespace sets {
NatSetPrefix empty(std::uint64_t bound);
NatSetPrefix all(std::uint64_t bound);
NatSetPrefix evens(std::uint64_t bound);
NatSetPrefix odds(std::uint64_t bound);
NatSetPrefix multiples(std::uint64_t k, std::uint64_t bound);
// {m >= 1 : floor(log2 m) is even}; oscillating density.
NatSetPrefix log2_even(std::uint64_t bound);
}  // namespace sets

}  // namespace genlab
