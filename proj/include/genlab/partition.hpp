#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "genlab/listing.hpp"
#include "genlab/natset.hpp"
#include "genlab/words.hpp"

namespace genlab {

// Total membership source for an abstract A ⊆ omega.
using Membership = std::function<bool(std::uint64_t)>;

// The unique k with m in R_k, i.e. the 2-adic valuation of m. m = 0 belongs
// to no slice and is rejected.
std::uint32_t r_index(std::uint64_t m);

// x-th element of R_k in increasing order: 2^k * (2x + 1).
std::uint64_t f_enum(std::uint32_t k, std::uint64_t x);

// Lazy view of the coded set R(A) = union of R_n over n in A.
class CodedSet {
 public:
  explicit CodedSet(Membership base) : base_(std::move(base)) {}

  // m in R(A) iff r_index(m) in A; 0 is never a member.
  bool contains(std::uint64_t m) const {
    return m != 0 && base_(r_index(m));
  }

  const Membership& base() const { return base_; }

 private:
  Membership base_;
};

// Prefix of R(A) below `bound`. A is consulted for indices up to
// floor(log2(bound)).
NatSetPrefix encode_R(const Membership& a, std::uint64_t bound);

// Fast path when A ⊆ [0, 64): bit k of mask is A(k).
NatSetPrefix encode_R_mask(std::uint64_t mask, std::uint64_t bound);

struct DecodeOutcome {
  std::optional<int> bit;  // empty means the consumption budget ran out
  std::uint64_t consumed = 0;
  bool budget_exceeded() const { return !bit.has_value(); }
};

inline constexpr std::uint64_t kDefaultListingBudget = std::uint64_t{1} << 22;

// Consume a generic listing of R(A) until some pair (m, b) with
// r_index(m) == n appears; b then equals A(n). A budget-exceeded outcome is
// reported as a value, distinct from any answer.
DecodeOutcome decode_R(ListingReader& listing, std::uint32_t n,
                       std::uint64_t budget = kDefaultListingBudget);

// Prefix of R(A) for A = {i : bits(i) = 1}, the binary-expansion bridge:
// the density of the result converges to the real with that expansion.
NatSetPrefix density_real_to_set(const std::function<int(std::uint64_t)>& bits,
                                 std::uint64_t bound);

// Spread encoding over {0,1}: T = { 0^n 1 w : n in A, w in {0,1}^* }, kept
// up to words of length max_len.
WordSetPrefix spread_encode(const Membership& a, std::uint32_t max_len);

}  // namespace genlab
