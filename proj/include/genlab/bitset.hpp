#pragma once

#include <cstdint>
#include <vector>

namespace genlab {

// Flat bit vector sized at construction. The counting loops below are the
// hot path of every density computation; each ships in a serial reference
// version and an OpenMP version, checked against each other in the tests
// and timed against each other by the bench_kernels tool.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::uint64_t nbits);

  std::uint64_t size() const { return nbits_; }

  bool test(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint64_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void assign(std::uint64_t i, bool b) {
    if (b) set(i); else reset(i);
  }

  const std::uint64_t* words() const { return words_.data(); }
  std::uint64_t* words() { return words_.data(); }
  std::uint64_t word_count() const { return words_.size(); }

  bool operator==(const DynBitset&) const = default;

 private:
  std::uint64_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

namespace kernels {

// All ranges are half-open bit index ranges [lo, hi), hi <= size.

std::uint64_t popcount_range_serial(const DynBitset& a, std::uint64_t lo,
                                    std::uint64_t hi);
std::uint64_t popcount_range_parallel(const DynBitset& a, std::uint64_t lo,
                                      std::uint64_t hi);
std::uint64_t popcount_range(const DynBitset& a, std::uint64_t lo,
                             std::uint64_t hi);

// popcount of (a XOR b) over [lo, hi) without materializing the xor.
std::uint64_t xor_count_range_serial(const DynBitset& a, const DynBitset& b,
                                     std::uint64_t lo, std::uint64_t hi);
std::uint64_t xor_count_range_parallel(const DynBitset& a, const DynBitset& b,
                                       std::uint64_t lo, std::uint64_t hi);
std::uint64_t xor_count_range(const DynBitset& a, const DynBitset& b,
                              std::uint64_t lo, std::uint64_t hi);

// popcount of (a AND b) over [lo, hi).
std::uint64_t and_count_range_serial(const DynBitset& a, const DynBitset& b,
                                     std::uint64_t lo, std::uint64_t hi);
std::uint64_t and_count_range_parallel(const DynBitset& a, const DynBitset& b,
                                       std::uint64_t lo, std::uint64_t hi);
std::uint64_t and_count_range(const DynBitset& a, const DynBitset& b,
                              std::uint64_t lo, std::uint64_t hi);

// a AND NOT b over [lo, hi); used for subset checks.
std::uint64_t andnot_count_range_serial(const DynBitset& a, const DynBitset& b,
                                        std::uint64_t lo, std::uint64_t hi);
std::uint64_t andnot_count_range(const DynBitset& a, const DynBitset& b,
                                 std::uint64_t lo, std::uint64_t hiv);

// Membership bits of the coded set R(mask): bit m is set iff the 2-adic
// valuation of m is a member of `mask` (m = 0 stays clear). Word-parallel.
void fill_coded_serial(DynBitset& out, std::uint64_t mask);
void fill_coded_parallel(DynBitset& out, std::uint64_t mask);
void fill_coded(DynBitset& out, std::uint64_t mask);

// Count of {j : start + j*stride <= limit, bit set}, the strided gather
// behind the coarse threshold decoder.
std::uint64_t stride_count_serial(const DynBitset& a, std::uint64_t start,
                                  std::uint64_t stride, std::uint64_t limit);
std::uint64_t stride_count_parallel(const DynBitset& a, std::uint64_t start,
                                    std::uint64_t stride, std::uint64_t limit);
std::uint64_t stride_count(const DynBitset& a, std::uint64_t start,
                           std::uint64_t stride, std::uint64_t limit);

}  // namespace kernels

}  // namespace genlab
