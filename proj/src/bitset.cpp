#include "genlab/bitset.hpp"

#include <bit>
#include <stdexcept>

#ifdef GENLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace genlab {

DynBitset::DynBitset(std::uint64_t nbits)
    : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

namespace kernels {

namespace {

// Parallel paths pay off only on multi-megabit inputs.
constexpr std::uint64_t kParallelBits = 1u << 21;

inline std::uint64_t mask_low(unsigned n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

// Generic word-wise range count: f(word_index) must return the 64-bit word
// to popcount at that index. Edges are trimmed to [lo, hi).
template <typename WordFn>
std::uint64_t range_count_serial_impl(std::uint64_t lo, std::uint64_t hi,
                                      WordFn f) {
  if (lo >= hi) return 0;
  std::uint64_t w_lo = lo >> 6, w_hi = (hi - 1) >> 6;
  if (w_lo == w_hi) {
    std::uint64_t w = f(w_lo) >> (lo & 63);
    return std::popcount(w & mask_low(static_cast<unsigned>(hi - lo)));
  }
  std::uint64_t total = std::popcount(f(w_lo) >> (lo & 63));
  for (std::uint64_t i = w_lo + 1; i < w_hi; ++i) total += std::popcount(f(i));
  total += std::popcount(f(w_hi) & mask_low(static_cast<unsigned>(hi - (w_hi << 6))));
  return total;
}

template <typename WordFn>
std::uint64_t range_count_parallel_impl(std::uint64_t lo, std::uint64_t hi,
                                        WordFn f) {
  if (lo >= hi) return 0;
  std::uint64_t w_lo = lo >> 6, w_hi = (hi - 1) >> 6;
  if (w_hi - w_lo < 2) return range_count_serial_impl(lo, hi, f);
  std::uint64_t total = std::popcount(f(w_lo) >> (lo & 63)) +
                        std::popcount(f(w_hi) & mask_low(static_cast<unsigned>(
                                          hi - (w_hi << 6))));
  std::int64_t first = static_cast<std::int64_t>(w_lo) + 1;
  std::int64_t last = static_cast<std::int64_t>(w_hi);
  std::uint64_t mid = 0;
#ifdef GENLAB_HAVE_OPENMP
#pragma omp parallel for reduction(+ : mid) schedule(static)
#endif
  for (std::int64_t i = first; i < last; ++i)
    mid += std::popcount(f(static_cast<std::uint64_t>(i)));
  return total + mid;
}

void check_range(const DynBitset& a, std::uint64_t hi) {
  if (hi > a.size()) throw std::out_of_range("bit range beyond bitset size");
}

}  // namespace

std::uint64_t popcount_range_serial(const DynBitset& a, std::uint64_t lo,
                                    std::uint64_t hi) {
  check_range(a, hi);
  const std::uint64_t* w = a.words();
  return range_count_serial_impl(lo, hi, [w](std::uint64_t i) { return w[i]; });
}

std::uint64_t popcount_range_parallel(const DynBitset& a, std::uint64_t lo,
                                      std::uint64_t hi) {
  check_range(a, hi);
  const std::uint64_t* w = a.words();
  return range_count_parallel_impl(lo, hi,
                                   [w](std::uint64_t i) { return w[i]; });
}

std::uint64_t popcount_range(const DynBitset& a, std::uint64_t lo,
                             std::uint64_t hi) {
  return (hi - lo >= kParallelBits) ? popcount_range_parallel(a, lo, hi)
                                    : popcount_range_serial(a, lo, hi);
}

std::uint64_t xor_count_range_serial(const DynBitset& a, const DynBitset& b,
                                     std::uint64_t lo, std::uint64_t hi) {
  check_range(a, hi);
  check_range(b, hi);
  const std::uint64_t* wa = a.words();
  const std::uint64_t* wb = b.words();
  return range_count_serial_impl(
      lo, hi, [wa, wb](std::uint64_t i) { return wa[i] ^ wb[i]; });
}

std::uint64_t xor_count_range_parallel(const DynBitset& a, const DynBitset& b,
                                       std::uint64_t lo, std::uint64_t hi) {
  check_range(a, hi);
  check_range(b, hi);
  const std::uint64_t* wa = a.words();
  const std::uint64_t* wb = b.words();
  return range_count_parallel_impl(
      lo, hi, [wa, wb](std::uint64_t i) { return wa[i] ^ wb[i]; });
}

std::uint64_t xor_count_range(const DynBitset& a, const DynBitset& b,
                              std::uint64_t lo, std::uint64_t hi) {
  return (hi - lo >= kParallelBits) ? xor_count_range_parallel(a, b, lo, hi)
                                    : xor_count_range_serial(a, b, lo, hi);
}

std::uint64_t and_count_range_serial(const DynBitset& a, const DynBitset& b,
                                     std::uint64_t lo, std::uint64_t hi) {
  check_range(a, hi);
  check_range(b, hi);
  const std::uint64_t* wa = a.words();
  const std::uint64_t* wb = b.words();
  return range_count_serial_impl(
      lo, hi, [wa, wb](std::uint64_t i) { return wa[i] & wb[i]; });
}

std::uint64_t and_count_range_parallel(const DynBitset& a, const DynBitset& b,
                                       std::uint64_t lo, std::uint64_t hi) {
  check_range(a, hi);
  check_range(b, hi);
  const std::uint64_t* wa = a.words();
  const std::uint64_t* wb = b.words();
  return range_count_parallel_impl(
      lo, hi, [wa, wb](std::uint64_t i) { return wa[i] & wb[i]; });
}

std::uint64_t and_count_range(const DynBitset& a, const DynBitset& b,
                              std::uint64_t lo, std::uint64_t hi) {
  return (hi - lo >= kParallelBits) ? and_count_range_parallel(a, b, lo, hi)
                                    : and_count_range_serial(a, b, lo, hi);
}

std::uint64_t andnot_count_range_serial(const DynBitset& a, const DynBitset& b,
                                        std::uint64_t lo, std::uint64_t hi) {
  check_range(a, hi);
  check_range(b, hi);
  const std::uint64_t* wa = a.words();
  const std::uint64_t* wb = b.words();
  return range_count_serial_impl(
      lo, hi, [wa, wb](std::uint64_t i) { return wa[i] & ~wb[i]; });
}

std::uint64_t andnot_count_range(const DynBitset& a, const DynBitset& b,
                                 std::uint64_t lo, std::uint64_t hi) {
  return andnot_count_range_serial(a, b, lo, hi);
}

namespace {

inline std::uint64_t coded_word(std::uint64_t word_index, std::uint64_t mask) {
  std::uint64_t w = 0;
  std::uint64_t base = word_index << 6;
  for (unsigned bit = 0; bit < 64; ++bit) {
    std::uint64_t m = base + bit;
    if (m == 0) continue;
    unsigned k = static_cast<unsigned>(std::countr_zero(m));
    if (k < 64 && ((mask >> k) & 1u)) w |= std::uint64_t{1} << bit;
  }
  return w;
}

}  // namespace

void fill_coded_serial(DynBitset& out, std::uint64_t mask) {
  std::uint64_t nw = out.word_count();
  std::uint64_t* w = out.words();
  for (std::uint64_t i = 0; i < nw; ++i) w[i] = coded_word(i, mask);
  // Clear bits beyond size.
  if (out.size() & 63) w[nw - 1] &= mask_low(static_cast<unsigned>(out.size() & 63));
}

void fill_coded_parallel(DynBitset& out, std::uint64_t mask) {
  std::int64_t nw = static_cast<std::int64_t>(out.word_count());
  std::uint64_t* w = out.words();
#ifdef GENLAB_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < nw; ++i)
    w[i] = coded_word(static_cast<std::uint64_t>(i), mask);
  if (out.size() & 63)
    w[nw - 1] &= mask_low(static_cast<unsigned>(out.size() & 63));
}

void fill_coded(DynBitset& out, std::uint64_t mask) {
  if (out.size() >= kParallelBits) fill_coded_parallel(out, mask);
  else fill_coded_serial(out, mask);
}

std::uint64_t stride_count_serial(const DynBitset& a, std::uint64_t start,
                                  std::uint64_t stride, std::uint64_t limit) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  std::uint64_t total = 0;
  for (std::uint64_t m = start; m <= limit && m < a.size(); m += stride)
    total += a.test(m);
  return total;
}

std::uint64_t stride_count_parallel(const DynBitset& a, std::uint64_t start,
                                    std::uint64_t stride, std::uint64_t limit) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  std::uint64_t hi = limit < a.size() ? limit + 1 : a.size();
  if (start >= hi) return 0;
  std::int64_t n = static_cast<std::int64_t>((hi - 1 - start) / stride) + 1;
  std::uint64_t total = 0;
#ifdef GENLAB_HAVE_OPENMP
#pragma omp parallel for reduction(+ : total) schedule(static)
#endif
  for (std::int64_t j = 0; j < n; ++j)
    total += a.test(start + static_cast<std::uint64_t>(j) * stride);
  return total;
}

std::uint64_t stride_count(const DynBitset& a, std::uint64_t start,
                           std::uint64_t stride, std::uint64_t limit) {
  std::uint64_t hi = limit < a.size() ? limit + 1 : a.size();
  std::uint64_t n = start >= hi ? 0 : (hi - 1 - start) / stride + 1;
  return (n >= (1u << 16)) ? stride_count_parallel(a, start, stride, limit)
                           : stride_count_serial(a, start, stride, limit);
}

}  // namespace kernels

}  // namespace genlab
