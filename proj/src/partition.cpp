#include "genlab/partition.hpp"

#include <bit>
#include <stdexcept>

namespace genlab {

std::uint32_t r_index(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("0 belongs to no R_k");
  return static_cast<std::uint32_t>(std::countr_zero(m));
}

std::uint64_t f_enum(std::uint32_t k, std::uint64_t x) {
  if (k > 63) throw std::invalid_argument("slice index beyond 64-bit range");
  std::uint64_t max_multiplier = ~std::uint64_t{0} >> k;
  if (x > (max_multiplier - 1) / 2)
    throw std::overflow_error("slice element beyond 64-bit range");
  return (std::uint64_t{1} << k) * (2 * x + 1);
}

NatSetPrefix encode_R(const Membership& a, std::uint64_t bound) {
  std::uint64_t mask = 0;
  for (std::uint32_t k = 0; (std::uint64_t{1} << k) < bound && k < 64; ++k)
    if (a(k)) mask |= std::uint64_t{1} << k;
  return encode_R_mask(mask, bound);
}

NatSetPrefix encode_R_mask(std::uint64_t mask, std::uint64_t bound) {
  NatSetPrefix out(bound);
  kernels::fill_coded(out.bits(), mask);
  return out;
}

DecodeOutcome decode_R(ListingReader& listing, std::uint32_t n,
                       std::uint64_t budget) {
  // One caching reader may serve many queries; the per-call budget bounds
  // additional consumption, not the lifetime total.
  std::uint64_t before = listing.consumed();
  DecodeOutcome out;
  out.bit = listing.find_bit_in_slice(n, budget);
  out.consumed = listing.consumed() - before;
  return out;
}

NatSetPrefix density_real_to_set(const std::function<int(std::uint64_t)>& bits,
                                 std::uint64_t bound) {
  return encode_R([&bits](std::uint64_t i) { return bits(i) != 0; }, bound);
}

WordSetPrefix spread_encode(const Membership& a, std::uint32_t max_len) {
  WordSetPrefix t(2, max_len);
  std::vector<std::uint8_t> word;
  // Words 0^n 1 w: choose n in A with n + 1 <= max_len, then every suffix.
  for (std::uint32_t n = 0; n + 1 <= max_len; ++n) {
    if (!a(n)) continue;
    for (std::uint32_t tail = 0; n + 1 + tail <= max_len; ++tail) {
      word.assign(n, 0);
      word.push_back(1);
      word.resize(n + 1 + tail, 0);
      while (true) {
        t.insert(word);
        std::uint32_t i = static_cast<std::uint32_t>(word.size());
        while (i > n + 1 && word[i - 1] == 1) word[--i] = 0;
        if (i == n + 1) break;
        word[i - 1] = 1;
      }
    }
  }
  return t;
}

}  // namespace genlab
