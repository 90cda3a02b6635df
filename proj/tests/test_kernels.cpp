#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "genlab/bitset.hpp"
#include "genlab/partition.hpp"

using namespace genlab;

namespace {

DynBitset random_bits(std::uint64_t nbits, std::uint64_t seed) {
  DynBitset bits(nbits);
  std::mt19937_64 rng(seed);
  for (std::uint64_t m = 0; m < nbits; ++m)
    if (rng() & 1) bits.set(m);
  return bits;
}

// Bit-at-a-time reference all kernels are checked against.
std::uint64_t naive_count(const DynBitset& a, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t total = 0;
  for (std::uint64_t i = lo; i < hi; ++i) total += a.test(i);
  return total;
}

}  // namespace

TEST_CASE("popcount_range: serial, parallel and naive agree on random ranges") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint64_t nbits = 1 + rng() % 5000;
    DynBitset a = random_bits(nbits, rng());
    std::uint64_t lo = rng() % (nbits + 1);
    std::uint64_t hi = lo + rng() % (nbits + 1 - lo);
    std::uint64_t expected = naive_count(a, lo, hi);
    CHECK(kernels::popcount_range_serial(a, lo, hi) == expected);
    CHECK(kernels::popcount_range_parallel(a, lo, hi) == expected);
    CHECK(kernels::popcount_range(a, lo, hi) == expected);
  }
}

TEST_CASE("popcount_range covers full words and odd edges") {
  DynBitset a(256);
  for (std::uint64_t i = 0; i < 256; i += 3) a.set(i);
  CHECK(kernels::popcount_range_serial(a, 0, 256) == 86);
  CHECK(kernels::popcount_range_serial(a, 0, 0) == 0);
  CHECK(kernels::popcount_range_serial(a, 63, 65) == naive_count(a, 63, 65));
  CHECK(kernels::popcount_range_serial(a, 64, 128) == naive_count(a, 64, 128));
  CHECK_THROWS_AS(kernels::popcount_range_serial(a, 0, 257), std::out_of_range);
}

TEST_CASE("xor/and/andnot counts match the naive loops") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::uint64_t nbits = 1 + rng() % 3000;
    DynBitset a = random_bits(nbits, rng());
    DynBitset b = random_bits(nbits, rng());
    std::uint64_t lo = rng() % (nbits + 1);
    std::uint64_t hi = lo + rng() % (nbits + 1 - lo);
    std::uint64_t want_xor = 0, want_and = 0, want_andnot = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      want_xor += a.test(i) != b.test(i);
      want_and += a.test(i) && b.test(i);
      want_andnot += a.test(i) && !b.test(i);
    }
    CHECK(kernels::xor_count_range_serial(a, b, lo, hi) == want_xor);
    CHECK(kernels::xor_count_range_parallel(a, b, lo, hi) == want_xor);
    CHECK(kernels::and_count_range_serial(a, b, lo, hi) == want_and);
    CHECK(kernels::and_count_range_parallel(a, b, lo, hi) == want_and);
    CHECK(kernels::andnot_count_range_serial(a, b, lo, hi) == want_andnot);
  }
}

TEST_CASE("fill_coded matches the per-bit slice definition") {
  for (std::uint64_t mask : {0ull, 1ull, 0b1011ull, 0xF0Full}) {
    DynBitset serial(9000), parallel(9000);
    kernels::fill_coded_serial(serial, mask);
    kernels::fill_coded_parallel(parallel, mask);
    CHECK(serial == parallel);
    for (std::uint64_t m = 0; m < 9000; ++m) {
      bool expected = m != 0 && ((mask >> r_index(m)) & 1);
      CHECK(serial.test(m) == expected);
    }
  }
}

TEST_CASE("stride_count matches the naive gather") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    std::uint64_t nbits = 64 + rng() % 4000;
    DynBitset a = random_bits(nbits, rng());
    std::uint64_t start = rng() % nbits;
    std::uint64_t stride = 1 + rng() % 64;
    std::uint64_t limit = rng() % nbits;
    std::uint64_t expected = 0;
    for (std::uint64_t m = start; m <= limit; m += stride) expected += a.test(m);
    CHECK(kernels::stride_count_serial(a, start, stride, limit) == expected);
    CHECK(kernels::stride_count_parallel(a, start, stride, limit) == expected);
  }
}
