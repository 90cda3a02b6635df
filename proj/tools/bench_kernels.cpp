// Times the serial reference kernels against their OpenMP counterparts on
// the bit sizes the density calculus actually uses, and verifies that both
// paths return identical counts.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "genlab/bitset.hpp"

#ifdef GENLAB_HAVE_OPENMP
#include <omp.h>
#endif

using namespace genlab;

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
  auto start = Clock::now();
  for (int i = 0; i < reps; ++i) fn();
  auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

DynBitset random_bits(std::uint64_t nbits, std::uint64_t seed) {
  DynBitset bits(nbits);
  std::mt19937_64 rng(seed);
  for (std::uint64_t w = 0; w < bits.word_count(); ++w)
    bits.words()[w] = rng();
  if (nbits % 64)
    bits.words()[bits.word_count() - 1] &= (std::uint64_t{1} << (nbits % 64)) - 1;
  return bits;
}

}  // namespace

int main() {
#ifdef GENLAB_HAVE_OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif
  std::printf("%-18s %12s %12s %12s %8s\n", "kernel", "bits", "serial_ms",
              "parallel_ms", "speedup");

  for (std::uint64_t bits : {std::uint64_t{1} << 22, std::uint64_t{1} << 24,
                             std::uint64_t{1} << 26}) {
    DynBitset a = random_bits(bits, 0xA0A0);
    DynBitset b = random_bits(bits, 0xB1B1);
    int reps = bits >= (std::uint64_t{1} << 26) ? 20 : 50;

    std::uint64_t serial_count = kernels::popcount_range_serial(a, 3, bits - 5);
    std::uint64_t parallel_count = kernels::popcount_range_parallel(a, 3, bits - 5);
    if (serial_count != parallel_count) {
      std::fprintf(stderr, "popcount mismatch at %llu bits\n",
                   static_cast<unsigned long long>(bits));
      return 1;
    }
    double serial = time_ms([&] { kernels::popcount_range_serial(a, 3, bits - 5); }, reps);
    double parallel = time_ms([&] { kernels::popcount_range_parallel(a, 3, bits - 5); }, reps);
    std::printf("%-18s %12llu %12.3f %12.3f %8.2f\n", "popcount_range",
                static_cast<unsigned long long>(bits), serial, parallel,
                serial / parallel);

    if (kernels::xor_count_range_serial(a, b, 0, bits) !=
        kernels::xor_count_range_parallel(a, b, 0, bits)) {
      std::fprintf(stderr, "xor_count mismatch\n");
      return 1;
    }
    serial = time_ms([&] { kernels::xor_count_range_serial(a, b, 0, bits); }, reps);
    parallel = time_ms([&] { kernels::xor_count_range_parallel(a, b, 0, bits); }, reps);
    std::printf("%-18s %12llu %12.3f %12.3f %8.2f\n", "xor_count_range",
                static_cast<unsigned long long>(bits), serial, parallel,
                serial / parallel);

    DynBitset coded_serial(bits), coded_parallel(bits);
    kernels::fill_coded_serial(coded_serial, 0b1011);
    kernels::fill_coded_parallel(coded_parallel, 0b1011);
    if (!(coded_serial == coded_parallel)) {
      std::fprintf(stderr, "fill_coded mismatch\n");
      return 1;
    }
    serial = time_ms([&] { kernels::fill_coded_serial(coded_serial, 0b1011); }, reps);
    parallel = time_ms([&] { kernels::fill_coded_parallel(coded_parallel, 0b1011); }, reps);
    std::printf("%-18s %12llu %12.3f %12.3f %8.2f\n", "fill_coded",
                static_cast<unsigned long long>(bits), serial, parallel,
                serial / parallel);

    if (kernels::stride_count_serial(a, 4, 8, bits - 1) !=
        kernels::stride_count_parallel(a, 4, 8, bits - 1)) {
      std::fprintf(stderr, "stride_count mismatch\n");
      return 1;
    }
    serial = time_ms([&] { kernels::stride_count_serial(a, 4, 8, bits - 1); }, reps);
    parallel = time_ms([&] { kernels::stride_count_parallel(a, 4, 8, bits - 1); }, reps);
    std::printf("%-18s %12llu %12.3f %12.3f %8.2f\n", "stride_count",
                static_cast<unsigned long long>(bits), serial, parallel,
                serial / parallel);
  }
  return 0;
}
