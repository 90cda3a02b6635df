#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "genlab/density.hpp"
#include "genlab/partition.hpp"
#include "genlab/words.hpp"

using namespace genlab;

namespace {

NatSetPrefix random_set(std::uint64_t bound, std::mt19937_64& rng) {
  NatSetPrefix s(bound);
  for (std::uint64_t m = 0; m < bound; ++m)
    if (rng() & 1) s.insert(m);
  return s;
}

// Independent counting oracle: a plain loop with its own membership test.
std::uint64_t slice_count(std::uint32_t k, std::uint64_t n) {
  std::uint64_t total = 0;
  for (std::uint64_t m = 1; m <= n; ++m)
    if (r_index(m) == k) ++total;
  return total;
}

}  // namespace

TEST_CASE("prefix_density on the stock sets") {
  CHECK(prefix_density(sets::odds(16), 9) == ratio(1, 2));
  CHECK(prefix_density(sets::empty(128), 100) == Rational(0));

  // R_2 prefix at n = 31: {4, 12, 20, 28}, 4/32; the slice's limit density
  // is 2^{-3}.
  NatSetPrefix r2 = NatSetPrefix::from_predicate(
      32, [](std::uint64_t m) { return m != 0 && r_index(m) == 2; });
  CHECK(prefix_density(r2, 31) == ratio(1, 8));
  CHECK(slice_count(2, 31) == 4);

  CHECK_THROWS_AS(prefix_density(sets::odds(16), 16), std::out_of_range);
}

TEST_CASE("density_profile: samples, estimates, errors") {
  std::vector<std::uint64_t> points{9, 99};
  DensityProfile omega = density_profile(sets::all(128), points);
  CHECK(omega.samples[0].second == Rational(1));
  CHECK(omega.samples[1].second == Rational(1));
  CHECK(omega.upper_estimate == Rational(1));
  CHECK(omega.lower_estimate == Rational(1));

  // R({0,1}) tends to 3/4; verify each sample against the slice-count
  // oracle and that the tail estimates bracket 3/4 tightly.
  std::uint64_t bound = 1u << 16;
  NatSetPrefix coded = encode_R_mask(0b11, bound);
  std::vector<std::uint64_t> far{1023, 4095, 16383, 65535};
  DensityProfile profile = density_profile(coded, far);
  for (auto [n, rho] : profile.samples) {
    std::uint64_t expected = slice_count(0, n) + slice_count(1, n);
    CHECK(rho == ratio(expected, n + 1));
  }
  CHECK(profile.upper_estimate >= ratio(3, 4) - ratio(1, 1000));
  CHECK(profile.lower_estimate <= ratio(3, 4));
  CHECK(profile.upper_estimate - profile.lower_estimate < ratio(1, 1000));

  // Oscillating density: floor(log2 m) even.
  std::vector<std::uint64_t> pow2;
  for (std::uint32_t j = 4; j <= 14; ++j) pow2.push_back((1u << j) - 1);
  DensityProfile osc = density_profile(sets::log2_even(1u << 14), pow2, 1.0);
  CHECK(osc.upper_estimate > osc.lower_estimate);
  CHECK(osc.upper_estimate - osc.lower_estimate > ratio(1, 4));

  CHECK_THROWS_AS(density_profile(sets::all(8), std::vector<std::uint64_t>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      density_profile(sets::all(8), std::vector<std::uint64_t>{3, 3}),
      std::invalid_argument);
}

TEST_CASE("density profile CSV layout") {
  DensityProfile profile = density_profile(sets::odds(16),
                                           std::vector<std::uint64_t>{9});
  std::ostringstream out;
  profile.write_csv(out);
  CHECK(out.str() == "n,rho_num,rho_den,rho_float\n9,1,2,0.5\n");
}

TEST_CASE("relative_density") {
  NatSetPrefix evens = sets::evens(128);
  CHECK(relative_density(evens, evens, 99) == Rational(1));
  CHECK(relative_density(sets::empty(128), evens, 99) == Rational(0));
  CHECK(relative_density(sets::multiples(4, 128), evens, 99) == ratio(1, 2));

  CHECK_THROWS_AS(relative_density(sets::odds(128), sets::empty(128), 10),
                  std::invalid_argument);
  NatSetPrefix empty = sets::empty(128);
  CHECK_THROWS_AS(relative_density(empty, empty, 10), std::domain_error);
}

TEST_CASE("symdiff_density") {
  NatSetPrefix evens = sets::evens(256), odds = sets::odds(256);
  CHECK(symdiff_density(evens, evens, 200) == Rational(0));
  CHECK(symdiff_density(evens, odds, 137) == Rational(1));

  NatSetPrefix r1 = encode_R_mask(0b10, 64);
  CHECK(symdiff_density(r1, sets::empty(64), 63) == ratio(16, 64));
  CHECK(slice_count(1, 63) == 16);
}

TEST_CASE("rca_check: exact finite additivity on the slice partition") {
  SUBCASE("empty part list") {
    auto [lhs, rhs] = rca_check({}, 100);
    CHECK(lhs == Rational(0));
    CHECK(rhs == Rational(0));
  }

  std::uint64_t n = (1u << 10) - 1;
  std::vector<NatSetPrefix> parts;
  for (std::uint32_t k = 0; k <= 5; ++k)
    parts.push_back(NatSetPrefix::from_predicate(n + 1, [k](std::uint64_t m) {
      return m != 0 && r_index(m) == k;
    }));
  auto [lhs, rhs] = rca_check(parts, n);
  CHECK(lhs == rhs);

  // Overlap must be rejected.
  parts.push_back(parts.front());
  CHECK_THROWS_AS(rca_check(parts, n), std::invalid_argument);
}

TEST_CASE("density invariants on random prefixes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    std::uint64_t bound = 64 + rng() % 512;
    std::uint64_t n = bound - 1 - rng() % (bound / 2);
    NatSetPrefix a = random_set(bound, rng);
    NatSetPrefix b = random_set(bound, rng);

    Rational rho_a = prefix_density(a, n);
    CHECK(rho_a >= 0);
    CHECK(rho_a <= 1);
    CHECK((rho_a == 0) == (a.count_through(n) == 0));
    CHECK((rho_a == 1) == (a.count_through(n) == n + 1));

    // Triangle bound and symmetry.
    Rational rho_b = prefix_density(b, n);
    Rational diff = rho_a > rho_b ? rho_a - rho_b : rho_b - rho_a;
    CHECK(diff <= symdiff_density(a, b, n));
    CHECK(symdiff_density(a, b, n) == symdiff_density(b, a, n));

    // Finite additivity: split a into its even and odd members.
    NatSetPrefix even_part(bound), odd_part(bound);
    for (std::uint64_t m = 0; m < bound; ++m) {
      if (!a.contains(m)) continue;
      (m % 2 == 0 ? even_part : odd_part).insert(m);
    }
    CHECK(prefix_density(even_part, n) + prefix_density(odd_part, n) == rho_a);

    // Monotonicity: a ∩ b ⊆ a.
    NatSetPrefix inter(bound);
    for (std::uint64_t m = 0; m < bound; ++m)
      if (a.contains(m) && b.contains(m)) inter.insert(m);
    CHECK(prefix_density(inter, n) <= rho_a);
  }
}

TEST_CASE("strong_genericity_fit: words containing a 1") {
  // Exact counts by word enumeration: the gap at length n is
  // (n+1)/(2^{n+1}-1), which decays like a half per letter.
  WordSetPrefix has_one = WordSetPrefix::from_predicate(
      2, 14, [](std::span<const std::uint8_t> w) {
        for (std::uint8_t letter : w)
          if (letter == 1) return true;
        return false;
      });
  DensityProfile profile;
  for (std::uint32_t n = 2; n <= 14; ++n)
    profile.samples.emplace_back(n, word_prefix_density(has_one, n));

  GenericityFit fit = strong_genericity_fit(profile);
  REQUIRE(fit.kind == GenericityFit::Kind::Fit);
  CHECK(to_double(fit.sigma) > 0.40);
  CHECK(to_double(fit.sigma) < 0.65);
  // The returned pair dominates every sample exactly.
  for (auto [n, rho] : profile.samples) {
    Rational bound = fit.c;
    for (std::uint64_t i = 0; i < n; ++i) bound *= fit.sigma;
    CHECK(Rational(1) - rho <= bound);
  }
}

TEST_CASE("strong_genericity_fit: constant-gap and degenerate inputs") {
  std::vector<std::uint64_t> points{15, 31, 63, 127, 255, 511};
  DensityProfile evens = density_profile(sets::evens(1024), points);
  CHECK(strong_genericity_fit(evens).kind == GenericityFit::Kind::NoFit);

  DensityProfile omega = density_profile(sets::all(1024), points);
  GenericityFit degenerate = strong_genericity_fit(omega);
  CHECK(degenerate.kind == GenericityFit::Kind::Degenerate);
  CHECK(degenerate.c == Rational(1));
  CHECK(degenerate.sigma == ratio(1, 2));
}
