#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "genlab/partition.hpp"
#include "genlab/words.hpp"

using namespace genlab;

namespace {

std::vector<std::uint8_t> word(std::initializer_list<int> letters) {
  std::vector<std::uint8_t> w;
  for (int letter : letters) w.push_back(static_cast<std::uint8_t>(letter));
  return w;
}

// Brute-force oracle: enumerate every word of length <= n and count with an
// independent predicate.
std::uint64_t enumerate_count(
    std::uint32_t sigma, std::uint32_t n,
    const std::function<bool(const std::vector<std::uint8_t>&)>& pred) {
  std::uint64_t total = 0;
  std::vector<std::uint8_t> w;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t remaining) {
    if (pred(w)) ++total;
    if (remaining == 0) return;
    for (std::uint32_t letter = 0; letter < sigma; ++letter) {
      w.push_back(static_cast<std::uint8_t>(letter));
      walk(remaining - 1);
      w.pop_back();
    }
  };
  walk(n);
  return total;
}

}  // namespace

TEST_CASE("universe counts") {
  WordSetPrefix binary(2, 10);
  CHECK(binary.universe_count(0) == 1);
  CHECK(binary.universe_count(4) == 31);   // (2^5 - 1)/(2 - 1)
  CHECK(binary.universe_count(10) == 2047);

  WordSetPrefix unary(1, 10);
  CHECK(unary.universe_count(10) == 11);   // n + 1 for the unary alphabet

  WordSetPrefix ternary(3, 6);
  CHECK(ternary.universe_count(2) == 13);  // 1 + 3 + 9
}

TEST_CASE("word_prefix_density on stock word sets") {
  WordSetPrefix everything = WordSetPrefix::from_predicate(
      2, 8, [](std::span<const std::uint8_t>) { return true; });
  for (std::uint32_t n = 0; n <= 8; ++n)
    CHECK(word_prefix_density(everything, n) == Rational(1));

  WordSetPrefix even_length = WordSetPrefix::from_predicate(
      2, 8, [](std::span<const std::uint8_t> w) { return w.size() % 2 == 0; });
  CHECK(word_prefix_density(even_length, 4) == ratio(21, 31));

  CHECK_THROWS_AS(word_prefix_density(even_length, 9), std::out_of_range);
}

TEST_CASE("spread_encode unwinds the definition") {
  Membership empty_set = [](std::uint64_t) { return false; };
  WordSetPrefix none = spread_encode(empty_set, 6);
  for (std::uint32_t n = 0; n <= 6; ++n)
    CHECK(none.count_through(n) == 0);

  Membership just_one = [](std::uint64_t n) { return n == 1; };
  WordSetPrefix t = spread_encode(just_one, 3);
  CHECK(t.count_through(3) == 3);
  CHECK(t.contains(word({0, 1})));
  CHECK(t.contains(word({0, 1, 0})));
  CHECK(t.contains(word({0, 1, 1})));
  CHECK_FALSE(t.contains(word({1})));
  CHECK_FALSE(t.contains(word({0, 0, 1})));
}

TEST_CASE("spread_encode of {0}: words starting with 1, density toward 1/2") {
  Membership zero_only = [](std::uint64_t n) { return n == 0; };
  std::uint32_t max_len = 14;
  WordSetPrefix t = spread_encode(zero_only, max_len);
  std::uint64_t oracle = enumerate_count(
      2, max_len, [](const std::vector<std::uint8_t>& w) {
        return !w.empty() && w[0] == 1;
      });
  CHECK(t.count_through(max_len) == oracle);

  Rational rho = word_prefix_density(t, max_len);
  CHECK(rho > ratio(49, 100));
  CHECK(rho < ratio(1, 2));
}

TEST_CASE("spread_encode slice density approaches 2^-(n0+1)") {
  // T restricted to one n0 has the density the unary bit gets spread to.
  for (std::uint32_t n0 : {0u, 1u, 2u}) {
    Membership single = [n0](std::uint64_t n) { return n == n0; };
    WordSetPrefix t = spread_encode(single, 16);
    Rational rho = word_prefix_density(t, 16);
    Rational limit = ratio(1, std::uint64_t{1} << (n0 + 1));
    Rational gap = limit - rho;
    CHECK(gap >= 0);
    CHECK(gap < ratio(1, 1000));
  }
}

TEST_CASE("from_predicate matches the enumeration oracle on a random-ish predicate") {
  auto pred = [](std::span<const std::uint8_t> w) {
    std::uint64_t weight = 0;
    for (std::uint8_t letter : w) weight += letter;
    return weight % 3 == 1;
  };
  WordSetPrefix s = WordSetPrefix::from_predicate(3, 7, pred);
  std::uint64_t oracle = enumerate_count(
      3, 7, [&pred](const std::vector<std::uint8_t>& w) { return pred(w); });
  CHECK(s.count_through(7) == oracle);
}
