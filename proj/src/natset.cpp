#include "genlab/natset.hpp"

#include <bit>
#include <stdexcept>

namespace genlab {

NatSetPrefix NatSetPrefix::from_predicate(
    std::uint64_t bound, const std::function<bool(std::uint64_t)>& pred) {
  NatSetPrefix s(bound);
  for (std::uint64_t m = 0; m < bound; ++m)
    if (pred(m)) s.bits_.set(m);
  return s;
}

NatSetPrefix NatSetPrefix::from_elements(
    std::uint64_t bound, std::initializer_list<std::uint64_t> elems) {
  NatSetPrefix s(bound);
  for (std::uint64_t m : elems) s.insert(m);
  return s;
}

bool NatSetPrefix::contains(std::uint64_t m) const {
  if (m >= bound())
    throw std::out_of_range("membership query beyond prefix bound");
  return bits_.test(m);
}

void NatSetPrefix::insert(std::uint64_t m) {
  if (m >= bound())
    throw std::out_of_range("insert beyond prefix bound");
  bits_.set(m);
}

void NatSetPrefix::erase(std::uint64_t m) {
  if (m >= bound())
    throw std::out_of_range("erase beyond prefix bound");
  bits_.reset(m);
}

std::uint64_t NatSetPrefix::count_through(std::uint64_t n) const {
  if (n >= bound())
    throw std::out_of_range("prefix count beyond bound");
  return kernels::popcount_range(bits_, 0, n + 1);
}

std::uint64_t NatSetPrefix::size() const {
  return kernels::popcount_range(bits_, 0, bits_.size());
}

namespace sets {

NatSetPrefix empty(std::uint64_t bound) { return NatSetPrefix(bound); }

NatSetPrefix all(std::uint64_t bound) {
  return NatSetPrefix::from_predicate(bound, [](std::uint64_t) { return true; });
}

NatSetPrefix evens(std::uint64_t bound) {
  return NatSetPrefix::from_predicate(bound,
                                      [](std::uint64_t m) { return m % 2 == 0; });
}

NatSetPrefix odds(std::uint64_t bound) {
  return NatSetPrefix::from_predicate(bound,
                                      [](std::uint64_t m) { return m % 2 == 1; });
}

NatSetPrefix multiples(std::uint64_t k, std::uint64_t bound) {
  if (k == 0) throw std::invalid_argument("multiples of 0");
  return NatSetPrefix::from_predicate(
      bound, [k](std::uint64_t m) { return m % k == 0; });
}

NatSetPrefix log2_even(std::uint64_t bound) {
  return NatSetPrefix::from_predicate(bound, [](std::uint64_t m) {
    if (m == 0) return false;
    return (std::bit_width(m) - 1) % 2 == 0;
  });
}

}  // namespace sets

}  // namespace genlab
