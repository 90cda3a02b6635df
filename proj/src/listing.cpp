#include "genlab/listing.hpp"

#include <bit>
#include <memory>
#include <stdexcept>

namespace genlab {

namespace {

inline int coded_bit(std::uint64_t mask, std::uint64_t m) {
  unsigned k = static_cast<unsigned>(std::countr_zero(m));
  return k < 64 ? static_cast<int>((mask >> k) & 1u) : 0;
}

}  // namespace

ListingStream full_coded_listing(std::uint64_t mask) {
  auto next_m = std::make_shared<std::uint64_t>(1);
  return [mask, next_m]() -> std::optional<ListingPair> {
    if (*next_m >= (std::uint64_t{1} << 63)) return std::nullopt;
    std::uint64_t m = (*next_m)++;
    return ListingPair{m, coded_bit(mask, m)};
  };
}

namespace {

struct DiagonalCursor {
  std::uint64_t diag = 0;  // slice + position == diag
  std::uint64_t slice = 0;
};

ListingStream diagonal_listing_impl(std::uint64_t mask,
                                    std::optional<std::uint32_t> deleted) {
  auto cur = std::make_shared<DiagonalCursor>();
  return [mask, deleted, cur]() -> std::optional<ListingPair> {
    while (true) {
      if (cur->slice > cur->diag) {
        ++cur->diag;
        cur->slice = 0;
      }
      if (cur->diag >= (std::uint64_t{1} << 20)) return std::nullopt;
      std::uint64_t k = cur->slice;
      std::uint64_t x = cur->diag - cur->slice;
      ++cur->slice;
      if (deleted && k == *deleted) continue;
      if (k > 63) continue;
      std::uint64_t max_multiplier = ~std::uint64_t{0} >> k;
      if (x > (max_multiplier - 1) / 2) continue;  // beyond 64-bit range
      std::uint64_t m = (std::uint64_t{1} << k) * (2 * x + 1);
      return ListingPair{m, coded_bit(mask, m)};
    }
  };
}

}  // namespace

ListingStream diagonal_coded_listing(std::uint64_t mask) {
  return diagonal_listing_impl(mask, std::nullopt);
}

ListingStream diagonal_coded_listing_without_slice(std::uint64_t mask,
                                                   std::uint32_t deleted_slice) {
  return diagonal_listing_impl(mask, deleted_slice);
}

ListingStream vector_listing(std::vector<ListingPair> pairs) {
  auto state = std::make_shared<std::pair<std::vector<ListingPair>, std::size_t>>(
      std::move(pairs), 0);
  return [state]() -> std::optional<ListingPair> {
    if (state->second >= state->first.size()) return std::nullopt;
    return state->first[state->second++];
  };
}

std::optional<ListingPair> ListingReader::pull() {
  if (exhausted_) return std::nullopt;
  std::optional<ListingPair> pair = stream_();
  if (!pair) {
    exhausted_ = true;
    return std::nullopt;
  }
  ++consumed_;
  auto [it, inserted] = seen_.emplace(pair->n, pair->bit);
  if (!inserted && it->second != pair->bit)
    throw std::invalid_argument("listing is not single-valued");
  if (pair->n != 0) {
    unsigned k = static_cast<unsigned>(std::countr_zero(pair->n));
    slice_seen_.emplace(static_cast<std::uint32_t>(k), pair->bit);
  }
  return pair;
}

std::optional<int> ListingReader::find_bit(std::uint64_t n,
                                           std::uint64_t budget) {
  if (auto it = seen_.find(n); it != seen_.end()) return it->second;
  for (std::uint64_t used = 0; used < budget; ++used) {
    std::optional<ListingPair> pair = pull();
    if (!pair) return std::nullopt;
    if (pair->n == n) return pair->bit;
  }
  return std::nullopt;
}

std::optional<int> ListingReader::find_bit_in_slice(std::uint32_t slice,
                                                    std::uint64_t budget) {
  if (auto it = slice_seen_.find(slice); it != slice_seen_.end())
    return it->second;
  for (std::uint64_t used = 0; used < budget; ++used) {
    std::optional<ListingPair> pair = pull();
    if (!pair) return std::nullopt;
    if (pair->n != 0 &&
        static_cast<std::uint32_t>(std::countr_zero(pair->n)) == slice)
      return pair->bit;
  }
  return std::nullopt;
}

}  // namespace genlab
