#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace genlab {

// One entry of a generic listing: the coded graph pair (argument, bit).
struct ListingPair {
  std::uint64_t n;
  int bit;
};

// Monotone single-consumer stream; nullopt means the listing is exhausted
// (finite listings only — genuine generic listings never end).
using ListingStream = std::function<std::optional<ListingPair>()>;

// Full listing of the characteristic function of R(mask) on [1, 2^63),
// enumerated by increasing argument.
ListingStream full_coded_listing(std::uint64_t mask);

// Same graph, enumerated along the diagonal of (slice, position) so every
// slice R_k is reached after O(k^2) pairs instead of 2^k.
ListingStream diagonal_coded_listing(std::uint64_t mask);

// Diagonal listing that never emits pairs for arguments in the deleted
// slice; the domain still has density 1 when one slice is removed.
ListingStream diagonal_coded_listing_without_slice(std::uint64_t mask,
                                                   std::uint32_t deleted_slice);

// Listing built from an explicit finite pair vector.
ListingStream vector_listing(std::vector<ListingPair> pairs);

// Caching consumer: remembers every pair seen so far so repeated queries
// share one pass over the stream. Throws std::invalid_argument if the
// stream emits two different bits for one argument.
class ListingReader {
 public:
  explicit ListingReader(ListingStream stream) : stream_(std::move(stream)) {}

  // Consume until a pair with the given argument appears; nullopt once
  // `budget` additional pairs have been consumed or the stream ended.
  std::optional<int> find_bit(std::uint64_t n, std::uint64_t budget);

  // Consume until any pair (m, b) with r_index(m) == slice appears and
  // return its bit; arguments equal to 0 are skipped.
  std::optional<int> find_bit_in_slice(std::uint32_t slice,
                                       std::uint64_t budget);

  std::uint64_t consumed() const { return consumed_; }

 private:
  std::optional<ListingPair> pull();

  ListingStream stream_;
  std::unordered_map<std::uint64_t, int> seen_;
  std::unordered_map<std::uint32_t, int> slice_seen_;
  std::uint64_t consumed_ = 0;
  bool exhausted_ = false;
};

}  // namespace genlab
