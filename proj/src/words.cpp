#include "genlab/words.hpp"

#include <stdexcept>

namespace genlab {

WordSetPrefix::WordSetPrefix(std::uint32_t alphabet_size, std::uint32_t bound)
    : sigma_(alphabet_size), bound_(bound) {
  if (sigma_ < 1) throw std::invalid_argument("alphabet must be nonempty");
  level_offset_.resize(bound_ + 2);
  std::uint64_t offset = 0, level = 1;
  for (std::uint32_t len = 0; len <= bound_; ++len) {
    level_offset_[len] = offset;
    if (offset > (std::uint64_t{1} << 32))
      throw std::invalid_argument("word prefix too large to materialize");
    offset += level;
    level *= sigma_;
  }
  level_offset_[bound_ + 1] = offset;
  bits_ = DynBitset(offset);
}

WordSetPrefix WordSetPrefix::from_predicate(
    std::uint32_t alphabet_size, std::uint32_t bound,
    const std::function<bool(std::span<const std::uint8_t>)>& pred) {
  WordSetPrefix s(alphabet_size, bound);
  std::vector<std::uint8_t> word;
  // Iterate all words of each length in lexicographic order.
  for (std::uint32_t len = 0; len <= bound; ++len) {
    word.assign(len, 0);
    while (true) {
      if (pred(word)) s.insert(word);
      std::uint32_t i = len;
      while (i > 0 && word[i - 1] == alphabet_size - 1) word[--i] = 0;
      if (i == 0) break;
      ++word[i - 1];
    }
  }
  return s;
}

std::uint64_t WordSetPrefix::rank(std::span<const std::uint8_t> word) const {
  if (word.size() > bound_)
    throw std::out_of_range("word longer than prefix bound");
  std::uint64_t value = 0;
  for (std::uint8_t letter : word) {
    if (letter >= sigma_) throw std::invalid_argument("letter outside alphabet");
    value = value * sigma_ + letter;
  }
  return level_offset_[word.size()] + value;
}

bool WordSetPrefix::contains(std::span<const std::uint8_t> word) const {
  return bits_.test(rank(word));
}

void WordSetPrefix::insert(std::span<const std::uint8_t> word) {
  bits_.set(rank(word));
}

std::uint64_t WordSetPrefix::universe_count(std::uint32_t n) const {
  if (n > bound_) throw std::out_of_range("count beyond word prefix bound");
  return level_offset_[n + 1];
}

std::uint64_t WordSetPrefix::count_through(std::uint32_t n) const {
  if (n > bound_) throw std::out_of_range("count beyond word prefix bound");
  return kernels::popcount_range(bits_, 0, level_offset_[n + 1]);
}

Rational word_prefix_density(const WordSetPrefix& s, std::uint32_t n) {
  return ratio(s.count_through(n), s.universe_count(n));
}

}  // namespace genlab
