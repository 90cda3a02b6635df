#include "genlab/eop.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace genlab {
namespace eop {

std::uint64_t pair_encode(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  unsigned __int128 code = s * (s + 1) / 2 + b;
  if (code > ~std::uint64_t{0})
    throw std::overflow_error("pair code exceeds 64 bits");
  return static_cast<std::uint64_t>(code);
}

std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t code) {
  // Largest s with s(s+1)/2 <= code, located via the float guess +-1.
  std::uint64_t s = static_cast<std::uint64_t>(
      (std::sqrt(8.0 * static_cast<double>(code) + 1.0) - 1.0) / 2.0);
  auto tri = [](unsigned __int128 v) { return v * (v + 1) / 2; };
  while (tri(s + 1) <= code) ++s;
  while (tri(s) > code) --s;
  std::uint64_t b = code - static_cast<std::uint64_t>(tri(s));
  return {s - b, b};
}

BigInt canonical_index(std::span<const std::uint64_t> elements) {
  BigInt index = 0;
  for (std::uint64_t k : elements) boost::multiprecision::bit_set(index, static_cast<unsigned>(k));
  return index;
}

std::vector<std::uint64_t> decode_canonical(const BigInt& index) {
  std::vector<std::uint64_t> out;
  if (index < 0) throw std::invalid_argument("canonical index must be nonnegative");
  if (index == 0) return out;
  unsigned top = boost::multiprecision::msb(index);
  for (unsigned k = 0; k <= top; ++k)
    if (boost::multiprecision::bit_test(index, k)) out.push_back(k);
  return out;
}

EnumOperator::EnumOperator(std::vector<Axiom> axioms) : axioms_(std::move(axioms)) {
  normalize();
}

void EnumOperator::normalize() {
  std::sort(axioms_.begin(), axioms_.end());
  axioms_.erase(std::unique(axioms_.begin(), axioms_.end()), axioms_.end());
}

void EnumOperator::add(std::uint64_t n, BigInt d_index) {
  axioms_.push_back({n, std::move(d_index)});
  normalize();
}

void EnumOperator::add_set(std::uint64_t n, std::span<const std::uint64_t> premise) {
  add(n, canonical_index(premise));
}

EnumOperator EnumOperator::read(std::istream& in, std::uint64_t max_index_bits) {
  std::vector<Axiom> axioms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    auto colon = trimmed.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("axiom line " + std::to_string(line_no) +
                                  ": expected n:index");
    Axiom axiom;
    try {
      axiom.n = std::stoull(trimmed.substr(0, colon));
      axiom.d_index = BigInt(trimmed.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("axiom line " + std::to_string(line_no) +
                                  ": malformed number");
    }
    if (axiom.d_index < 0)
      throw std::invalid_argument("axiom line " + std::to_string(line_no) +
                                  ": negative index");
    if (axiom.d_index > 0 &&
        boost::multiprecision::msb(axiom.d_index) >= max_index_bits)
      throw std::invalid_argument("axiom line " + std::to_string(line_no) +
                                  ": canonical index too wide");
    axioms.push_back(std::move(axiom));
  }
  return EnumOperator(std::move(axioms));
}

void EnumOperator::write(std::ostream& os) const {
  for (const Axiom& axiom : axioms_)
    os << axiom.n << ':' << axiom.d_index.str() << '\n';
}

namespace {

bool premise_holds(const BigInt& d_index, const Membership& x) {
  if (d_index == 0) return true;
  unsigned top = boost::multiprecision::msb(d_index);
  for (unsigned k = 0; k <= top; ++k)
    if (boost::multiprecision::bit_test(d_index, k) && !x(k)) return false;
  return true;
}

}  // namespace

std::vector<std::uint64_t> apply(const EnumOperator& w, const Membership& x) {
  std::vector<std::uint64_t> out;
  for (const Axiom& axiom : w.axioms())
    if (premise_holds(axiom.d_index, x)) out.push_back(axiom.n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NatSetPrefix apply_prefix(const EnumOperator& w, const Membership& x,
                          std::uint64_t bound) {
  NatSetPrefix result(bound);
  for (std::uint64_t n : apply(w, x))
    if (n < bound) result.insert(n);
  return result;
}

ComposeResult compose(const EnumOperator& v, const EnumOperator& w,
                      std::uint64_t bound) {
  // Group W-axioms by their output.
  std::map<std::uint64_t, std::vector<const BigInt*>> producers;
  for (const Axiom& axiom : w.axioms())
    producers[axiom.n].push_back(&axiom.d_index);

  ComposeResult result;
  std::vector<Axiom> out;
  for (const Axiom& vax : v.axioms()) {
    std::vector<std::uint64_t> needed = decode_canonical(vax.d_index);
    // Every way of producing each needed element contributes one choice.
    std::vector<const std::vector<const BigInt*>*> options;
    bool feasible = true;
    for (std::uint64_t d : needed) {
      auto it = producers.find(d);
      if (it == producers.end()) { feasible = false; break; }
      options.push_back(&it->second);
    }
    if (!feasible) continue;
    std::vector<std::size_t> choice(options.size(), 0);
    while (true) {
      BigInt premise = 0;
      for (std::size_t i = 0; i < options.size(); ++i)
        premise |= *(*options[i])[choice[i]];
      out.push_back({vax.n, std::move(premise)});
      if (out.size() >= bound) {
        result.truncated = true;
        result.op = EnumOperator(std::move(out));
        return result;
      }
      // Next combination.
      std::size_t i = 0;
      for (; i < choice.size(); ++i) {
        if (++choice[i] < options[i]->size()) break;
        choice[i] = 0;
      }
      if (i == choice.size()) break;
      if (choice.empty()) break;  // empty premise has the single combination
    }
  }
  result.op = EnumOperator(std::move(out));
  return result;
}

std::vector<std::uint64_t> graph_code(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs) {
  std::unordered_map<std::uint64_t, std::uint64_t> values;
  std::vector<std::uint64_t> codes;
  for (const auto& [a, b] : pairs) {
    auto [it, inserted] = values.emplace(a, b);
    if (!inserted && it->second != b)
      throw std::invalid_argument("graph_code: not a function");
    codes.push_back(pair_encode(a, b));
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> graph_decode(
    std::span<const std::uint64_t> codes) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  pairs.reserve(codes.size());
  for (std::uint64_t code : codes) pairs.push_back(pair_decode(code));
  return pairs;
}

NatSetPrefix join(const Membership& a, const Membership& b,
                  std::uint64_t bound) {
  NatSetPrefix out(bound);
  for (std::uint64_t m = 0; m < bound; ++m) {
    bool member = (m % 2 == 0) ? a(m / 2) : b(m / 2);
    if (member) out.insert(m);
  }
  return out;
}

NatSetPrefix upper_bound_encode(std::span<const Membership> sets,
                                std::uint64_t bound) {
  NatSetPrefix out(bound);
  for (std::size_t n = 0; n < sets.size() && n < 63; ++n) {
    for (std::uint64_t x = 0;; ++x) {
      std::uint64_t m = f_enum(static_cast<std::uint32_t>(n), x);
      if (m >= bound) break;
      if (sets[n](x)) out.insert(m);
    }
  }
  return out;
}

EnumOperator slice_reduction_operator(std::uint32_t n, std::uint64_t bound) {
  std::vector<Axiom> axioms;
  for (std::uint64_t x = 0; x < bound; ++x) {
    std::uint64_t image = f_enum(n, x);
    for (std::uint64_t b = 0; b <= 1; ++b) {
      std::uint64_t premise_elem = pair_encode(image, b);
      BigInt premise = 0;
      boost::multiprecision::bit_set(premise, static_cast<unsigned>(premise_elem));
      axioms.push_back({pair_encode(x, b), std::move(premise)});
    }
  }
  return EnumOperator(std::move(axioms));
}

std::vector<std::uint64_t> apply_to_listing(const EnumOperator& w,
                                            ListingStream listing,
                                            std::uint64_t budget) {
  std::unordered_set<std::uint64_t> have;
  std::vector<bool> fired(w.axioms().size(), false);
  std::vector<std::uint64_t> out;
  std::unordered_set<std::uint64_t> emitted;

  auto fire_ready = [&]() {
    const auto& axioms = w.axioms();
    for (std::size_t i = 0; i < axioms.size(); ++i) {
      if (fired[i]) continue;
      bool ok = premise_holds(axioms[i].d_index,
                              [&have](std::uint64_t k) { return have.count(k) != 0; });
      if (ok) {
        fired[i] = true;
        if (emitted.insert(axioms[i].n).second) out.push_back(axioms[i].n);
      }
    }
  };

  fire_ready();  // axioms with empty premises
  for (std::uint64_t pulls = 0; pulls < budget; ++pulls) {
    std::optional<ListingPair> pair = listing();
    if (!pair) break;
    have.insert(pair_encode(pair->n, static_cast<std::uint64_t>(pair->bit)));
    fire_ready();
  }
  return out;
}

std::vector<ListingPair> r_embedding_forward(const Program& a_from_b,
                                             ListingStream listing_of_rb,
                                             std::uint64_t bound,
                                             std::uint64_t listing_budget,
                                             std::uint64_t program_fuel) {
  ListingReader reader(std::move(listing_of_rb));
  std::unordered_map<std::uint32_t, bool> b_cache;
  Membership b_oracle = [&](std::uint64_t k) -> bool {
    std::uint32_t slice = static_cast<std::uint32_t>(k);
    if (auto it = b_cache.find(slice); it != b_cache.end()) return it->second;
    DecodeOutcome outcome = decode_R(reader, slice, listing_budget);
    if (outcome.budget_exceeded())
      throw std::runtime_error("listing budget exceeded while decoding B(" +
                               std::to_string(k) + ")");
    bool member = *outcome.bit == 1;
    b_cache.emplace(slice, member);
    return member;
  };

  std::unordered_map<std::uint32_t, int> a_cache;
  auto a_value = [&](std::uint32_t k) -> int {
    if (auto it = a_cache.find(k); it != a_cache.end()) return it->second;
    FuelResult run = eval_oracle(a_from_b, k, program_fuel, b_oracle);
    if (!run.converged())
      throw std::invalid_argument("oracle program failed to converge on " +
                                  std::to_string(k));
    int bit = *run.value == 0 ? 0 : 1;
    a_cache.emplace(k, bit);
    return bit;
  };

  std::vector<ListingPair> out;
  out.reserve(bound > 1 ? bound - 1 : 0);
  for (std::uint64_t m = 1; m < bound; ++m)
    out.push_back({m, a_value(r_index(m))});
  return out;
}

}  // namespace eop
}  // namespace genlab
