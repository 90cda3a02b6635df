#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "genlab/listing.hpp"
#include "genlab/machines.hpp"
#include "genlab/natset.hpp"
#include "genlab/partition.hpp"
#include "genlab/rational.hpp"

namespace genlab {
namespace eop {

// Cantor pairing (a+b)(a+b+1)/2 + b, the one pairing used project-wide for
// graph codes. Throws std::overflow_error when the code exceeds 64 bits.
std::uint64_t pair_encode(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t code);

// Canonical index of a finite set: sum of 2^k over members. Arbitrary
// precision, since graph codes routinely exceed word width.
BigInt canonical_index(std::span<const std::uint64_t> elements);
std::vector<std::uint64_t> decode_canonical(const BigInt& index);

// One axiom <n, D>: n enters W(X) once D ⊆ X.
struct Axiom {
  std::uint64_t n;
  BigInt d_index;  // canonical index of D

  auto operator<=>(const Axiom&) const = default;
};

// Finite enumeration operator: a set of axioms, kept sorted and unique.
class EnumOperator {
 public:
  EnumOperator() = default;
  explicit EnumOperator(std::vector<Axiom> axioms);

  void add(std::uint64_t n, BigInt d_index);
  void add_set(std::uint64_t n, std::span<const std::uint64_t> premise);
  const std::vector<Axiom>& axioms() const { return axioms_; }
  std::size_t size() const { return axioms_.size(); }

  // One axiom per line, `n:index_of_D` in decimal. Indices wider than
  // max_index_bits are rejected rather than silently truncated.
  static EnumOperator read(std::istream& in,
                           std::uint64_t max_index_bits = 1u << 16);
  void write(std::ostream& os) const;

  bool operator==(const EnumOperator&) const = default;

 private:
  void normalize();
  std::vector<Axiom> axioms_;
};

// W(X) = {n : exists <n, D> in W with D ⊆ X}, as a sorted vector. X is an
// arbitrary membership source; premise sets are decoded from their
// canonical indices.
std::vector<std::uint64_t> apply(const EnumOperator& w, const Membership& x);

// Members of W(X) among [0, bound).
NatSetPrefix apply_prefix(const EnumOperator& w, const Membership& x,
                          std::uint64_t bound);

// Operator U with U(X) = V(W(X)) on all probes: every way of producing a
// V-premise from W-axioms contributes the union of the W-premises used.
// The flag reports truncation once `bound` result axioms have been emitted.
struct ComposeResult {
  EnumOperator op;
  bool truncated = false;
};
ComposeResult compose(const EnumOperator& v, const EnumOperator& w,
                      std::uint64_t bound);

// Graph code of a finite partial function: { <a,b> }. Throws
// std::invalid_argument when two pairs share an argument with different
// values.
std::vector<std::uint64_t> graph_code(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs);
std::vector<std::pair<std::uint64_t, std::uint64_t>> graph_decode(
    std::span<const std::uint64_t> codes);

// A ⊕ B = {2n : n in A} ∪ {2n+1 : n in B} on [0, bound).
NatSetPrefix join(const Membership& a, const Membership& b,
                  std::uint64_t bound);

// B = union over n of f_n(A_n), satisfying B(f_enum(n, x)) = A_n(x); one
// set bounding every A_n.
NatSetPrefix upper_bound_encode(std::span<const Membership> sets,
                                std::uint64_t bound);

// The reduction witness behind the upper bound: axioms
// (<x, b>, {<f_enum(n, x), b>}) for x < bound, b in {0,1}. Applied to a
// generic listing of the joined set it lists a generic description of A_n.
EnumOperator slice_reduction_operator(std::uint32_t n, std::uint64_t bound);

// Apply an operator to a listing-coded graph: stream the listing's pair
// codes in and emit each operator output once, in first-fire order.
std::vector<std::uint64_t> apply_to_listing(const EnumOperator& w,
                                            ListingStream listing,
                                            std::uint64_t budget);

// Pipeline witnessing A <=_T B implies R(A) <=_g R(B): read a generic
// listing of R(B), decode B through the slice structure, run the supplied
// oracle program to decide A, and emit the listing of R(A) on [1, bound).
// Throws std::runtime_error if the listing budget runs out before some
// needed B(k) is decodable, and std::invalid_argument if the oracle program
// fails to converge within program_fuel.
std::vector<ListingPair> r_embedding_forward(const Program& a_from_b,
                                             ListingStream listing_of_rb,
                                             std::uint64_t bound,
                                             std::uint64_t listing_budget,
                                             std::uint64_t program_fuel);

}  // namespace eop
}  // namespace genlab
