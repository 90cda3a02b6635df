#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <unordered_set>
#include <vector>

#include "genlab/natset.hpp"
#include "genlab/partition.hpp"
#include "genlab/rational.hpp"

namespace genlab {

// Monotone enumeration of a set; nullopt ends a finite stream.
using SetStream = std::function<std::optional<std::uint64_t>()>;

SetStream stream_of(std::vector<std::uint64_t> elements);
SetStream stream_of_prefix(const NatSetPrefix& set);

// Partial decision procedure built from two c.e. streams, C0 enumerating
// (a subset of) the complement and C1 a subset of the target set.  Answers
// are found by interleaving the two enumerations; when the caller's
// containment obligations hold, no answer is ever wrong.
class PairDecider {
 public:
  PairDecider(SetStream c0, SetStream c1);

  // 0 if x shows up in C0, 1 if in C1, nullopt when `budget` additional
  // pulls run out first. Throws std::domain_error if the streams turn out
  // to intersect.
  std::optional<int> query(std::uint64_t x, std::uint64_t budget);

  const std::unordered_set<std::uint64_t>& seen0() const { return seen0_; }
  const std::unordered_set<std::uint64_t>& seen1() const { return seen1_; }

 private:
  bool pull_one();

  SetStream c0_, c1_;
  std::unordered_set<std::uint64_t> seen0_, seen1_;
  bool turn1_ = false;
  bool done0_ = false, done1_ = false;
};

struct ApproximabilityReport {
  bool consistent;         // enumerated prefixes are disjoint
  Rational union_density;  // rho_n of the enumerated union
};

// Pull up to `budget` elements from each stream, then report disjointness
// of the enumerated prefixes and the density of their union at n.
ApproximabilityReport densely_approximable_report(SetStream c0, SetStream c1,
                                                  std::uint64_t budget,
                                                  std::uint64_t n);

// Uniformly computable sequence of finite sets s -> A_s (Limit Lemma
// approximations); `contains(s, k)` decides k in A_s.
struct LimitApprox {
  std::function<bool(std::uint64_t stage, std::uint64_t k)> contains;
};

LimitApprox limit_constant(std::vector<std::uint64_t> set);
// A_s = `before` for s < switch_stage, `after` from switch_stage on.
LimitApprox limit_switching(std::vector<std::uint64_t> before,
                            std::vector<std::uint64_t> after,
                            std::uint64_t switch_stage);

// The total set C generically similar to R(lim A_s): C(n) = 1 iff
// r_index(n) lies in the approximating set indexed by the queried number
// itself, A_n. C(0) = 0 by convention.
int coarse_from_limit(const LimitApprox& l, std::uint64_t n);

// Materialized prefix of the set above.
NatSetPrefix coarse_set_prefix(const LimitApprox& l, std::uint64_t bound);

// Threshold decoder: 1 iff rho_s(C ∩ R_n) >= (1/2) * 2^{-(n+1)}. Stabilizes
// to A(n) as s grows whenever C is generically similar to R(A).
int decode_from_coarse(const NatSetPrefix& c, std::uint32_t n, std::uint64_t s);
int decode_from_coarse(const Membership& c, std::uint32_t n, std::uint64_t s);

// Symmetric-difference densities at the sample points plus a trend flag;
// evidence only, never a limit claim.
struct SimilarityReport {
  std::vector<std::pair<std::uint64_t, Rational>> samples;
  bool nonincreasing;

  // CSV with header n,symdiff_num,symdiff_den.
  void write_csv(std::ostream& os) const;
};

SimilarityReport generic_similarity_verdict(const NatSetPrefix& a,
                                            const NatSetPrefix& b,
                                            std::span<const std::uint64_t> points);

}  // namespace genlab
