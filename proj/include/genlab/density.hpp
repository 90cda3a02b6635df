#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "genlab/natset.hpp"
#include "genlab/rational.hpp"

namespace genlab {

// Sampled prefix densities of one set. upper/lower estimates are taken over
// a tail window of the samples; true limsup/liminf are not computable from a
// prefix, hence "estimate".
struct DensityProfile {
  std::vector<std::pair<std::uint64_t, Rational>> samples;
  Rational upper_estimate;
  Rational lower_estimate;

  // CSV with header n,rho_num,rho_den,rho_float.
  void write_csv(std::ostream& os) const;
};

// |A ∩ [0, n]| / (n + 1) exactly; requires n < A.bound().
Rational prefix_density(const NatSetPrefix& a, std::uint64_t n);

// Samples must be strictly increasing and below A.bound(). tail_fraction
// selects the window for the upper/lower estimates (default: last half).
DensityProfile density_profile(const NatSetPrefix& a,
                               std::span<const std::uint64_t> points,
                               double tail_fraction = 0.5);

// |A ∩ [0,n]| / |B ∩ [0,n]| for A ⊆ B on [0,n]; throws domain_error when B
// is empty on the prefix and invalid_argument when A is not contained in B.
Rational relative_density(const NatSetPrefix& a, const NatSetPrefix& b,
                          std::uint64_t n);

// rho_n(A △ B).
Rational symdiff_density(const NatSetPrefix& a, const NatSetPrefix& b,
                         std::uint64_t n);

// Finite additivity witness: (rho_n of the union, sum of the parts' rho_n).
// Parts must be pairwise disjoint on [0, n]; the two values are equal at
// every finite prefix and the pair is reported so callers can log both.
std::pair<Rational, Rational> rca_check(std::span<const NatSetPrefix> parts,
                                        std::uint64_t n);

// Exponential-convergence evidence for rho_n -> 1. Decision rule, fixed so
// tests are deterministic:
//   * samples with rho_n = 1 are skipped; if none remain the result is
//     Degenerate with (C, sigma) = (1, 1/2);
//   * least squares on (n, ln(1 - rho_n)); slope >= 0 or fewer than two
//     usable samples -> NoFit;
//   * any sample further than ln(4) above the fitted line -> NoFit (the
//     tail decays sub-exponentially against the fit);
//   * otherwise sigma = e^slope rounded to a dyadic rational and C is the
//     least rational making 1 - rho_n <= C * sigma^n hold on every sample,
//     so the returned pair dominates all samples exactly.
struct GenericityFit {
  enum class Kind { Fit, NoFit, Degenerate } kind;
  Rational c;
  Rational sigma;
};

GenericityFit strong_genericity_fit(const DensityProfile& profile);

}  // namespace genlab
