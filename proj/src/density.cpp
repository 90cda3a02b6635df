#include "genlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace genlab {

std::string float_cell(const Rational& r) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
  return buf;
}

void DensityProfile::write_csv(std::ostream& os) const {
  os << "n,rho_num,rho_den,rho_float\n";
  for (const auto& [n, rho] : samples) {
    os << n << ',' << numerator(rho).str() << ',' << denominator(rho).str()
       << ',' << float_cell(rho) << '\n';
  }
}

Rational prefix_density(const NatSetPrefix& a, std::uint64_t n) {
  if (n >= a.bound())
    throw std::out_of_range("density requested beyond known prefix");
  return ratio(a.count_through(n), n + 1);
}

DensityProfile density_profile(const NatSetPrefix& a,
                               std::span<const std::uint64_t> points,
                               double tail_fraction) {
  if (points.empty())
    throw std::invalid_argument("density_profile: empty sample list");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] <= points[i - 1])
      throw std::invalid_argument("density_profile: points must be strictly increasing");

  DensityProfile profile;
  profile.samples.reserve(points.size());
  for (std::uint64_t n : points)
    profile.samples.emplace_back(n, prefix_density(a, n));

  std::size_t window = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(points.size())));
  window = std::clamp<std::size_t>(window, 1, points.size());
  std::size_t first = points.size() - window;
  profile.upper_estimate = profile.samples[first].second;
  profile.lower_estimate = profile.samples[first].second;
  for (std::size_t i = first + 1; i < profile.samples.size(); ++i) {
    const Rational& rho = profile.samples[i].second;
    profile.upper_estimate = std::max(profile.upper_estimate, rho);
    profile.lower_estimate = std::min(profile.lower_estimate, rho);
  }
  return profile;
}

Rational relative_density(const NatSetPrefix& a, const NatSetPrefix& b,
                          std::uint64_t n) {
  if (n >= a.bound() || n >= b.bound())
    throw std::out_of_range("relative density beyond known prefix");
  if (kernels::andnot_count_range(a.bits(), b.bits(), 0, n + 1) != 0)
    throw std::invalid_argument("relative_density: A not contained in B on prefix");
  std::uint64_t denom = b.count_through(n);
  if (denom == 0)
    throw std::domain_error("relative_density: B empty on prefix");
  return ratio(a.count_through(n), denom);
}

Rational symdiff_density(const NatSetPrefix& a, const NatSetPrefix& b,
                         std::uint64_t n) {
  if (n >= a.bound() || n >= b.bound())
    throw std::out_of_range("symmetric difference beyond known prefix");
  return ratio(kernels::xor_count_range(a.bits(), b.bits(), 0, n + 1), n + 1);
}

std::pair<Rational, Rational> rca_check(std::span<const NatSetPrefix> parts,
                                        std::uint64_t n) {
  if (parts.empty()) return {Rational(0), Rational(0)};
  DynBitset unioned(n + 1);
  Rational sum(0);
  for (const NatSetPrefix& part : parts) {
    if (n >= part.bound())
      throw std::out_of_range("rca_check: part prefix too short");
    if (kernels::and_count_range(unioned, part.bits(), 0, n + 1) != 0)
      throw std::invalid_argument("rca_check: parts overlap on prefix");
    for (std::uint64_t w = 0; w < unioned.word_count(); ++w)
      unioned.words()[w] |= part.bits().words()[w];
    sum += prefix_density(part, n);
  }
  Rational lhs = ratio(kernels::popcount_range(unioned, 0, n + 1), n + 1);
  return {lhs, sum};
}

GenericityFit strong_genericity_fit(const DensityProfile& profile) {
  std::vector<std::pair<std::uint64_t, Rational>> usable;
  for (const auto& [n, rho] : profile.samples)
    if (rho != Rational(1)) usable.emplace_back(n, Rational(1) - rho);

  if (usable.empty())
    return {GenericityFit::Kind::Degenerate, Rational(1), ratio(1, 2)};
  if (usable.size() < 2)
    return {GenericityFit::Kind::NoFit, Rational(0), Rational(0)};

  // Least squares of y = ln(1 - rho_n) against n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, gap] : usable) {
    double x = static_cast<double>(n);
    double y = std::log(to_double(gap));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  double count = static_cast<double>(usable.size());
  double det = count * sxx - sx * sx;
  if (det == 0.0) return {GenericityFit::Kind::NoFit, Rational(0), Rational(0)};
  double slope = (count * sxy - sx * sy) / det;
  double intercept = (sy - slope * sx) / count;
  if (slope >= 0.0) return {GenericityFit::Kind::NoFit, Rational(0), Rational(0)};

  for (const auto& [n, gap] : usable) {
    double above = std::log(to_double(gap)) -
                   (intercept + slope * static_cast<double>(n));
    if (above > std::log(4.0))
      return {GenericityFit::Kind::NoFit, Rational(0), Rational(0)};
  }

  // sigma as a dyadic rational, then the exact least dominating C.
  double sigma_d = std::exp(slope);
  std::uint64_t scaled = static_cast<std::uint64_t>(
      std::ceil(sigma_d * static_cast<double>(1u << 20)));
  scaled = std::clamp<std::uint64_t>(scaled, 1, (1u << 20) - 1);
  Rational sigma = ratio(scaled, 1u << 20);

  Rational c(0);
  for (const auto& [n, gap] : usable) {
    Rational pow(1);
    Rational base = sigma;
    std::uint64_t exp = n;
    while (exp > 0) {  // fast exponentiation, exact
      if (exp & 1) pow *= base;
      base *= base;
      exp >>= 1;
    }
    c = std::max(c, Rational(gap / pow));
  }
  return {GenericityFit::Kind::Fit, c, sigma};
}

}  // namespace genlab
