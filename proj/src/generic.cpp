#include "genlab/generic.hpp"

#include <algorithm>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "genlab/density.hpp"

namespace genlab {

SetStream stream_of(std::vector<std::uint64_t> elements) {
  auto state = std::make_shared<std::pair<std::vector<std::uint64_t>, std::size_t>>(
      std::move(elements), 0);
  return [state]() -> std::optional<std::uint64_t> {
    if (state->second >= state->first.size()) return std::nullopt;
    return state->first[state->second++];
  };
}

SetStream stream_of_prefix(const NatSetPrefix& set) {
  std::vector<std::uint64_t> elems;
  for (std::uint64_t m = 0; m < set.bound(); ++m)
    if (set.contains(m)) elems.push_back(m);
  return stream_of(std::move(elems));
}

PairDecider::PairDecider(SetStream c0, SetStream c1)
    : c0_(std::move(c0)), c1_(std::move(c1)) {}

bool PairDecider::pull_one() {
  for (int attempt = 0; attempt < 2; ++attempt) {
    bool side1 = turn1_;
    turn1_ = !turn1_;
    if (side1 ? done1_ : done0_) continue;
    std::optional<std::uint64_t> got = side1 ? c1_() : c0_();
    if (!got) {
      (side1 ? done1_ : done0_) = true;
      continue;
    }
    auto& mine = side1 ? seen1_ : seen0_;
    auto& other = side1 ? seen0_ : seen1_;
    if (other.count(*got))
      throw std::domain_error("pair streams intersect; caller precondition violated");
    mine.insert(*got);
    return true;
  }
  return false;
}

std::optional<int> PairDecider::query(std::uint64_t x, std::uint64_t budget) {
  for (std::uint64_t used = 0;; ++used) {
    if (seen0_.count(x)) return 0;
    if (seen1_.count(x)) return 1;
    if (used >= budget || !pull_one()) return std::nullopt;
  }
}

ApproximabilityReport densely_approximable_report(SetStream c0, SetStream c1,
                                                  std::uint64_t budget,
                                                  std::uint64_t n) {
  NatSetPrefix unioned(n + 1);
  std::unordered_set<std::uint64_t> seen0, seen1;
  bool consistent = true;
  for (std::uint64_t pulls = 0; pulls < budget; ++pulls) {
    std::optional<std::uint64_t> got = c0();
    if (!got) break;
    seen0.insert(*got);
    if (*got <= n) unioned.insert(*got);
  }
  for (std::uint64_t pulls = 0; pulls < budget; ++pulls) {
    std::optional<std::uint64_t> got = c1();
    if (!got) break;
    if (seen0.count(*got)) consistent = false;
    seen1.insert(*got);
    if (*got <= n) unioned.insert(*got);
  }
  return {consistent, prefix_density(unioned, n)};
}

LimitApprox limit_constant(std::vector<std::uint64_t> set) {
  auto held = std::make_shared<std::vector<std::uint64_t>>(std::move(set));
  return {[held](std::uint64_t, std::uint64_t k) {
    return std::find(held->begin(), held->end(), k) != held->end();
  }};
}

LimitApprox limit_switching(std::vector<std::uint64_t> before,
                            std::vector<std::uint64_t> after,
                            std::uint64_t switch_stage) {
  auto b = std::make_shared<std::vector<std::uint64_t>>(std::move(before));
  auto a = std::make_shared<std::vector<std::uint64_t>>(std::move(after));
  return {[b, a, switch_stage](std::uint64_t stage, std::uint64_t k) {
    const auto& set = stage < switch_stage ? *b : *a;
    return std::find(set.begin(), set.end(), k) != set.end();
  }};
}

int coarse_from_limit(const LimitApprox& l, std::uint64_t n) {
  if (n == 0) return 0;
  return l.contains(n, r_index(n)) ? 1 : 0;
}

NatSetPrefix coarse_set_prefix(const LimitApprox& l, std::uint64_t bound) {
  NatSetPrefix c(bound);
  for (std::uint64_t n = 1; n < bound; ++n)
    if (coarse_from_limit(l, n)) c.insert(n);
  return c;
}

namespace {

int threshold_verdict(std::uint64_t members, std::uint32_t n, std::uint64_t s) {
  // members/(s+1) >= 2^{-(n+2)}, compared in exact integers.
  return (BigInt(members) << (n + 2)) >= BigInt(s) + 1 ? 1 : 0;
}

}  // namespace

int decode_from_coarse(const NatSetPrefix& c, std::uint32_t n, std::uint64_t s) {
  if (s >= c.bound())
    throw std::out_of_range("decode_from_coarse beyond known prefix");
  std::uint64_t start = f_enum(n, 0);
  std::uint64_t stride = std::uint64_t{1} << (n + 1);
  std::uint64_t members =
      start > s ? 0 : kernels::stride_count(c.bits(), start, stride, s);
  return threshold_verdict(members, n, s);
}

int decode_from_coarse(const Membership& c, std::uint32_t n, std::uint64_t s) {
  std::uint64_t members = 0;
  std::uint64_t stride = std::uint64_t{1} << (n + 1);
  for (std::uint64_t m = f_enum(n, 0); m <= s; m += stride)
    members += c(m) ? 1 : 0;
  return threshold_verdict(members, n, s);
}

void SimilarityReport::write_csv(std::ostream& os) const {
  os << "n,symdiff_num,symdiff_den\n";
  for (const auto& [n, rho] : samples)
    os << n << ',' << numerator(rho).str() << ',' << denominator(rho).str()
       << '\n';
}

SimilarityReport generic_similarity_verdict(
    const NatSetPrefix& a, const NatSetPrefix& b,
    std::span<const std::uint64_t> points) {
  SimilarityReport report;
  report.nonincreasing = true;
  for (std::uint64_t n : points) {
    Rational rho = symdiff_density(a, b, n);
    if (!report.samples.empty() && rho > report.samples.back().second)
      report.nonincreasing = false;
    report.samples.emplace_back(n, rho);
  }
  return report;
}

}  // namespace genlab
