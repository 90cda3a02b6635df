#include "genlab/constructions.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <queue>

#include "genlab/eop.hpp"

namespace genlab {

const char* to_string(TraceEventKind kind) {
  switch (kind) {
    case TraceEventKind::Add: return "add";
    case TraceEventKind::Dump: return "dump";
    case TraceEventKind::Raise: return "raise";
    case TraceEventKind::Witness: return "witness";
    case TraceEventKind::Attention: return "attention";
  }
  return "?";
}

void trace_export(std::span<const TraceEvent> events, std::ostream& os) {
  os << "stage,slice,event,value,restraint\n";
  for (const TraceEvent& ev : events)
    os << ev.stage << ',' << ev.slice << ',' << to_string(ev.kind) << ','
       << ev.value << ',' << ev.restraint << '\n';
}

// ---------------------------------------------------------------------------
// SliceSet

void SliceSet::add_range(std::uint64_t first, std::uint64_t last) {
  if (first > last) return;
  // Find the first run that could touch [first-1, last+1] and merge.
  auto it = std::lower_bound(
      runs_.begin(), runs_.end(), first,
      [](const auto& run, std::uint64_t value) { return run.second < value; });
  if (it != runs_.begin()) {
    auto prev = std::prev(it);
    if (prev->second + 1 >= first) it = prev;
  }
  std::uint64_t lo = first, hi = last;
  auto erase_from = it;
  auto erase_to = it;
  while (erase_to != runs_.end() && erase_to->first <= hi + 1 &&
         !(hi + 1 < erase_to->first)) {
    lo = std::min(lo, erase_to->first);
    hi = std::max(hi, erase_to->second);
    ++erase_to;
  }
  if (erase_from == erase_to) {
    runs_.insert(erase_from, {lo, hi});
  } else {
    erase_from->first = lo;
    erase_from->second = hi;
    runs_.erase(std::next(erase_from), erase_to);
  }
}

bool SliceSet::contains_position(std::uint64_t j) const {
  auto it = std::upper_bound(
      runs_.begin(), runs_.end(), j,
      [](std::uint64_t value, const auto& run) { return value < run.first; });
  if (it == runs_.begin()) return false;
  --it;
  return j <= it->second;
}

std::uint64_t SliceSet::count_through(std::uint64_t j) const {
  std::uint64_t total = 0;
  for (const auto& [lo, hi] : runs_) {
    if (lo > j) break;
    total += std::min(hi, j) - lo + 1;
  }
  return total;
}

std::uint64_t SliceSet::count() const {
  std::uint64_t total = 0;
  for (const auto& [lo, hi] : runs_) total += hi - lo + 1;
  return total;
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

struct TraceSink {
  TraceMode mode;
  std::vector<TraceEvent>* out;

  void add(const TraceEvent& ev) {
    if (mode == TraceMode::Off) return;
    if (mode == TraceMode::EventsOnly && ev.kind == TraceEventKind::Add) return;
    out->push_back(ev);
  }
};

// Probe of one (machine, input) pair, resolved once; h is exact when the
// run halts within the cap, and Diverges/Unknown both mean "never within
// this construction's fuel".
struct PositionProbe {
  bool halts = false;
  std::uint64_t h = 0;
  std::uint64_t value = 0;
};

PositionProbe probe_position(const MachineUniverse& u, std::uint64_t e,
                             std::uint64_t x, std::uint64_t cap) {
  HaltProbe probe = u.probe(e, x, cap);
  if (probe.kind == HaltProbe::Kind::Halts)
    return {true, probe.steps, probe.value};
  return {false, 0, 0};
}

inline bool in_w(const PositionProbe& probe, std::uint64_t x,
                 std::uint64_t fuel) {
  return probe.halts && probe.h <= fuel && x < fuel;
}

// Monotone scanner for "R_e up to the restraint is covered": positions are
// confirmed in increasing order, each by set membership or by the machine
// oracle, and stay confirmed because both sources are monotone.
struct CoverScan {
  std::uint64_t next = 0;  // first unconfirmed position
  std::optional<PositionProbe> pending;
};

}  // namespace

// ---------------------------------------------------------------------------
// Post's simple set, density-0 variant.

SimpleResult simple_density0(const MachineUniverse& u,
                             const ConstructionConfig& config) {
  SimpleResult result;
  TraceSink sink{config.trace_mode, &result.trace};

  struct Run {
    std::uint64_t x;
    Stepper stepper;
  };

  for (std::uint64_t e = 0; e < config.machines; ++e) {
    const Program& p = u.program(e);
    std::uint64_t threshold = e * e;
    std::vector<Run> live;
    std::uint64_t spent = 0, tick = 0, next_x = 0;
    bool found = false;
    // Triangular dovetail: round r steps runs 0..r once each, within the
    // per-machine step budget config.stages.
    while (!found && spent < config.stages) {
      if (next_x <= spent) {
        live.push_back({next_x, Stepper(p, next_x, nullptr)});
        ++next_x;
      }
      for (std::size_t i = 0; i < live.size() && spent < config.stages; ++i) {
        Run& run = live[i];
        if (run.stepper.state() != HaltProbe::Kind::Unknown) continue;
        ++spent;
        ++tick;
        if (run.stepper.step() == HaltProbe::Kind::Halts &&
            run.x > threshold) {
          result.witnesses.push_back({e, run.x, tick});
          result.elements.push_back(run.x);
          sink.add({tick, e, TraceEventKind::Witness, run.x, 0});
          found = true;
          break;
        }
      }
      std::erase_if(live, [](const Run& run) {
        return run.stepper.state() != HaltProbe::Kind::Unknown;
      });
      if (live.empty() && next_x > spent) break;  // everything settled
    }
  }
  std::sort(result.elements.begin(), result.elements.end());
  return result;
}

NatSetPrefix SimpleResult::to_prefix(std::uint64_t bound) const {
  NatSetPrefix a(bound);
  for (std::uint64_t x : elements)
    if (x < bound) a.insert(x);
  return a;
}

// ---------------------------------------------------------------------------
// Diagonal set A = union of W_e ∩ R_e.

DiagResult diag_not_coarse(const MachineUniverse& u,
                           const ConstructionConfig& config) {
  DiagResult result;
  TraceSink sink{config.trace_mode, &result.trace};
  std::uint64_t fuel_cap = config.fuel.at(config.stages, config.machines);

  struct Slice {
    std::uint64_t scanned = 0;  // positions [0, scanned) probed
    // Positions that halt but have not yet cleared the fuel bound.
    std::priority_queue<std::pair<std::uint64_t, std::uint64_t>,
                        std::vector<std::pair<std::uint64_t, std::uint64_t>>,
                        std::greater<>>
        waiting;  // (h, position)
  };
  std::vector<Slice> slices(config.machines);

  for (std::uint64_t s = 0; s < config.stages; ++s) {
    std::uint64_t fuel = config.fuel.at(s, config.machines);
    for (std::uint64_t e = 0; e < config.machines && e <= s; ++e) {
      if (e >= 63) break;
      Slice& slice = slices[e];
      // Probe newly eligible positions: f_enum(e, j) < fuel.
      while (true) {
        std::uint64_t x = f_enum(static_cast<std::uint32_t>(e), slice.scanned);
        if (x >= fuel) break;
        PositionProbe probe = probe_position(u, e, x, fuel_cap);
        if (probe.halts) slice.waiting.push({probe.h, slice.scanned});
        ++slice.scanned;
      }
      // Promote the ones whose halting time now fits the fuel bound.
      while (!slice.waiting.empty() && slice.waiting.top().first <= fuel) {
        std::uint64_t j = slice.waiting.top().second;
        slice.waiting.pop();
        std::uint64_t x = f_enum(static_cast<std::uint32_t>(e), j);
        if (x >= fuel) continue;  // x < fuel can lag behind h <= fuel
        result.additions.push_back({s, static_cast<std::uint32_t>(e), x});
        sink.add({s, e, TraceEventKind::Add, x, 0});
      }
    }
  }
  return result;
}

NatSetPrefix DiagResult::prefix_at_stage(std::uint64_t stage,
                                         std::uint64_t bound) const {
  NatSetPrefix a(bound);
  for (const Added& added : additions)
    if (added.stage <= stage && added.element < bound) a.insert(added.element);
  return a;
}

// ---------------------------------------------------------------------------
// Density-1 set with no computable density-1 subset.

namespace {

// Walks the new restraint up from just above the old one until the slice
// density condition |A ∩ R_e[0..j]| <= (j+1)/2 holds.
std::uint64_t minimal_raised_position(const SliceSet& a, std::uint64_t from) {
  std::uint64_t j = from + 1;
  while (2 * a.count_through(j) > j + 1) ++j;
  return j;
}

}  // namespace

NosubsetResult density1_no_computable_subset(const MachineUniverse& u,
                                             const ConstructionConfig& config) {
  NosubsetResult result;
  TraceSink sink{config.trace_mode, &result.trace};
  std::uint64_t fuel_cap = config.fuel.at(config.stages, config.machines);

  struct SliceState {
    std::uint64_t r_pos = 0;       // restraint as a slice position
    std::uint64_t next_single = 1; // next candidate position above restraint
    CoverScan cover;
    SliceSet a;
  };
  std::vector<SliceState> slices(config.machines);
  std::uint64_t active = std::min<std::uint64_t>(config.machines, 62);

  for (std::uint64_t s = 0; s < config.stages; ++s) {
    std::uint64_t fuel = config.fuel.at(s, config.machines);
    for (std::uint64_t e = 0; e < active && e <= s; ++e) {
      SliceState& st = slices[e];
      std::uint32_t k = static_cast<std::uint32_t>(e);
      // Does A ∪ W_{e,fuel} cover R_e up to the restraint?
      while (st.cover.next <= st.r_pos) {
        if (st.a.contains_position(st.cover.next)) {
          ++st.cover.next;
          st.cover.pending.reset();
          continue;
        }
        std::uint64_t x = f_enum(k, st.cover.next);
        if (!st.cover.pending)
          st.cover.pending = probe_position(u, e, x, fuel_cap);
        if (in_w(*st.cover.pending, x, fuel)) {
          ++st.cover.next;
          st.cover.pending.reset();
          continue;
        }
        break;
      }
      if (st.cover.next > st.r_pos) {
        // Covered: dump the whole restrained prefix, then raise.
        std::uint64_t old_restraint = f_enum(k, st.r_pos);
        std::uint64_t before = st.a.count_through(st.r_pos);
        std::uint64_t prefix_size = st.r_pos + 1;
        std::uint64_t already_in_w = 0;
        for (std::uint64_t j = 0; j <= st.r_pos; ++j) {
          std::uint64_t x = f_enum(k, j);
          if (in_w(probe_position(u, e, x, fuel_cap), x, fuel)) ++already_in_w;
        }
        st.a.add_range(0, st.r_pos);
        std::uint64_t fresh = prefix_size - before;
        sink.add({s, e, TraceEventKind::Dump, old_restraint, old_restraint});

        std::uint64_t new_pos = minimal_raised_position(st.a, st.r_pos);
        st.r_pos = new_pos;
        std::uint64_t new_restraint = f_enum(k, new_pos);
        st.next_single = std::max(st.next_single, new_pos + 1);
        sink.add({s, e, TraceEventKind::Raise, new_restraint, new_restraint});
        result.jumps.push_back({s, e, old_restraint, new_restraint, prefix_size,
                                already_in_w, fresh, 0, new_pos + 1,
                                st.a.count_through(new_pos)});
      } else {
        // Not covered: feed one new element of R_e above the restraint.
        while (st.a.contains_position(st.next_single)) ++st.next_single;
        st.a.add_position(st.next_single);
        std::uint64_t x = f_enum(k, st.next_single);
        sink.add({s, e, TraceEventKind::Add, x, f_enum(k, st.r_pos)});
        ++st.next_single;
      }
    }
  }

  for (std::uint64_t e = 0; e < config.machines; ++e) {
    std::uint32_t k = static_cast<std::uint32_t>(std::min<std::uint64_t>(e, 61));
    result.slices.push_back({static_cast<std::uint32_t>(e),
                             e < active ? f_enum(k, slices[e].r_pos) : 0,
                             std::move(slices[e].a)});
  }
  return result;
}

bool NosubsetResult::contains(std::uint64_t m) const {
  if (m == 0) return false;
  std::uint32_t e = r_index(m);
  if (e >= slices.size()) return false;
  std::uint64_t j = ((m >> e) - 1) / 2;
  return slices[e].a.contains_position(j);
}

NatSetPrefix NosubsetResult::to_prefix(std::uint64_t bound) const {
  NatSetPrefix a(bound);
  for (const Slice& slice : slices) {
    for (const auto& [lo, hi] : slice.a.runs()) {
      for (std::uint64_t j = lo; j <= hi; ++j) {
        std::uint64_t m = f_enum(slice.e, j);
        if (m >= bound) break;
        a.insert(m);
      }
    }
  }
  return a;
}

const NosubsetResult::Slice& NosubsetResult::slice(std::uint32_t e) const {
  return slices.at(e);
}

// ---------------------------------------------------------------------------
// The generically-but-not-coarsely-computable pair.

PairResult generic_not_coarse_pair(const MachineUniverse& u,
                                   const ConstructionConfig& config) {
  PairResult result;
  TraceSink sink{config.trace_mode, &result.trace};
  std::uint64_t fuel_cap = config.fuel.at(config.stages, config.machines);

  struct SliceState {
    std::uint64_t r_pos = 0;
    std::uint64_t next_single = 1;
    CoverScan cover;  // domain coverage scanner
    SliceSet a0, a1;
  };
  std::vector<SliceState> slices(config.machines);
  std::uint64_t active = std::min<std::uint64_t>(config.machines, 62);

  for (std::uint64_t s = 0; s < config.stages; ++s) {
    std::uint64_t fuel = config.fuel.at(s, config.machines);
    for (std::uint64_t e = 0; e < active && e <= s; ++e) {
      SliceState& st = slices[e];
      std::uint32_t k = static_cast<std::uint32_t>(e);
      // Does the domain of Phi_{e,fuel} cover R_e up to the restraint?
      while (st.cover.next <= st.r_pos) {
        std::uint64_t x = f_enum(k, st.cover.next);
        if (!st.cover.pending)
          st.cover.pending = probe_position(u, e, x, fuel_cap);
        if (in_w(*st.cover.pending, x, fuel)) {
          ++st.cover.next;
          st.cover.pending.reset();
          continue;
        }
        break;
      }
      if (st.cover.next > st.r_pos) {
        std::uint64_t old_restraint = f_enum(k, st.r_pos);
        std::uint64_t prefix_size = st.r_pos + 1;
        std::uint64_t fresh = 0;
        // Split the untouched prefix elements by the machine's value.
        for (std::uint64_t j = 0; j <= st.r_pos; ++j) {
          if (st.a0.contains_position(j) || st.a1.contains_position(j))
            continue;
          std::uint64_t x = f_enum(k, j);
          PositionProbe probe = probe_position(u, e, x, fuel_cap);
          if (!probe.halts)
            throw InvariantError("pair construction: covered element lost its run");
          ++fresh;
          if (probe.value == 1) st.a0.add_position(j);
          else st.a1.add_position(j);
        }
        sink.add({s, e, TraceEventKind::Dump, old_restraint, old_restraint});
        // Half-law bookkeeping on the old prefix.
        std::uint64_t symdiff = 0;
        for (std::uint64_t j = 0; j <= st.r_pos; ++j) {
          std::uint64_t x = f_enum(k, j);
          PositionProbe probe = probe_position(u, e, x, fuel_cap);
          bool phi1 = probe.halts && probe.value == 1;
          if (phi1 != st.a1.contains_position(j)) ++symdiff;
        }
        std::uint64_t new_pos = st.r_pos + 1;
        while (2 * (st.a0.count_through(new_pos) + st.a1.count_through(new_pos)) >
               new_pos + 1)
          ++new_pos;
        st.r_pos = new_pos;
        std::uint64_t new_restraint = f_enum(k, new_pos);
        st.next_single = std::max(st.next_single, new_pos + 1);
        sink.add({s, e, TraceEventKind::Raise, new_restraint, new_restraint});
        result.jumps.push_back({s, e, old_restraint, new_restraint, prefix_size,
                                prefix_size, fresh, symdiff, new_pos + 1,
                                st.a0.count_through(new_pos) +
                                    st.a1.count_through(new_pos)});
      } else {
        while (st.a1.contains_position(st.next_single) ||
               st.a0.contains_position(st.next_single))
          ++st.next_single;
        st.a1.add_position(st.next_single);
        std::uint64_t x = f_enum(k, st.next_single);
        sink.add({s, e, TraceEventKind::Add, x, f_enum(k, st.r_pos)});
        ++st.next_single;
      }
    }
  }

  for (std::uint64_t e = 0; e < config.machines; ++e) {
    std::uint32_t k = static_cast<std::uint32_t>(std::min<std::uint64_t>(e, 61));
    result.slices.push_back({static_cast<std::uint32_t>(e),
                             e < active ? f_enum(k, slices[e].r_pos) : 0,
                             std::move(slices[e].a0), std::move(slices[e].a1)});
  }
  return result;
}

namespace {

NatSetPrefix slice_sets_to_prefix(const PairResult& result, std::uint64_t bound,
                                  bool use_a0, bool use_a1) {
  NatSetPrefix out(bound);
  for (const PairResult::Slice& slice : result.slices) {
    auto emit = [&](const SliceSet& set) {
      for (const auto& [lo, hi] : set.runs()) {
        for (std::uint64_t j = lo; j <= hi; ++j) {
          std::uint64_t m = f_enum(slice.e, j);
          if (m >= bound) break;
          out.insert(m);
        }
      }
    };
    if (use_a0) emit(slice.a0);
    if (use_a1) emit(slice.a1);
  }
  return out;
}

}  // namespace

NatSetPrefix PairResult::a0_prefix(std::uint64_t bound) const {
  return slice_sets_to_prefix(*this, bound, true, false);
}
NatSetPrefix PairResult::a1_prefix(std::uint64_t bound) const {
  return slice_sets_to_prefix(*this, bound, false, true);
}
NatSetPrefix PairResult::union_prefix(std::uint64_t bound) const {
  return slice_sets_to_prefix(*this, bound, true, true);
}

const PairResult::Slice& PairResult::slice(std::uint32_t e) const {
  return slices.at(e);
}

// ---------------------------------------------------------------------------
// Prescribed-density computable set.

Delta02Result delta02_density_set(const RationalSeq& q, std::uint64_t steps) {
  if (steps == 0) throw std::invalid_argument("delta02: need at least one step");
  auto checked_q = [&q](std::uint64_t n) {
    Rational value = q(n);
    if (value <= 0 || value >= 1)
      throw std::invalid_argument("delta02: q_n must lie strictly inside (0,1)");
    return value;
  };

  // Elements recorded as inclusive intervals; case one appends a block,
  // case two appends nothing.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks;
  Delta02Result result;
  std::uint64_t s = 1;
  std::uint64_t members = 1;  // 0 is in A
  blocks.emplace_back(0, 0);
  result.s.push_back(s);
  result.rho_at_s.push_back(ratio(members, s + 1));
  checked_q(1);

  for (std::uint64_t n = 1; n < steps; ++n) {
    Rational target = checked_q(n + 1);
    Rational current = ratio(members, s + 1);
    if (current < target) {
      // Add k fresh elements right above s; the least k reaching the target.
      std::uint64_t k = 1;
      while (ratio(members + k, s + k + 1) < target) ++k;
      blocks.emplace_back(s + 1, s + k);
      members += k;
      s += k;
    } else {
      // Add k non-elements; the least k dropping below the target.
      std::uint64_t k = 1;
      while (ratio(members, s + k + 1) >= target) ++k;
      s += k;
    }
    result.s.push_back(s);
    result.rho_at_s.push_back(ratio(members, s + 1));
  }

  result.a = DynBitset(s + 1);
  for (const auto& [lo, hi] : blocks)
    for (std::uint64_t m = lo; m <= hi; ++m) result.a.set(m);
  return result;
}

Rational Delta02Result::rho(std::uint64_t n) const {
  if (n >= a.size()) throw std::out_of_range("delta02 rho beyond built prefix");
  return ratio(kernels::popcount_range(a, 0, n + 1), n + 1);
}

// ---------------------------------------------------------------------------
// Interval diagonalization.

IntervalResult interval_diagonalization(
    const std::function<std::uint64_t(std::uint64_t)>& f,
    const MachineUniverse& u, std::uint64_t j_max) {
  if (j_max >= 24)
    throw std::invalid_argument("interval diagonalization: j_max too large");
  IntervalResult result;
  result.b = NatSetPrefix(std::uint64_t{1} << (j_max + 1));
  TraceSink sink{TraceMode::Full, &result.trace};

  std::vector<bool> met(j_max + 1, false);
  for (std::uint64_t j = 0; j <= j_max; ++j) {
    std::uint64_t fuel = f(j);
    std::uint64_t lo = std::uint64_t{1} << j;
    std::uint64_t hi = std::uint64_t{1} << (j + 1);
    // Least coded pair <e,k> <= j requiring attention.
    std::optional<std::uint64_t> chosen;
    for (std::uint64_t pair = 0; pair <= j && !chosen; ++pair) {
      if (pair < met.size() && met[pair]) continue;
      auto [e, k] = eop::pair_decode(pair);
      if (j < k) continue;
      bool all_converge = true;
      for (std::uint64_t x = lo; x < hi && all_converge; ++x) {
        HaltProbe probe = u.probe(e, x, fuel);
        if (probe.kind != HaltProbe::Kind::Halts || probe.steps > fuel)
          all_converge = false;
      }
      if (all_converge) chosen = pair;
    }
    if (!chosen) continue;
    auto [e, k] = eop::pair_decode(*chosen);
    for (std::uint64_t x = lo; x < hi; ++x) {
      HaltProbe probe = u.probe(e, x, fuel);
      if (probe.value == 0) result.b.insert(x);  // disagree everywhere
    }
    met[*chosen] = true;
    result.actions.push_back({j, *chosen, e, k});
    sink.add({j, *chosen, TraceEventKind::Attention, lo, 0});
  }
  return result;
}

}  // namespace genlab
