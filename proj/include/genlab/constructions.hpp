#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "genlab/machines.hpp"
#include "genlab/natset.hpp"
#include "genlab/rational.hpp"

namespace genlab {

// Raised when a construction's own invariants fail mid-run; the CLI maps
// this to exit code 3 with a diagnostic dump.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class TraceEventKind : std::uint8_t {
  Add,        // one element entered the set being built
  Dump,       // a whole restrained prefix entered the set
  Raise,      // the restraint moved up
  Witness,    // a simple-set witness was captured
  Attention,  // an interval requirement acted
};
const char* to_string(TraceEventKind kind);

struct TraceEvent {
  std::uint64_t stage;
  std::uint64_t slice;
  TraceEventKind kind;
  std::uint64_t value;
  std::uint64_t restraint;
};

// Full keeps per-element Add events; EventsOnly keeps only dumps, raises,
// witnesses and attention marks (long runs emit millions of adds).
enum class TraceMode : std::uint8_t { Full, EventsOnly, Off };

// CSV rows `stage,slice,event,value,restraint` in event order.
void trace_export(std::span<const TraceEvent> events, std::ostream& os);

// Stage-to-fuel coupling for the W_{e,.} queried inside constructions. The
// source constructions consult W_{e,s+1} with one shared stage clock; a
// desk harness must also decide how much machine fuel one stage grants.
// One tick per universe member per stage (fuel = machines * (s + 1)) keeps
// every adversary's enumeration pace proportional to the universe size.
struct StageFuel {
  std::uint64_t multiplier = 0;  // 0 means "use the machine count"

  std::uint64_t at(std::uint64_t stage, std::uint64_t machines) const {
    std::uint64_t m = multiplier ? multiplier : std::max<std::uint64_t>(machines, 1);
    return m * (stage + 1);
  }
};

struct ConstructionConfig {
  std::uint64_t stages = 0;
  std::uint64_t machines = 0;
  StageFuel fuel;
  TraceMode trace_mode = TraceMode::Full;
};

// Subset of one slice R_e kept as sorted inclusive runs of positions
// (position j stands for the element f_enum(e, j)).
class SliceSet {
 public:
  void add_position(std::uint64_t j) { add_range(j, j); }
  void add_range(std::uint64_t first, std::uint64_t last);
  bool contains_position(std::uint64_t j) const;
  // Number of member positions <= j.
  std::uint64_t count_through(std::uint64_t j) const;
  std::uint64_t count() const;
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& runs() const {
    return runs_;
  }

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs_;
};

// One restraint increase, with the counts the half-laws are about. Counts
// refer to R_e restricted to the old restraint, measured at the moment of
// the jump.
struct RestraintJump {
  std::uint64_t stage;
  std::uint64_t slice;
  std::uint64_t old_restraint;
  std::uint64_t new_restraint;
  std::uint64_t prefix_size;      // |R_e restricted to old restraint|
  std::uint64_t already_in_w;     // of those, members of W_{e,fuel}
  std::uint64_t fresh;            // elements newly added by the dump/split
  std::uint64_t symdiff_count;    // |(Phi^{-1}(1) xor A_1) ∩ prefix| (pair only)
  std::uint64_t new_prefix_size;  // |R_e restricted to new restraint|
  std::uint64_t a_in_new_prefix;  // members of the built set(s) in it, post-raise
};

// --------------------------------------------------------------------------
// Post's simple set, density-0 variant: for each e, dovetail W_e until a
// number > e^2 appears and promote the first such number. `stages` is the
// per-machine dovetailing step budget.
struct SimpleResult {
  struct Witness {
    std::uint64_t e;
    std::uint64_t x;
    std::uint64_t tick;  // dovetail step at which the witness halted
  };
  std::vector<Witness> witnesses;
  std::vector<std::uint64_t> elements;  // sorted members of A
  std::vector<TraceEvent> trace;

  NatSetPrefix to_prefix(std::uint64_t bound) const;
};

SimpleResult simple_density0(const MachineUniverse& u,
                             const ConstructionConfig& config);

// --------------------------------------------------------------------------
// The diagonal c.e. set A = union of W_e ∩ R_e.
struct DiagResult {
  struct Added {
    std::uint64_t stage;
    std::uint32_t slice;
    std::uint64_t element;
  };
  std::vector<Added> additions;  // in (stage, slice, element) order
  std::vector<TraceEvent> trace;

  NatSetPrefix prefix_at_stage(std::uint64_t stage, std::uint64_t bound) const;
};

DiagResult diag_not_coarse(const MachineUniverse& u,
                           const ConstructionConfig& config);

// --------------------------------------------------------------------------
// The density-1 c.e. set with no computable density-1 subset. Slice e adds
// one new R_e element above the restraint per stage until W_{e,fuel}
// together with A covers R_e up to the restraint, then dumps that prefix
// and raises the restraint minimally so the dump's slice density is <= 1/2.
struct NosubsetResult {
  struct Slice {
    std::uint32_t e;
    std::uint64_t restraint;
    SliceSet a;
  };
  std::vector<Slice> slices;
  std::vector<RestraintJump> jumps;
  std::vector<TraceEvent> trace;

  bool contains(std::uint64_t m) const;
  NatSetPrefix to_prefix(std::uint64_t bound) const;
  const Slice& slice(std::uint32_t e) const;
};

NosubsetResult density1_no_computable_subset(const MachineUniverse& u,
                                             const ConstructionConfig& config);

// --------------------------------------------------------------------------
// The disjoint pair (A_0, A_1) with dense union and A_1 escaping every
// total 0/1 machine on a positive-density set.
struct PairResult {
  struct Slice {
    std::uint32_t e;
    std::uint64_t restraint;
    SliceSet a0;
    SliceSet a1;
  };
  std::vector<Slice> slices;
  std::vector<RestraintJump> jumps;
  std::vector<TraceEvent> trace;

  NatSetPrefix a0_prefix(std::uint64_t bound) const;
  NatSetPrefix a1_prefix(std::uint64_t bound) const;
  NatSetPrefix union_prefix(std::uint64_t bound) const;
  const Slice& slice(std::uint32_t e) const;
};

PairResult generic_not_coarse_pair(const MachineUniverse& u,
                                   const ConstructionConfig& config);

// --------------------------------------------------------------------------
// Computable set with density prescribed by a rational sequence from (0,1).
using RationalSeq = std::function<Rational(std::uint64_t n)>;  // n >= 1

struct Delta02Result {
  std::vector<std::uint64_t> s;      // s_1 .. s_N
  std::vector<Rational> rho_at_s;    // rho_{s_n}(A), exact
  DynBitset a;                       // membership on [0, s_N]

  Rational rho(std::uint64_t n) const;  // rho_n(A) for n <= s_N
};

Delta02Result delta02_density_set(const RationalSeq& q, std::uint64_t steps);

// --------------------------------------------------------------------------
// Interval diagonalization against total 0/1 machines, with the fuel for
// interval j supplied by the caller through f.
struct IntervalResult {
  struct Action {
    std::uint64_t j;      // interval [2^j, 2^{j+1})
    std::uint64_t pair;   // Cantor code of (e, k)
    std::uint64_t e;
    std::uint64_t k;
  };
  NatSetPrefix b;
  std::vector<Action> actions;
  std::vector<TraceEvent> trace;
};

IntervalResult interval_diagonalization(
    const std::function<std::uint64_t(std::uint64_t)>& f,
    const MachineUniverse& u, std::uint64_t j_max);

}  // namespace genlab
