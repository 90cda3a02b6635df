#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genlab/natset.hpp"
#include "genlab/partition.hpp"
#include "genlab/rational.hpp"

namespace genlab {

// Counter-machine instruction set. One instruction costs one step, oracle
// queries included.
//   Inc r       increment register r
//   Djz r a     if register r is zero jump to a, else decrement and continue
//   Jmp a       jump to a
//   Out v       halt with output v
//   Qry r       replace register r with the oracle bit at its current value
enum class Op : std::uint8_t { Inc, Djz, Jmp, Out, Qry };

struct Instr {
  Op op;
  std::uint64_t a = 0;  // register, address, or output value
  std::uint64_t b = 0;  // jump target for Djz
};

struct Program {
  std::vector<Instr> code;
  std::uint32_t num_regs = 1;

  bool operator==(const Program&) const = default;
};

// Text format: one instruction per line (`INC r`, `DJZ r addr`, `JMP addr`,
// `OUT v`, `QRY r`), '#' comments and blank lines allowed. A jump target
// equal to the program length is legal and parks the machine forever.
Program parse_program(std::istream& in);
Program parse_program_text(const std::string& text);
std::string format_program(const Program& p);

// Run outcome under a fuel bound; out-of-fuel is a value, not an error.
struct FuelResult {
  std::optional<std::uint64_t> value;
  bool converged() const { return value.has_value(); }
};

// Exact halting information up to a step cap. Diverges is certain: it is
// reported only when the machine's configuration repeats, which a
// deterministic machine can never leave.
struct HaltProbe {
  enum class Kind { Halts, Diverges, Unknown } kind = Kind::Unknown;
  std::uint64_t steps = 0;
  std::uint64_t value = 0;
};

// Input convention: x is loaded into register 0, all others start at 0.
// With no oracle, Qry answers as the empty set.
FuelResult eval(const Program& p, std::uint64_t x, std::uint64_t fuel);
FuelResult eval_oracle(const Program& p, std::uint64_t x, std::uint64_t fuel,
                       const Membership& oracle);
HaltProbe probe_halt(const Program& p, std::uint64_t x, std::uint64_t cap,
                     const Membership* oracle = nullptr);

// Resumable run of one program on one input; lets a scheduler interleave
// many computations one instruction at a time. Configuration-repeat
// detection promotes tight loops to a certain Diverges verdict.
class Stepper {
 public:
  Stepper(const Program& p, std::uint64_t x, const Membership* oracle = nullptr);

  // Executes one instruction unless already settled.
  HaltProbe::Kind step();

  HaltProbe::Kind state() const { return result_.kind; }
  const HaltProbe& result() const { return result_; }
  std::uint64_t steps_taken() const { return steps_; }

 private:
  const Program* p_;
  const Membership* oracle_;
  std::vector<std::uint64_t> regs_;
  std::uint64_t pc_ = 0;
  std::uint64_t steps_ = 0;
  std::vector<std::uint64_t> snap_regs_;
  std::uint64_t snap_pc_ = 0;
  std::uint64_t power_ = 1, lam_ = 0;
  HaltProbe result_{};
};

// Dovetail discovery record: x entered W_e at `stage` (the least s with
// x < s and a halt within s steps).
struct Discovery {
  std::uint64_t e;
  std::uint64_t x;
  std::uint64_t stage;
};

// Total numbering of programs plus finitely many named overrides. Every
// natural decodes to a runnable program; encode inverts decode on programs
// whose operands are already canonical.
class MachineUniverse {
 public:
  MachineUniverse() = default;

  void set_override(std::uint64_t e, Program p);
  bool has_override(std::uint64_t e) const { return overrides_.count(e) != 0; }
  const Program& program(std::uint64_t e) const;

  static Program decode_program(const BigInt& index);
  static BigInt encode_program(const Program& p);

  FuelResult eval(std::uint64_t e, std::uint64_t x, std::uint64_t fuel) const;
  FuelResult eval_oracle(std::uint64_t e, std::uint64_t x, std::uint64_t fuel,
                         const Membership& oracle) const;
  HaltProbe probe(std::uint64_t e, std::uint64_t x, std::uint64_t cap) const;

  // W_{e,s} = {x < s : eval(e, x, s) converged}.
  NatSetPrefix we_stage(std::uint64_t e, std::uint64_t s) const;

  // Exactly {(e, x) : x in W_{e,budget}} in first-discovery order, i.e.
  // ordered by (stage, position of e in `indices`, x). Bit-identical across
  // runs for fixed inputs.
  std::vector<Discovery> dovetail(std::span<const std::uint64_t> indices,
                                  std::uint64_t budget) const;

 private:
  std::map<std::uint64_t, Program> overrides_;
  mutable std::map<std::uint64_t, Program> decode_cache_;
};

// Designed opponents for the constructions; each is a tiny hand-written
// counter program with known halting behavior.
namespace programs {

// OUT v as the whole program: halts on every input in one step. Its domain
// is everything; under the stage cap x < s it enumerates omega in
// increasing order, one element per stage.
Program always_halt(std::uint64_t v = 0);

// Tight loop: halts nowhere.
Program diverge();

// Halts exactly on even inputs (output 1).
Program halts_iff_even();

// Total: outputs 1 on even inputs, 0 on odd inputs.
Program parity();

// Halts exactly on x > threshold, in threshold + 2 steps.
Program threshold(std::uint64_t threshold);

// Total given a total oracle: outputs the oracle bit at x.
Program oracle_bit();

// Total given a total oracle: outputs the complement of the oracle bit.
Program oracle_complement();

// For x >= 1, outputs oracle(r_index(x)), i.e. membership of x in the coded
// set R(oracle); diverges on x = 0.
Program coded_member();

}  // namespace programs

}  // namespace genlab
