#include "genlab/machines.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <sstream>
#include <stdexcept>

#ifdef GENLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace genlab {

namespace {

constexpr std::uint64_t kMaxRegisters = 1u << 12;

}  // namespace

Stepper::Stepper(const Program& p, std::uint64_t x, const Membership* oracle)
    : p_(&p),
      oracle_(oracle),
      regs_(std::max<std::uint32_t>(p.num_regs, 1), 0) {
  regs_[0] = x;
  snap_regs_ = regs_;
}

HaltProbe::Kind Stepper::step() {
  if (result_.kind != HaltProbe::Kind::Unknown) return result_.kind;
  if (pc_ >= p_->code.size()) {
    // Off the end of the program the configuration never changes again.
    result_ = {HaltProbe::Kind::Diverges, steps_ + 1, 0};
    return result_.kind;
  }
  ++steps_;
  const Instr& ins = p_->code[pc_];
  switch (ins.op) {
    case Op::Inc:
      ++regs_[ins.a];
      ++pc_;
      break;
    case Op::Djz:
      if (regs_[ins.a] == 0) {
        pc_ = ins.b;
      } else {
        --regs_[ins.a];
        ++pc_;
      }
      break;
    case Op::Jmp:
      pc_ = ins.a;
      break;
    case Op::Out:
      result_ = {HaltProbe::Kind::Halts, steps_, ins.a};
      return result_.kind;
    case Op::Qry:
      regs_[ins.a] = (oracle_ && (*oracle_)(regs_[ins.a])) ? 1 : 0;
      ++pc_;
      break;
  }
  // Brent's cycle detection over configurations: a deterministic machine
  // that repeats a configuration can never halt, so tight loops settle
  // without burning their whole fuel budget.
  if (pc_ == snap_pc_ && regs_ == snap_regs_) {
    result_ = {HaltProbe::Kind::Diverges, steps_, 0};
    return result_.kind;
  }
  if (++lam_ == power_) {
    snap_pc_ = pc_;
    snap_regs_ = regs_;
    power_ <<= 1;
    lam_ = 0;
  }
  return HaltProbe::Kind::Unknown;
}

HaltProbe probe_halt(const Program& p, std::uint64_t x, std::uint64_t cap,
                     const Membership* oracle) {
  Stepper stepper(p, x, oracle);
  for (std::uint64_t step = 1; step <= cap; ++step)
    if (stepper.step() != HaltProbe::Kind::Unknown) return stepper.result();
  return {HaltProbe::Kind::Unknown, cap, 0};
}

FuelResult eval(const Program& p, std::uint64_t x, std::uint64_t fuel) {
  HaltProbe probe = probe_halt(p, x, fuel, nullptr);
  if (probe.kind == HaltProbe::Kind::Halts) return {probe.value};
  return {std::nullopt};
}

FuelResult eval_oracle(const Program& p, std::uint64_t x, std::uint64_t fuel,
                       const Membership& oracle) {
  HaltProbe probe = probe_halt(p, x, fuel, &oracle);
  if (probe.kind == HaltProbe::Kind::Halts) return {probe.value};
  return {std::nullopt};
}

// ---------------------------------------------------------------------------
// Text format.

Program parse_program(std::istream& in) {
  Program p;
  std::string line;
  std::uint64_t max_reg = 0;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::uint64_t>> targets;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string mnemonic;
    if (!(ls >> mnemonic)) continue;
    auto need = [&](std::uint64_t& out) {
      if (!(ls >> out))
        throw std::invalid_argument("program line " + std::to_string(line_no) +
                                    ": missing operand");
    };
    Instr ins{};
    if (mnemonic == "INC") {
      ins.op = Op::Inc;
      need(ins.a);
      max_reg = std::max(max_reg, ins.a);
    } else if (mnemonic == "DJZ") {
      ins.op = Op::Djz;
      need(ins.a);
      need(ins.b);
      max_reg = std::max(max_reg, ins.a);
      targets.emplace_back(line_no, ins.b);
    } else if (mnemonic == "JMP") {
      ins.op = Op::Jmp;
      need(ins.a);
      targets.emplace_back(line_no, ins.a);
    } else if (mnemonic == "OUT") {
      ins.op = Op::Out;
      need(ins.a);
    } else if (mnemonic == "QRY") {
      ins.op = Op::Qry;
      need(ins.a);
      max_reg = std::max(max_reg, ins.a);
    } else {
      throw std::invalid_argument("program line " + std::to_string(line_no) +
                                  ": unknown mnemonic " + mnemonic);
    }
    std::uint64_t extra;
    if (ls >> extra)
      throw std::invalid_argument("program line " + std::to_string(line_no) +
                                  ": trailing operand");
    p.code.push_back(ins);
  }
  if (max_reg >= kMaxRegisters)
    throw std::invalid_argument("register index too large");
  for (auto [ln, target] : targets)
    if (target > p.code.size())
      throw std::invalid_argument("program line " + std::to_string(ln) +
                                  ": jump target out of range");
  p.num_regs = static_cast<std::uint32_t>(max_reg) + 1;
  return p;
}

Program parse_program_text(const std::string& text) {
  std::istringstream in(text);
  return parse_program(in);
}

std::string format_program(const Program& p) {
  std::ostringstream out;
  for (const Instr& ins : p.code) {
    switch (ins.op) {
      case Op::Inc: out << "INC " << ins.a << '\n'; break;
      case Op::Djz: out << "DJZ " << ins.a << ' ' << ins.b << '\n'; break;
      case Op::Jmp: out << "JMP " << ins.a << '\n'; break;
      case Op::Out: out << "OUT " << ins.a << '\n'; break;
      case Op::Qry: out << "QRY " << ins.a << '\n'; break;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Numbering: index + 1 in binary, leading bit dropped, is a bitstring that
// parses as a sequence of (3-bit opcode, Elias-gamma operands) records. A
// truncated trailing record is discarded, so every natural decodes.

namespace {

struct BitWriter {
  std::vector<bool> bits;
  void push(bool b) { bits.push_back(b); }
  void push_gamma(std::uint64_t v) {
    std::uint64_t u = v + 1;
    int width = std::bit_width(u);
    for (int i = 0; i < width - 1; ++i) push(false);
    for (int i = width - 1; i >= 0; --i) push((u >> i) & 1);
  }
};

struct BitReader {
  const std::vector<bool>& bits;
  std::size_t pos = 0;
  bool done() const { return pos >= bits.size(); }
  std::optional<bool> next() {
    if (done()) return std::nullopt;
    return bits[pos++];
  }
  std::optional<std::uint64_t> next_gamma() {
    int zeros = 0;
    while (true) {
      auto b = next();
      if (!b) return std::nullopt;
      if (*b) break;
      if (++zeros > 63) return std::nullopt;
    }
    std::uint64_t u = 1;
    for (int i = 0; i < zeros; ++i) {
      auto b = next();
      if (!b) return std::nullopt;
      u = (u << 1) | (*b ? 1 : 0);
    }
    return u - 1;
  }
};

constexpr int kOpcodeOf[] = {0, 1, 2, 3, 4};

}  // namespace

Program MachineUniverse::decode_program(const BigInt& index) {
  BigInt u = index + 1;
  std::vector<bool> bits;
  long width = static_cast<long>(boost::multiprecision::msb(u));
  for (long i = width - 1; i >= 0; --i)
    bits.push_back(boost::multiprecision::bit_test(u, static_cast<unsigned>(i)));

  Program p;
  BitReader reader{bits};
  std::uint64_t max_reg = 0;
  while (!reader.done()) {
    unsigned opcode = 0;
    bool short_read = false;
    for (int i = 0; i < 3; ++i) {
      auto b = reader.next();
      if (!b) { short_read = true; break; }
      opcode = (opcode << 1) | (*b ? 1 : 0);
    }
    if (short_read) break;
    Instr ins{};
    ins.op = static_cast<Op>(kOpcodeOf[opcode % 5]);
    auto a = reader.next_gamma();
    if (!a) break;
    ins.a = *a;
    if (ins.op == Op::Djz) {
      auto b = reader.next_gamma();
      if (!b) break;
      ins.b = *b;
    }
    p.code.push_back(ins);
  }

  std::uint64_t len = p.code.size();
  for (Instr& ins : p.code) {
    switch (ins.op) {
      case Op::Inc:
      case Op::Qry:
        ins.a %= kMaxRegisters;
        max_reg = std::max(max_reg, ins.a);
        break;
      case Op::Djz:
        ins.a %= kMaxRegisters;
        max_reg = std::max(max_reg, ins.a);
        ins.b %= len + 1;
        break;
      case Op::Jmp:
        ins.a %= len + 1;
        break;
      case Op::Out:
        break;
    }
  }
  p.num_regs = static_cast<std::uint32_t>(max_reg) + 1;
  return p;
}

BigInt MachineUniverse::encode_program(const Program& p) {
  BitWriter writer;
  for (const Instr& ins : p.code) {
    unsigned opcode = static_cast<unsigned>(ins.op);
    for (int i = 2; i >= 0; --i) writer.push((opcode >> i) & 1);
    writer.push_gamma(ins.a);
    if (ins.op == Op::Djz) writer.push_gamma(ins.b);
  }
  BigInt u = 1;
  for (bool b : writer.bits) {
    u <<= 1;
    if (b) u |= 1;
  }
  return u - 1;
}

void MachineUniverse::set_override(std::uint64_t e, Program p) {
  overrides_[e] = std::move(p);
}

const Program& MachineUniverse::program(std::uint64_t e) const {
  if (auto it = overrides_.find(e); it != overrides_.end()) return it->second;
  auto [it, inserted] = decode_cache_.try_emplace(e);
  if (inserted) it->second = decode_program(BigInt(e));
  return it->second;
}

FuelResult MachineUniverse::eval(std::uint64_t e, std::uint64_t x,
                                 std::uint64_t fuel) const {
  return genlab::eval(program(e), x, fuel);
}

FuelResult MachineUniverse::eval_oracle(std::uint64_t e, std::uint64_t x,
                                        std::uint64_t fuel,
                                        const Membership& oracle) const {
  return genlab::eval_oracle(program(e), x, fuel, oracle);
}

HaltProbe MachineUniverse::probe(std::uint64_t e, std::uint64_t x,
                                 std::uint64_t cap) const {
  return probe_halt(program(e), x, cap, nullptr);
}

NatSetPrefix MachineUniverse::we_stage(std::uint64_t e, std::uint64_t s) const {
  NatSetPrefix w(s);
  const Program& p = program(e);
  for (std::uint64_t x = 0; x < s; ++x) {
    HaltProbe probe = probe_halt(p, x, s, nullptr);
    if (probe.kind == HaltProbe::Kind::Halts) w.insert(x);
  }
  return w;
}

std::vector<Discovery> MachineUniverse::dovetail(
    std::span<const std::uint64_t> indices, std::uint64_t budget) const {
  std::vector<std::vector<Discovery>> per_index(indices.size());
  std::int64_t count = static_cast<std::int64_t>(indices.size());
#ifdef GENLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < count; ++i) {
    std::uint64_t e = indices[static_cast<std::size_t>(i)];
    const Program& p = program(e);
    for (std::uint64_t x = 0; x < budget; ++x) {
      HaltProbe probe = probe_halt(p, x, budget, nullptr);
      if (probe.kind == HaltProbe::Kind::Halts)
        per_index[static_cast<std::size_t>(i)].push_back(
            {e, x, std::max(probe.steps, x + 1)});
    }
  }
  // Deterministic merge of the per-index schedules.
  std::vector<std::pair<std::size_t, Discovery>> merged;
  for (std::size_t i = 0; i < per_index.size(); ++i)
    for (const Discovery& d : per_index[i]) merged.emplace_back(i, d);
  std::stable_sort(merged.begin(), merged.end(),
                   [](const auto& lhs, const auto& rhs) {
                     if (lhs.second.stage != rhs.second.stage)
                       return lhs.second.stage < rhs.second.stage;
                     if (lhs.first != rhs.first) return lhs.first < rhs.first;
                     return lhs.second.x < rhs.second.x;
                   });
  std::vector<Discovery> out;
  out.reserve(merged.size());
  for (const auto& [pos, d] : merged) out.push_back(d);
  return out;
}

// ---------------------------------------------------------------------------
// Designed opponents.

namespace programs {

Program always_halt(std::uint64_t v) {
  return {{{Op::Out, v}}, 1};
}

Program diverge() {
  return {{{Op::Jmp, 0}}, 1};
}

Program halts_iff_even() {
  return {{
              {Op::Djz, 0, 3},
              {Op::Djz, 0, 4},
              {Op::Jmp, 0},
              {Op::Out, 1},
              {Op::Jmp, 4},
          },
          1};
}

Program parity() {
  return {{
              {Op::Djz, 0, 3},
              {Op::Djz, 0, 4},
              {Op::Jmp, 0},
              {Op::Out, 1},
              {Op::Out, 0},
          },
          1};
}

Program threshold(std::uint64_t t) {
  Program p;
  std::uint64_t diverge_at = t + 2;
  for (std::uint64_t i = 0; i <= t; ++i)
    p.code.push_back({Op::Djz, 0, diverge_at});
  p.code.push_back({Op::Out, 1});
  p.code.push_back({Op::Jmp, diverge_at});
  p.num_regs = 1;
  return p;
}

Program oracle_bit() {
  return {{
              {Op::Qry, 0},
              {Op::Djz, 0, 3},
              {Op::Out, 1},
              {Op::Out, 0},
          },
          1};
}

Program oracle_complement() {
  return {{
              {Op::Qry, 0},
              {Op::Djz, 0, 3},
              {Op::Out, 0},
              {Op::Out, 1},
          },
          1};
}

Program coded_member() {
  return {{
              {Op::Djz, 0, 4},   // halving loop: r0 == 0 -> slice++
              {Op::Djz, 0, 8},   // r0 was odd -> query
              {Op::Inc, 1},
              {Op::Jmp, 0},
              {Op::Inc, 2},      // one more factor of two
              {Op::Djz, 1, 0},   // move quotient back into r0
              {Op::Inc, 0},
              {Op::Jmp, 5},
              {Op::Qry, 2},
              {Op::Djz, 2, 11},
              {Op::Out, 1},
              {Op::Out, 0},
          },
          3};
}

}  // namespace programs

}  // namespace genlab
