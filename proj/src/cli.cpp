#include "genlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "genlab/constructions.hpp"
#include "genlab/density.hpp"
#include "genlab/eop.hpp"
#include "genlab/generic.hpp"
#include "genlab/machines.hpp"
#include "genlab/partition.hpp"

namespace genlab {
namespace cli {

namespace {

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoull(item));
  return out;
}

// Set specs: empty | omega | evens | odds | log2even | mult:K | R:K | RA:a,b,c
NatSetPrefix parse_set(const std::string& spec, std::uint64_t bound) {
  if (spec == "empty") return sets::empty(bound);
  if (spec == "omega" || spec == "all") return sets::all(bound);
  if (spec == "evens") return sets::evens(bound);
  if (spec == "odds") return sets::odds(bound);
  if (spec == "log2even") return sets::log2_even(bound);
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string kind = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    if (kind == "mult") return sets::multiples(std::stoull(arg), bound);
    if (kind == "R") {
      std::uint32_t k = static_cast<std::uint32_t>(std::stoul(arg));
      return NatSetPrefix::from_predicate(bound, [k](std::uint64_t m) {
        return m != 0 && r_index(m) == k;
      });
    }
    if (kind == "RA") {
      std::uint64_t mask = 0;
      for (std::uint64_t k : parse_list(arg)) mask |= std::uint64_t{1} << k;
      return encode_R_mask(mask, bound);
    }
  }
  throw CLI::ValidationError("--set", "unknown set spec: " + spec);
}

RationalSeq parse_q(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--q", "expected const:NUM/DEN or trunc:NUM/DEN");
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  auto slash = arg.find('/');
  Rational value = slash == std::string::npos
                       ? Rational(BigInt(arg))
                       : Rational(BigInt(arg.substr(0, slash)),
                                  BigInt(arg.substr(slash + 1)));
  if (kind == "const")
    return [value](std::uint64_t) { return value; };
  if (kind == "trunc") {
    // Decimal truncations of the target: q_n = floor(10^n * r) / 10^n.
    return [value](std::uint64_t n) {
      BigInt scale = 1;
      for (std::uint64_t i = 0; i < n; ++i) scale *= 10;
      BigInt floored = (numerator(value) * scale) / denominator(value);
      return Rational(floored, scale);
    };
  }
  throw CLI::ValidationError("--q", "unknown sequence kind: " + kind);
}

Program parse_adversary_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "always") return programs::always_halt(arg.empty() ? 0 : std::stoull(arg));
  if (kind == "diverge") return programs::diverge();
  if (kind == "evens") return programs::halts_iff_even();
  if (kind == "parity") return programs::parity();
  if (kind == "threshold") return programs::threshold(std::stoull(arg));
  if (kind == "oracle") return programs::oracle_bit();
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw CLI::ValidationError("--adversaries", "cannot open " + arg);
    return parse_program(in);
  }
  throw CLI::ValidationError("--adversaries", "unknown adversary: " + spec);
}

// Adversary files: one `<index> <spec>` per line, '#' comments.
void load_adversaries(MachineUniverse& u, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--adversaries", "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::uint64_t index;
    std::string spec;
    if (!(ls >> index)) continue;
    if (!(ls >> spec))
      throw CLI::ValidationError("--adversaries", "missing program spec");
    u.set_override(index, parse_adversary_spec(spec));
  }
}

MachineUniverse default_universe(std::uint64_t machines) {
  MachineUniverse u;
  if (machines > 0) u.set_override(0, programs::always_halt());
  if (machines > 1) u.set_override(1, programs::diverge());
  if (machines > 2) u.set_override(2, programs::halts_iff_even());
  if (machines > 3) u.set_override(3, programs::threshold(9));
  if (machines > 4) u.set_override(4, programs::threshold(16));
  if (machines > 5) u.set_override(5, programs::parity());
  return u;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("--out", "cannot write " + path);
  return out;
}

// Inject config-file entries as options ahead of the explicit flags;
// TakeLast multi-option policy then gives the flags precedence.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + config_path);

  std::vector<std::string> merged;
  if (!args.empty()) merged.push_back(args[0]);  // subcommand first
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto strip = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    strip(key);
    strip(value);
    if (key.empty()) continue;
    merged.push_back("--" + key);
    merged.push_back(value);
  }
  for (std::size_t i = args.empty() ? 0 : 1; i < args.size(); ++i)
    merged.push_back(args[i]);
  return merged;
}

struct RunOptions {
  std::string construction;
  std::uint64_t stages = 1000;
  std::uint64_t machines = 16;
  std::uint64_t fuel_multiplier = 0;
  std::uint64_t bound = 1u << 14;
  std::uint64_t jmax = 10;
  std::string adversaries;
  std::string trace = "full";
  std::string out = "trace.csv";
  std::string config;
};

TraceMode parse_trace_mode(const std::string& mode) {
  if (mode == "full") return TraceMode::Full;
  if (mode == "events") return TraceMode::EventsOnly;
  if (mode == "off") return TraceMode::Off;
  throw CLI::ValidationError("--trace", "expected full|events|off");
}

int do_run(const RunOptions& opt) {
  MachineUniverse u = default_universe(opt.machines);
  if (!opt.adversaries.empty()) load_adversaries(u, opt.adversaries);
  ConstructionConfig config{opt.stages, opt.machines,
                            StageFuel{opt.fuel_multiplier},
                            parse_trace_mode(opt.trace)};
  std::ofstream out = open_out(opt.out);

  if (opt.construction == "simple") {
    SimpleResult result = simple_density0(u, config);
    trace_export(result.trace, out);
    NatSetPrefix a = result.to_prefix(opt.bound);
    std::cout << "simple: " << result.elements.size() << " witnesses, rho_"
              << opt.bound - 1 << " = "
              << float_cell(prefix_density(a, opt.bound - 1)) << "\n";
    return 0;
  }
  if (opt.construction == "diag") {
    DiagResult result = diag_not_coarse(u, config);
    trace_export(result.trace, out);
    NatSetPrefix a = result.prefix_at_stage(opt.stages, opt.bound);
    std::cout << "diag: " << result.additions.size() << " elements, rho_"
              << opt.bound - 1 << " = "
              << float_cell(prefix_density(a, opt.bound - 1)) << "\n";
    return 0;
  }
  if (opt.construction == "density1") {
    NosubsetResult result = density1_no_computable_subset(u, config);
    trace_export(result.trace, out);
    NatSetPrefix a = result.to_prefix(opt.bound);
    std::cout << "density1: " << result.jumps.size() << " restraint jumps, rho_"
              << opt.bound - 1 << " = "
              << float_cell(prefix_density(a, opt.bound - 1)) << "\n";
    return 0;
  }
  if (opt.construction == "genpair") {
    PairResult result = generic_not_coarse_pair(u, config);
    trace_export(result.trace, out);
    NatSetPrefix unioned = result.union_prefix(opt.bound);
    std::cout << "genpair: " << result.jumps.size()
              << " restraint jumps, union rho_" << opt.bound - 1 << " = "
              << float_cell(prefix_density(unioned, opt.bound - 1)) << "\n";
    return 0;
  }
  if (opt.construction == "interval") {
    std::uint64_t scale = opt.stages;
    IntervalResult result = interval_diagonalization(
        [scale](std::uint64_t j) { return scale * (j + 1); }, u, opt.jmax);
    trace_export(result.trace, out);
    std::cout << "interval: " << result.actions.size()
              << " requirements acted\n";
    return 0;
  }
  throw CLI::ValidationError(
      "construction", "expected simple|diag|density1|genpair|interval");
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
  CLI::App app{"genlab: asymptotic-density and generic-computability workbench"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // density
  auto* density_cmd = app.add_subcommand("density", "prefix density profile of a set");
  std::string d_set = "omega", d_points = "1023", d_out = "density.csv", d_config;
  double d_window = 0.5;
  density_cmd->add_option("--set", d_set, "set spec");
  density_cmd->add_option("--points", d_points, "comma-separated sample points");
  density_cmd->add_option("--window", d_window, "tail window fraction");
  density_cmd->add_option("--out", d_out, "output CSV");
  density_cmd->add_option("--config", d_config, "key=value config file");

  // build-delta02
  auto* delta_cmd = app.add_subcommand("build-delta02",
                                       "computable set with prescribed density");
  std::string q_spec = "const:1/2", delta_out = "delta02.csv", delta_config;
  std::uint64_t delta_steps = 1000;
  delta_cmd->add_option("--q", q_spec, "target sequence (const:N/D or trunc:N/D)");
  delta_cmd->add_option("--steps", delta_steps, "number of stages");
  delta_cmd->add_option("--out", delta_out, "output CSV");
  delta_cmd->add_option("--config", delta_config, "key=value config file");

  // run
  auto* run_cmd = app.add_subcommand("run", "run a staged construction");
  RunOptions run_opt;
  std::vector<std::string> run_positionals;
  run_cmd->add_option("spec", run_positionals, "construction=NAME");
  run_cmd->add_option("--construction", run_opt.construction, "construction name");
  run_cmd->add_option("--stages", run_opt.stages, "stage count / step budget");
  run_cmd->add_option("--machines", run_opt.machines, "universe size");
  run_cmd->add_option("--fuel-multiplier", run_opt.fuel_multiplier,
                      "machine fuel per stage (0 = machine count)");
  run_cmd->add_option("--bound", run_opt.bound, "prefix bound for the summary");
  run_cmd->add_option("--jmax", run_opt.jmax, "last interval exponent");
  run_cmd->add_option("--adversaries", run_opt.adversaries, "adversary table file");
  run_cmd->add_option("--trace", run_opt.trace, "full|events|off");
  run_cmd->add_option("--out", run_opt.out, "trace CSV path");
  run_cmd->add_option("--config", run_opt.config, "key=value config file");

  // decode-coarse
  auto* coarse_cmd = app.add_subcommand("decode-coarse",
                                        "threshold-decode a coarse set");
  std::string coarse_a = "RA:1", coarse_out, coarse_config;
  std::uint64_t coarse_n = 1, coarse_s = 1u << 12;
  coarse_cmd->add_option("--set", coarse_a, "coarse set spec (e.g. RA:1,3)");
  coarse_cmd->add_option("--n", coarse_n, "slice index to decode");
  coarse_cmd->add_option("--s", coarse_s, "stage / prefix length");
  coarse_cmd->add_option("--out", coarse_out, "optional output CSV");
  coarse_cmd->add_option("--config", coarse_config, "key=value config file");

  // eop
  auto* eop_cmd = app.add_subcommand("eop", "enumeration operator operations");
  eop_cmd->require_subcommand(1);
  auto* eop_apply = eop_cmd->add_subcommand("apply", "apply an operator file");
  std::string ea_op, ea_set = "evens", ea_out = "eop_apply.csv";
  std::uint64_t ea_bound = 64;
  eop_apply->add_option("--op", ea_op, "operator file")->required();
  eop_apply->add_option("--x", ea_set, "input set spec");
  eop_apply->add_option("--bound", ea_bound, "membership bound");
  eop_apply->add_option("--out", ea_out, "output CSV");
  auto* eop_compose = eop_cmd->add_subcommand("compose", "compose two operator files");
  std::string ec_v, ec_w, ec_out = "eop_compose.txt";
  std::uint64_t ec_bound = 1u << 16;
  eop_compose->add_option("--v", ec_v, "outer operator file")->required();
  eop_compose->add_option("--w", ec_w, "inner operator file")->required();
  eop_compose->add_option("--bound", ec_bound, "axiom budget");
  eop_compose->add_option("--out", ec_out, "output operator file");

  // encode-r / decode-r
  auto* encode_cmd = app.add_subcommand("encode-r", "prefix of the coded set R(A)");
  std::string enc_a = "0", enc_out = "encode_r.csv", enc_config;
  std::uint64_t enc_bound = 1u << 10;
  encode_cmd->add_option("--a", enc_a, "members of A, comma-separated");
  encode_cmd->add_option("--bound", enc_bound, "prefix bound");
  encode_cmd->add_option("--out", enc_out, "output CSV");
  encode_cmd->add_option("--config", enc_config, "key=value config file");

  auto* decode_cmd = app.add_subcommand("decode-r", "decode A(n) from a listing file");
  std::string dec_listing, dec_out;
  std::uint64_t dec_n = 0, dec_budget = kDefaultListingBudget;
  decode_cmd->add_option("--listing", dec_listing, "CSV of m,bit pairs")->required();
  decode_cmd->add_option("--n", dec_n, "index to decode");
  decode_cmd->add_option("--budget", dec_budget, "pair consumption budget");
  decode_cmd->add_option("--out", dec_out, "optional output CSV");

  std::vector<std::string> args;
  try {
    args = apply_config(raw_args);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (density_cmd->parsed()) {
      std::vector<std::uint64_t> points = parse_list(d_points);
      if (points.empty())
        throw CLI::ValidationError("--points", "need at least one point");
      std::uint64_t bound = points.back() + 1;
      NatSetPrefix set = parse_set(d_set, bound);
      DensityProfile profile = density_profile(set, points, d_window);
      std::ofstream out = open_out(d_out);
      profile.write_csv(out);
      std::cout << "density: final rho_" << points.back() << " = "
                << float_cell(profile.samples.back().second) << "\n";
      return 0;
    }
    if (delta_cmd->parsed()) {
      Delta02Result result = delta02_density_set(parse_q(q_spec), delta_steps);
      std::ofstream out = open_out(delta_out);
      out << "n,s_n,rho_num,rho_den,q_num,q_den\n";
      RationalSeq q = parse_q(q_spec);
      Rational worst(0);
      for (std::size_t i = 0; i < result.s.size(); ++i) {
        Rational target = q(i + 1);
        Rational gap = result.rho_at_s[i] - target;
        if (gap < 0) gap = -gap;
        if (i > 0) worst = std::max(worst, gap * Rational(i + 1));
        out << (i + 1) << ',' << result.s[i] << ','
            << numerator(result.rho_at_s[i]).str() << ','
            << denominator(result.rho_at_s[i]).str() << ','
            << numerator(target).str() << ',' << denominator(target).str()
            << '\n';
      }
      std::cout << "build-delta02: final |rho - q| = "
                << float_cell(result.rho_at_s.back() - q(result.s.size()) < 0
                                  ? q(result.s.size()) - result.rho_at_s.back()
                                  : result.rho_at_s.back() - q(result.s.size()))
                << ", max n|rho-q| = " << float_cell(worst) << "\n";
      return 0;
    }
    if (run_cmd->parsed()) {
      for (const std::string& positional : run_positionals) {
        auto eq = positional.find('=');
        if (eq == std::string::npos || positional.substr(0, eq) != "construction")
          throw CLI::ValidationError("run", "expected construction=NAME");
        run_opt.construction = positional.substr(eq + 1);
      }
      if (run_opt.construction.empty())
        throw CLI::ValidationError("run", "no construction selected");
      return do_run(run_opt);
    }
    if (coarse_cmd->parsed()) {
      NatSetPrefix c = parse_set(coarse_a, coarse_s + 1);
      int bit = decode_from_coarse(c, static_cast<std::uint32_t>(coarse_n), coarse_s);
      if (!coarse_out.empty()) {
        std::ofstream out = open_out(coarse_out);
        out << "n,bit\n" << coarse_n << ',' << bit << '\n';
      }
      std::cout << "decode-coarse: A(" << coarse_n << ") = " << bit << "\n";
      return 0;
    }
    if (eop_apply->parsed()) {
      std::ifstream op_in(ea_op);
      if (!op_in) throw CLI::ValidationError("--op", "cannot open " + ea_op);
      eop::EnumOperator w = eop::EnumOperator::read(op_in);
      NatSetPrefix x = parse_set(ea_set, ea_bound);
      std::vector<std::uint64_t> result = eop::apply(
          w, [&x](std::uint64_t m) { return m < x.bound() && x.contains(m); });
      std::ofstream out = open_out(ea_out);
      out << "n\n";
      for (std::uint64_t n : result) out << n << '\n';
      std::cout << "eop apply: " << result.size() << " outputs\n";
      return 0;
    }
    if (eop_compose->parsed()) {
      std::ifstream v_in(ec_v), w_in(ec_w);
      if (!v_in) throw CLI::ValidationError("--v", "cannot open " + ec_v);
      if (!w_in) throw CLI::ValidationError("--w", "cannot open " + ec_w);
      eop::ComposeResult result = eop::compose(eop::EnumOperator::read(v_in),
                                               eop::EnumOperator::read(w_in),
                                               ec_bound);
      std::ofstream out = open_out(ec_out);
      result.op.write(out);
      std::cout << "eop compose: " << result.op.size() << " axioms"
                << (result.truncated ? " (truncated)" : "") << "\n";
      return 0;
    }
    if (encode_cmd->parsed()) {
      std::uint64_t mask = 0;
      for (std::uint64_t k : parse_list(enc_a)) mask |= std::uint64_t{1} << k;
      NatSetPrefix prefix = encode_R_mask(mask, enc_bound);
      std::ofstream out = open_out(enc_out);
      out << "m\n";
      for (std::uint64_t m = 0; m < prefix.bound(); ++m)
        if (prefix.contains(m)) out << m << '\n';
      std::cout << "encode-r: rho_" << enc_bound - 1 << " = "
                << float_cell(prefix_density(prefix, enc_bound - 1)) << "\n";
      return 0;
    }
    if (decode_cmd->parsed()) {
      std::ifstream in(dec_listing);
      if (!in) throw CLI::ValidationError("--listing", "cannot open " + dec_listing);
      std::vector<ListingPair> pairs;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'm') continue;  // optional header
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        pairs.push_back({std::stoull(line.substr(0, comma)),
                         std::stoi(line.substr(comma + 1))});
      }
      ListingReader reader(vector_listing(std::move(pairs)));
      DecodeOutcome outcome =
          decode_R(reader, static_cast<std::uint32_t>(dec_n), dec_budget);
      if (!dec_out.empty()) {
        std::ofstream out = open_out(dec_out);
        out << "n,outcome\n"
            << dec_n << ','
            << (outcome.budget_exceeded() ? std::string("budget-exceeded")
                                          : std::to_string(*outcome.bit))
            << '\n';
      }
      if (outcome.budget_exceeded())
        std::cout << "decode-r: budget-exceeded after " << outcome.consumed
                  << " pairs\n";
      else
        std::cout << "decode-r: A(" << dec_n << ") = " << *outcome.bit << "\n";
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace cli
}  // namespace genlab
