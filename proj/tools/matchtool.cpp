// matchtool: command-line front end for the matching library.
//
// Exit codes: 0 success / verified, 1 verification failed (including a
// diverging divorce simulation), 2 malformed input, 3 precondition violated,
// 4 brute-force limit exceeded, 70 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matching/divorces.hpp"
#include "matching/engine.hpp"
#include "matching/generators.hpp"
#include "matching/io.hpp"
#include "matching/manipulation.hpp"
#include "matching/oracle.hpp"
#include "matching/types.hpp"

namespace {

using namespace matching;

// Open failures map to exit code 2 like any other bad input.
class FileError : public Error {
 public:
  using Error::Error;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot open " + path + " for writing");
  out << text;
}

Instance load_instance(const std::string& path) {
  return parse_instance_string(read_all(path));
}

Matching load_matching(const std::string& path, const Instance& inst) {
  return parse_matching_string(read_all(path), inst.n_women, inst.n_men);
}

std::string comment_block(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += "# " + line + "\n";
  return out;
}

const char* mode_name(ManipulationMode m) {
  switch (m) {
    case ManipulationMode::Flat: return "flat";
    case ManipulationMode::General: return "general";
    case ManipulationMode::Partial: return "partial";
    case ManipulationMode::Naive: return "naive";
    case ManipulationMode::Auto: break;
  }
  return "auto";
}

// --- divorce strategy text format ------------------------------------------
// One line per woman with a non-default rule, '#' comments allowed:
//   w <i> divorce-if-in: <man ids>
//   w <i> script: <season>:<man id> ...
// Unmentioned women never divorce.

DivorceStrategySet parse_strategies(const std::string& text, std::size_t n_women,
                                    std::size_t n_men) {
  DivorceStrategySet rules(n_women, DivorceRule::never());
  std::vector<std::uint8_t> seen(n_women, 0);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok != "w") throw ParseError(lineno, "expected 'w <id> <rule>:'");
    std::size_t w = 0;
    if (!(ls >> w) || w >= n_women)
      throw ParseError(lineno, "bad woman id in strategy line");
    if (seen[w]) throw ParseError(lineno, "duplicate rule for woman " + std::to_string(w));
    seen[w] = 1;
    std::string kind;
    if (!(ls >> kind)) throw ParseError(lineno, "missing rule kind");
    if (kind == "divorce-if-in:") {
      std::vector<ManId> men;
      std::size_t m = 0;
      while (ls >> m) {
        if (m >= n_men) throw ParseError(lineno, "man id out of range");
        men.push_back(ManId(m));
      }
      if (!ls.eof()) throw ParseError(lineno, "bad man id");
      rules[w] = DivorceRule::partner_in(std::move(men));
    } else if (kind == "script:") {
      std::vector<DivorceRule::ScriptEntry> entries;
      std::string pair;
      while (ls >> pair) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos)
          throw ParseError(lineno, "script entries look like <season>:<man id>");
        try {
          const long long season = std::stoll(pair.substr(0, colon));
          const long long m = std::stoll(pair.substr(colon + 1));
          if (season < 1 || m < 0 || static_cast<std::size_t>(m) >= n_men)
            throw ParseError(lineno, "script entry out of range");
          entries.push_back({season, ManId(static_cast<std::size_t>(m))});
        } catch (const std::invalid_argument&) {
          throw ParseError(lineno, "bad number in script entry");
        } catch (const std::out_of_range&) {
          throw ParseError(lineno, "number out of range in script entry");
        }
      }
      rules[w] = DivorceRule::scripted(std::move(entries));
    } else {
      throw ParseError(lineno, "unknown rule kind '" + kind + "'");
    }
  }
  return rules;
}

std::string serialize_strategies(const DivorceStrategySet& rules) {
  std::string out;
  for (std::size_t w = 0; w < rules.size(); ++w) {
    const DivorceRule& r = rules[w];
    if (r.kind == DivorceRule::Kind::Never) continue;
    out += "w " + std::to_string(w);
    if (r.kind == DivorceRule::Kind::PartnerIn) {
      out += " divorce-if-in:";
      for (ManId m : r.partner_set) out += " " + std::to_string(m.value());
    } else {
      out += " script:";
      for (const auto& e : r.script)
        out += " " + std::to_string(e.season) + ":" + std::to_string(e.partner.value());
    }
    out += "\n";
  }
  return out;
}

// --- subcommands -------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string proposing = "men";
  bool sequential = false;
  bool trace = false;
};

int cmd_solve(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  const Side side = a.proposing == "women" ? Side::Women : Side::Men;
  if (a.sequential) {
    if (a.trace)
      throw PreconditionError("--trace is only available for the night-based run");
    std::cout << serialize_matching(run_sequential(inst, side));
    return 0;
  }
  RunOptions opts;
  opts.keep_trace = a.trace;
  const RunResult res = run(inst, side, opts);
  std::cout << serialize_matching(res.matching);
  if (a.trace) std::cout << comment_block(trace_to_string(res.trace));
  return 0;
}

struct ManipulateArgs {
  std::string instance;
  std::string matching;
  std::string mode = "auto";
  bool naive = false;
  bool validate = false;
};

int cmd_manipulate(const ManipulateArgs& a) {
  const Instance inst = load_instance(a.instance);
  const Matching mu = load_matching(a.matching, inst);

  ManipulationMode mode = ManipulationMode::Auto;
  if (a.naive)
    mode = ManipulationMode::Naive;
  else if (a.mode == "flat")
    mode = ManipulationMode::Flat;
  else if (a.mode == "general")
    mode = ManipulationMode::General;
  else if (a.mode == "partial")
    mode = ManipulationMode::Partial;
  const ManipulationMode resolved =
      mode == ManipulationMode::Auto ? pick_mode(inst, mu) : mode;

  ManipulateOptions opts;
  opts.validate = a.validate;
  const ManipulationResult res = manipulate(inst, mu, resolved, opts);

  std::cout << serialize_women_profile(res.prefs_w);
  const ManipulationStats& s = res.stats;
  std::cout << "# n_b=" << s.n_b << " combined=" << s.combined_size
            << " disjoint=" << (s.disjoint ? "true" : "false")
            << " mode=" << mode_name(resolved)
            << " cheap_iters=" << s.cheap_iterations
            << " expensive_iters=" << s.expensive_iterations
            << " helper_iters=" << s.helper_iterations
            << " build_steps=" << s.build_steps << "\n";
  return 0;
}

struct VerifyArgs {
  std::string instance;
  std::string matching;
  std::string women_profile;  // optional override
  bool unique = false;
  std::uint64_t oracle_limit = kDefaultMatchingLimit;
};

int cmd_verify(const VerifyArgs& a) {
  Instance inst = load_instance(a.instance);
  if (!a.women_profile.empty())
    inst.prefs_w =
        parse_women_profile_string(read_all(a.women_profile), inst.n_women, inst.n_men);
  const Matching mu = load_matching(a.matching, inst);

  const StabilityReport rep = find_blocking_pairs(inst, mu);
  std::cout << "stable: " << (rep.stable() ? "yes" : "no") << "\n";
  for (const auto& [w, m] : rep.irrational_w)
    std::cout << "irrational: w" << w.value() << " does not list m" << m.value() << "\n";
  for (const auto& [w, m] : rep.irrational_m)
    std::cout << "irrational: m" << m.value() << " does not list w" << w.value() << "\n";
  for (const auto& [w, m] : rep.blocking)
    std::cout << "blocking: (w" << w.value() << ", m" << m.value() << ")\n";

  bool ok = rep.stable();
  if (a.unique && ok) {
    const bool unique = is_unique_stable(inst, mu, a.oracle_limit);
    std::cout << "unique: " << (unique ? "yes" : "no") << "\n";
    if (!unique) {
      const auto all = enumerate_stable(inst, a.oracle_limit);
      std::cout << "stable matchings: " << all.size() << "\n";
      for (const auto& s : all) std::cout << "\n" << serialize_matching(s);
    }
    ok = ok && unique;
  }
  return ok ? 0 : 1;
}

struct GenTightArgs {
  std::int64_t balanced = -1;
  std::int64_t divorce = -1;
  bool partial = false;
  std::vector<std::size_t> sizes;
  std::size_t n_women = 0, n_men = 0, n_matched = 0;
  std::uint64_t seed = 1;
  std::string out_instance = "-";
  std::string out_matching;
  std::string out_witness;
};

int cmd_gen_tight(const GenTightArgs& a) {
  const int picked = (a.balanced >= 0) + (a.divorce >= 0) + (a.partial ? 1 : 0);
  if (picked != 1)
    throw PreconditionError("pick exactly one of --balanced, --divorce, --partial");

  Instance inst;
  Matching mu;
  WomenProfile witness;
  bool have_witness = false;

  if (a.balanced >= 0) {
    GeneratedInstance g = gen_tight_balanced(static_cast<std::size_t>(a.balanced), a.sizes);
    inst = std::move(g.instance);
    mu = std::move(g.mu);
    witness = std::move(g.witness);
    have_witness = true;
  } else if (a.divorce >= 0) {
    DivorceTightInstance g = gen_divorce_tight(static_cast<std::size_t>(a.divorce));
    inst = std::move(g.instance);
    mu = std::move(g.mu);
  } else {
    PartialTightParams p;
    p.n_women = a.n_women;
    p.n_men = a.n_men;
    p.n_matched = a.n_matched;
    p.n_b = a.sizes.size();
    p.sizes = a.sizes;
    // Outsider blacklists: each entry banned with probability 1/2.
    std::mt19937_64 rng(a.seed);
    for (std::size_t i = p.n_matched; i < p.n_women; ++i) {
      std::vector<ManId> b;
      for (std::size_t m = 0; m < p.n_men; ++m)
        if (rng() & 1u) b.push_back(ManId(m));
      p.b_w.push_back(std::move(b));
    }
    for (std::size_t i = p.n_matched; i < p.n_men; ++i) {
      std::vector<WomanId> b;
      for (std::size_t w = 0; w < p.n_women; ++w)
        if (rng() & 1u) b.push_back(WomanId(w));
      p.b_m.push_back(std::move(b));
    }
    GeneratedInstance g = gen_tight_partial(p);
    inst = std::move(g.instance);
    mu = std::move(g.mu);
    witness = std::move(g.witness);
    have_witness = true;
  }

  if (!a.out_instance.empty()) write_all(a.out_instance, serialize_instance(inst));
  if (!a.out_matching.empty()) write_all(a.out_matching, serialize_matching(mu));
  if (!a.out_witness.empty()) {
    if (!have_witness)
      throw PreconditionError("--divorce produces no witness profile");
    write_all(a.out_witness, serialize_women_profile(witness));
  }
  return 0;
}

struct EnumerateArgs {
  std::string instance;
  std::uint64_t limit = kDefaultMatchingLimit;
};

int cmd_enumerate(const EnumerateArgs& a) {
  const Instance inst = load_instance(a.instance);
  const auto all = enumerate_stable(inst, a.limit);
  std::cout << "# " << all.size() << " stable matching"
            << (all.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i > 0) std::cout << "\n";
    std::cout << serialize_matching(all[i]);
  }
  return 0;
}

struct SimulateArgs {
  std::string instance;
  std::string strategies;
  std::string women_profile;
  bool trace = false;
};

int cmd_simulate_divorces(const SimulateArgs& a) {
  Instance inst = load_instance(a.instance);
  if (!a.women_profile.empty()) {
    inst.prefs_w = parse_women_profile_string(read_all(a.women_profile),
                                              inst.n_women, inst.n_men);
  }
  DivorceStrategySet rules(inst.n_women, DivorceRule::never());
  if (!a.strategies.empty())
    rules = parse_strategies(read_all(a.strategies), inst.n_women, inst.n_men);

  const DivorceSimResult res = simulate_with_divorces(inst, rules);
  std::cout << serialize_matching(res.matching);
  std::cout << "# seasons=" << res.seasons.size()
            << " divorces=" << res.seasons.size() - 1 << "\n";
  for (const auto& s : res.seasons) {
    if (s.divorcing_woman)
      std::cout << "# season " << s.season << ": w" << s.divorcing_woman->value()
                << " divorced m" << s.divorced_man->value() << "\n";
    if (a.trace) std::cout << comment_block(trace_to_string(s.trace));
  }
  return 0;
}

struct DivorceManipulateArgs {
  std::string instance;
  std::string matching;
  std::string out_profile = "-";
  std::string out_strategies = "-";
};

int cmd_divorce_manipulate(const DivorceManipulateArgs& a) {
  const Instance inst = load_instance(a.instance);
  const Matching mu = load_matching(a.matching, inst);
  const OneDivorceResult res = one_divorce_strategy(inst, mu);
  write_all(a.out_profile, serialize_women_profile(res.prefs_w));
  write_all(a.out_strategies, serialize_strategies(res.strategies));
  std::cout << "# divorces=" << res.divorces << "\n";
  return 0;
}

struct BenchArgs {
  std::vector<std::size_t> ns;
  std::size_t repeat = 10;
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<std::size_t> ns = a.ns;
  if (ns.empty()) ns = {16, 32, 64};
  std::cout << "n,seed,cheap_iters,expensive_iters,nanos\n";
  for (std::size_t n : ns) {
    for (std::size_t r = 0; r < a.repeat; ++r) {
      const std::uint64_t seed = a.seed + r;
      const RandomInstance ri = gen_random(n, n, seed, false);
      const auto start = std::chrono::steady_clock::now();
      const ManipulationResult res = manipulate_general(ri.instance, ri.mu);
      const auto stop = std::chrono::steady_clock::now();
      const auto nanos =
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
      std::cout << n << "," << seed << "," << res.stats.cheap_iterations << ","
                << res.stats.expensive_iterations << "," << nanos << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable matching runs, forcing-profile synthesis, and divorce simulation"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "run the serenading process");
  solve->add_option("instance", solve_args.instance, "instance file (- for stdin)")
      ->required();
  solve->add_option("--proposing", solve_args.proposing, "proposing side")
      ->check(CLI::IsMember({"men", "women"}));
  solve->add_flag("--sequential", solve_args.sequential,
                  "one proposal at a time instead of nights");
  solve->add_flag("--trace", solve_args.trace, "append the night log as comments");

  ManipulateArgs man_args;
  CLI::App* man = app.add_subcommand("manipulate", "synthesize a forcing W-profile");
  man->add_option("instance", man_args.instance)->required();
  man->add_option("matching", man_args.matching, "target matching file")->required();
  man->add_option("--mode", man_args.mode)
      ->check(CLI::IsMember({"auto", "flat", "general", "partial"}));
  man->add_flag("--naive", man_args.naive, "single-entry lists baseline");
  man->add_flag("--validate", man_args.validate, "enable internal shape checks");

  VerifyArgs ver_args;
  CLI::App* ver = app.add_subcommand("verify", "check stability (and uniqueness)");
  ver->add_option("instance", ver_args.instance)->required();
  ver->add_option("matching", ver_args.matching)->required();
  ver->add_option("--women-profile", ver_args.women_profile,
                  "replace the instance's women's lists (- for stdin)");
  ver->add_flag("--unique", ver_args.unique, "also require uniqueness");
  ver->add_option("--oracle-limit", ver_args.oracle_limit,
                  "enumeration search-space cap");

  GenTightArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-tight", "emit a bound-tight instance family");
  gen->add_option("--balanced", gen_args.balanced, "balanced family of this size");
  gen->add_option("--divorce", gen_args.divorce, "single-cycle divorce family");
  gen->add_flag("--partial", gen_args.partial, "partial-matching family");
  gen->add_option("--sizes", gen_args.sizes, "blacklist sizes l_i");
  gen->add_option("--n-women", gen_args.n_women);
  gen->add_option("--n-men", gen_args.n_men);
  gen->add_option("--n-matched", gen_args.n_matched);
  gen->add_option("--seed", gen_args.seed, "seed for the partial family's outsider lists");
  gen->add_option("--out-instance", gen_args.out_instance, "default -");
  gen->add_option("--out-matching", gen_args.out_matching);
  gen->add_option("--out-witness", gen_args.out_witness);

  EnumerateArgs enum_args;
  CLI::App* enu = app.add_subcommand("enumerate", "list every stable matching");
  enu->add_option("instance", enum_args.instance)->required();
  enu->add_option("--limit", enum_args.limit, "search-space cap");

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate-divorces", "season-structured run");
  sim->add_option("instance", sim_args.instance)->required();
  sim->add_option("--strategies", sim_args.strategies, "divorce rule file");
  sim->add_option("--women-profile", sim_args.women_profile,
                  "replace the instance's women lists before simulating");
  sim->add_flag("--trace", sim_args.trace, "append per-season night logs");

  DivorceManipulateArgs dm_args;
  CLI::App* dm = app.add_subcommand("divorce-manipulate",
                                    "force a matching with scripted divorces");
  dm->add_option("instance", dm_args.instance)->required();
  dm->add_option("matching", dm_args.matching)->required();
  dm->add_option("--out-profile", dm_args.out_profile, "default -");
  dm->add_option("--out-strategies", dm_args.out_strategies, "default -");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "synthesis iteration counts as CSV");
  bench->add_option("--n", bench_args.ns, "market sizes (repeatable)");
  bench->add_option("--repeat", bench_args.repeat, "runs per size");
  bench->add_option("--seed", bench_args.seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(solve)) return cmd_solve(solve_args);
    if (app.got_subcommand(man)) return cmd_manipulate(man_args);
    if (app.got_subcommand(ver)) return cmd_verify(ver_args);
    if (app.got_subcommand(gen)) return cmd_gen_tight(gen_args);
    if (app.got_subcommand(enu)) return cmd_enumerate(enum_args);
    if (app.got_subcommand(sim)) return cmd_simulate_divorces(sim_args);
    if (app.got_subcommand(dm)) return cmd_divorce_manipulate(dm_args);
    if (app.got_subcommand(bench)) return cmd_bench(bench_args);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DivorceCycleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const MalformedStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
