// Copyright 2026 The Blotto Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the blotto library.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blotto/analysis.hpp"
#include "blotto/constructors.hpp"
#include "blotto/learning.hpp"
#include "json.hpp"

namespace {

using blotto::Allocation;
using blotto::GameSpec;
using blotto::MixedStrategy;
using blotto::Rational;
using Json = nlohmann::ordered_json;

enum class Format { kText, kJson, kCsv };

struct Common {
  int n = 0;
  int k = 0;
  std::string alpha = "0";
  bool allow_outside = false;
  int threads = 0;
  std::string format = "text";
  std::string invocation;

  GameSpec spec() const { return spec_with(blotto::parse_rational(alpha)); }
  GameSpec spec_with(Rational a) const {
    return GameSpec(n, k, std::move(a),
                    allow_outside ? blotto::AlphaRange::kOverride : blotto::AlphaRange::kStandard);
  }
  Format fmt() const {
    if (format == "json") return Format::kJson;
    if (format == "csv") return Format::kCsv;
    return Format::kText;
  }
  std::string provenance() const { return "blotto " BLOTTO_VERSION " : " + invocation; }
};

Json rat(const Rational& q) { return blotto::to_string(q); }

Json big(const blotto::BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max()) return v.convert_to<std::int64_t>();
  return v.str();
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// Tables live under "rows"; csv prints only the table when one exists.
void emit(const Json& result, Format fmt, std::ostream& os) {
  if (fmt == Format::kJson) {
    os << result.dump(2) << "\n";
    return;
  }
  const bool table = result.contains("rows") && result["rows"].is_array();
  if (fmt == Format::kCsv) {
    if (table) {
      const auto& rows = result["rows"];
      if (rows.empty()) return;
      bool first = true;
      for (const auto& [key, _] : rows.front().items()) {
        os << (first ? "" : ",") << key;
        first = false;
      }
      os << "\n";
      for (const auto& row : rows) {
        first = true;
        for (const auto& [_, v] : row.items()) {
          os << (first ? "" : ",") << csv_cell(v);
          first = false;
        }
        os << "\n";
      }
      return;
    }
    os << "key,value\n";
    for (const auto& [key, v] : result.items()) os << key << "," << csv_cell(v) << "\n";
    return;
  }
  for (const auto& [key, v] : result.items()) {
    if (key == "rows") continue;
    os << key << ": " << scalar_text(v) << "\n";
  }
  if (table) {
    for (const auto& row : result["rows"]) {
      bool first = true;
      for (const auto& [key, v] : row.items()) {
        os << (first ? "" : "  ") << key << "=" << scalar_text(v);
        first = false;
      }
      os << "\n";
    }
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw blotto::PreconditionError("cannot write " + path);
  return out;
}

MixedStrategy build_family(const std::string& family, const GameSpec& spec,
                           const std::string& s_text) {
  using namespace blotto;
  if (family == "canonical") return canonical_pair_equilibrium(spec);
  if (family == "pairs") return pairwise_fixed_sum_equilibrium(spec);
  if (family == "independent") return independent_pairs_strategy(spec);
  if (family == "parity-odd") return parity_strategy(spec, Parity::kOdd);
  if (family == "parity-even") return parity_strategy(spec, Parity::kEven);
  if (family == "solver") return uniform_marginal_solver(spec);
  if (family == "uniform") return uniform_marginal_strategy(spec);
  if (family == "witness") {
    if (s_text.empty()) throw PreconditionError("--family witness needs --s");
    return good_strategy_witness(Allocation::parse(s_text, spec), spec);
  }
  throw PreconditionError("unknown family '" + family + "'");
}

MixedStrategy load_strategy(const std::string& path, const GameSpec& spec) {
  std::ifstream in(path);
  if (!in) throw blotto::PreconditionError("cannot open " + path);
  auto parsed = blotto::read_mixed_strategy(in);
  if (parsed.spec.budget() != spec.budget() || parsed.spec.battlefields() != spec.battlefields()) {
    throw blotto::PreconditionError(path + " does not match the game");
  }
  return std::move(parsed.strategy);
}

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(blotto::parse_rational(cell));
  if (out.empty()) throw blotto::PreconditionError("empty alpha grid");
  return out;
}

Json report_json(const blotto::EquilibriumReport& r) {
  return Json{{"is_equilibrium", r.is_equilibrium},
              {"payoff_a", rat(r.payoff_a)},
              {"payoff_b", rat(r.payoff_b)},
              {"best_response_a", rat(r.best_response_a)},
              {"best_response_b", rat(r.best_response_b)},
              {"gap_a", rat(r.gap_a)},
              {"gap_b", rat(r.gap_b)},
              {"deviation_a", r.deviation_a.str()},
              {"deviation_b", r.deviation_b.str()}};
}

struct FpArgs {
  std::int64_t rounds = 0;
  std::string mode = "two-sided";
  std::uint64_t seed = 0;
  bool random_ties = false;
  std::string init;
  std::string checkpoint;
  std::int64_t checkpoint_every = 0;
  std::string resume;
  int report_top = 20;
  std::string report;
  std::string trace;
  std::int64_t trace_every = 0;
};

Json run_fp(const Common& c, const FpArgs& a) {
  using namespace blotto;
  std::optional<FictitiousPlay> fp;
  if (!a.resume.empty()) {
    FPState state = load_checkpoint(a.resume);
    if ((c.n != 0 && c.n != state.spec.budget()) || (c.k != 0 && c.k != state.spec.battlefields())) {
      throw PreconditionError("--n/--k disagree with the resumed checkpoint");
    }
    fp.emplace(std::move(state));
  } else {
    FpOptions opts;
    if (a.mode == "two-sided") {
      opts.mode = FpMode::kTwoSided;
    } else if (a.mode == "self-play") {
      opts.mode = FpMode::kSelfPlay;
    } else {
      throw PreconditionError("--mode must be two-sided or self-play");
    }
    opts.tie_break = a.random_ties ? TieBreak::kRandom : TieBreak::kLexicographic;
    opts.seed = a.seed;
    if (!a.init.empty()) opts.init = parse_bids(a.init);
    fp.emplace(c.spec(), opts);
  }
  fp->set_provenance(c.provenance());
  if (a.rounds < fp->state().round) {
    throw PreconditionError("--rounds " + std::to_string(a.rounds) + " is behind the checkpoint");
  }
  if (a.rounds < 1) throw PreconditionError("--rounds must be positive");

  std::optional<std::ofstream> trace;
  if (!a.trace.empty()) {
    if (!fp->state().spec.divisible()) throw PreconditionError("--trace needs K | N");
    trace.emplace(open_output(a.trace));
    write_trace_csv_header(*trace, c.provenance());
  }
  const std::int64_t trace_every = a.trace_every > 0 ? a.trace_every : std::max<std::int64_t>(1, a.rounds / 100);
  const std::int64_t progress_every = std::max<std::int64_t>(1, a.rounds / 20);
  while (fp->state().round < a.rounds) {
    fp->step();
    const std::int64_t r = fp->state().round;
    if (trace && (r % trace_every == 0 || r == a.rounds)) write_trace_csv_row(*trace, trace_point(*fp));
    if (!a.checkpoint.empty() && a.checkpoint_every > 0 && r % a.checkpoint_every == 0) {
      save_checkpoint(fp->snapshot(), a.checkpoint);
    }
    if (r % progress_every == 0) std::cerr << "fp: round " << r << "/" << a.rounds << "\n";
  }
  if (!a.checkpoint.empty()) save_checkpoint(fp->snapshot(), a.checkpoint);

  const FPState state = fp->snapshot();
  const auto report = rank_report(state, a.report_top);
  if (!a.report.empty()) {
    auto out = open_output(a.report);
    write_rank_report_csv(out, report, c.provenance());
  }
  Json result{{"rounds", state.round},
              {"mode", mode_name(state.options.mode)},
              {"support_size", report.support_size}};
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"rank", row.rank},
                    {"partition", row.partition.str('-')},
                    {"probability", rat(row.probability)},
                    {"first_round", row.first_round}});
  }
  result["rows"] = rows;
  return result;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact Colonel Blotto laboratory", "blotto"};
  app.set_version_flag("--version", BLOTTO_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  for (int i = 0; i < argc; ++i) c.invocation += (i ? " " : "") + std::string(argv[i]);
  c.threads = blotto::default_thread_count();
  app.add_option("--threads", c.threads, "worker thread cap (default $" + std::string(blotto::kThreadsEnv) + " or hardware)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));

  auto game_opts = [&](CLI::App* sub, bool required = true) {
    auto* n = sub->add_option("--n", c.n, "budget N")->check(CLI::NonNegativeNumber);
    auto* k = sub->add_option("--k", c.k, "battlefields K")->check(CLI::PositiveNumber);
    if (required) {
      n->required();
      k->required();
    }
    sub->add_option("--alpha", c.alpha, "tie value as p/q, integer or decimal");
    sub->add_flag("--allow-alpha-outside", c.allow_outside, "accept alpha outside [0, 2]");
  };

  Json result;

  auto* count = app.add_subcommand("count", "count ordered allocations and partitions");
  game_opts(count);
  count->callback([&] {
    const auto counts = blotto::count_strategies(c.spec());
    result = {{"ordered", big(counts.ordered)}, {"partitions", big(counts.unordered)}};
  });

  std::string s_text;
  std::string t_text;
  auto* pay = app.add_subcommand("payoff", "payoff of s against t");
  game_opts(pay);
  pay->add_option("--s", s_text, "row allocation, comma separated")->required();
  pay->add_option("--t", t_text, "column allocation")->required();
  pay->callback([&] {
    const auto spec = c.spec();
    const auto s = Allocation::parse(s_text, spec);
    const auto t = Allocation::parse(t_text, spec);
    const auto o = blotto::outcome(s, t, spec);
    result = {{"payoff_s", rat(blotto::payoff(s, t, spec))},
              {"payoff_t", rat(blotto::payoff(t, s, spec))},
              {"wins", o.wins},
              {"ties", o.ties},
              {"losses", o.losses}};
  });

  std::string family = "canonical";
  std::string family_b;
  std::string out_path;
  std::string a_file;
  std::string b_file;
  std::uint64_t cap = blotto::kDefaultEnumerationCap;
  const auto families = CLI::IsMember(
      {"canonical", "pairs", "independent", "parity-odd", "parity-even", "witness", "solver", "uniform"});

  auto* construct = app.add_subcommand("construct", "build a mixed strategy");
  game_opts(construct);
  construct->add_option("--family", family, "construction")->check(families);
  construct->add_option("--s", s_text, "target allocation for --family witness");
  construct->add_option("--out", out_path, "write to file instead of stdout");
  construct->add_option("--cap", cap, "maximum atoms to write");
  construct->callback([&] {
    const auto spec = c.spec();
    const auto sigma = build_family(family, spec, s_text);
    if (out_path.empty()) {
      blotto::write_mixed_strategy(std::cout, sigma, spec, "", cap);
    } else {
      auto out = open_output(out_path);
      blotto::write_mixed_strategy(out, sigma, spec, c.provenance(), cap);
      std::cerr << "construct: " << sigma.support_size() << " atoms -> " << out_path << "\n";
    }
  });

  auto* verify = app.add_subcommand("verify", "verify a strategy profile is an equilibrium");
  game_opts(verify);
  verify->add_option("--family", family, "construction for both players")->check(families);
  verify->add_option("--family-b", family_b, "construction for player b")->check(families);
  verify->add_option("--s", s_text, "target allocation for --family witness");
  verify->add_option("--a-file", a_file, "player a strategy file");
  verify->add_option("--b-file", b_file, "player b strategy file");
  verify->callback([&] {
    const auto spec = c.spec();
    const auto a = a_file.empty() ? build_family(family, spec, s_text) : load_strategy(a_file, spec);
    const auto b = !b_file.empty()     ? load_strategy(b_file, spec)
                   : !family_b.empty() ? build_family(family_b, spec, s_text)
                                       : a;
    result = report_json(blotto::verify_equilibrium(a, b, spec));
  });

  bool constant_sum = false;
  auto* classify = app.add_subcommand("classify", "classify an allocation as good or never good");
  game_opts(classify);
  classify->add_option("--s", s_text, "allocation")->required();
  classify->add_flag("--constant-sum", constant_sum, "use the alpha = 1 characterization");
  classify->callback([&] {
    const auto spec = c.spec();
    const auto s = Allocation::parse(s_text, spec);
    const auto v = constant_sum ? blotto::classify_constant_sum(s, spec) : blotto::classify(s, spec);
    result = {{"verdict", blotto::verdict_name(v.verdict)},
              {"active_battlefields", v.support_size},
              {"k_star", v.threshold ? rat(*v.threshold) : Json(nullptr)},
              {"reason", v.reason}};
    if (v.witness) {
      result["witness_family"] = v.witness->family();
      result["witness_support"] = v.witness->support_size();
    }
  });

  std::string target_text;
  auto* dominate = app.add_subcommand("dominate", "does --s weakly dominate --target");
  game_opts(dominate);
  dominate->add_option("--s", s_text, "candidate allocation")->required();
  dominate->add_option("--target", target_text, "dominated candidate")->required();
  dominate->callback([&] {
    const auto spec = c.spec();
    const auto r = blotto::weakly_dominates(Allocation::parse(s_text, spec),
                                            Allocation::parse(target_text, spec), spec);
    result = {{"dominates", r.dominates},
              {"min_gap", rat(r.min_gap)},
              {"max_gap", rat(r.max_gap)},
              {"min_opponent", r.min_opponent.str()},
              {"max_opponent", r.max_opponent.str()}};
  });

  std::string grid = "0,1/2,1,3/2,2";
  auto* scan = app.add_subcommand("scan-alpha", "equilibrium check of uniform and parity profiles");
  game_opts(scan);
  scan->add_option("--grid", grid, "comma separated alpha values");
  scan->callback([&] {
    const auto values = parse_grid(grid);
    for (const auto& a : values) (void)c.spec_with(a);  // range check under the same rules
    const auto rows = blotto::alpha_robustness_scan(c.spec_with(0), values, c.threads);
    Json table = Json::array();
    for (const auto& r : rows) {
      table.push_back({{"alpha", rat(r.alpha)},
                       {"profile", r.profile},
                       {"is_equilibrium", r.report.is_equilibrium},
                       {"payoff_a", rat(r.report.payoff_a)},
                       {"payoff_b", rat(r.report.payoff_b)},
                       {"gap_a", rat(r.report.gap_a)},
                       {"gap_b", rat(r.report.gap_b)}});
    }
    result = {{"rows", table}};
  });

  auto* psne = app.add_subcommand("psne", "pure symmetric equilibrium check");
  game_opts(psne);
  psne->add_option("--s", s_text, "allocation; omit to check every allocation");
  psne->add_option("--cap", cap, "enumeration cap when --s is omitted");
  psne->callback([&] {
    const auto spec = c.spec();
    result = {{"threshold", rat(blotto::psne_threshold(spec.battlefields()))}};
    if (!s_text.empty()) {
      const auto r = blotto::psne_report(Allocation::parse(s_text, spec), spec);
      result["is_equilibrium"] = r.is_equilibrium;
      result["deviation_value"] = rat(r.deviation_value);
      result["symmetric_payoff"] = rat(r.symmetric_payoff);
      result["deviation"] = r.deviation.str();
      return;
    }
    std::uint64_t total = 0;
    std::uint64_t equilibria = 0;
    std::optional<Allocation> counterexample;
    blotto::for_each_allocation(
        spec,
        [&](const Allocation& s) {
          ++total;
          if (blotto::psne_check(s, spec)) {
            ++equilibria;
          } else if (!counterexample) {
            counterexample = s;
          }
        },
        cap);
    result["allocations"] = total;
    result["equilibria"] = equilibria;
    result["all_equilibria"] = equilibria == total;
    result["first_failure"] = counterexample ? Json(counterexample->str()) : Json(nullptr);
  });

  FpArgs fpa;
  auto* fp = app.add_subcommand("fp", "fictitious play over partitions");
  game_opts(fp, false);
  fp->add_option("--rounds", fpa.rounds, "total rounds to reach")->required();
  fp->add_option("--mode", fpa.mode, "two-sided or self-play")
      ->check(CLI::IsMember({"two-sided", "self-play"}));
  fp->add_option("--seed", fpa.seed, "seed for --random-ties");
  fp->add_flag("--random-ties", fpa.random_ties, "break best-response ties uniformly at random");
  fp->add_option("--init", fpa.init, "opening allocation (default most balanced)");
  fp->add_option("--checkpoint", fpa.checkpoint, "checkpoint file");
  fp->add_option("--checkpoint-every", fpa.checkpoint_every, "rounds between checkpoints");
  fp->add_option("--resume", fpa.resume, "resume from checkpoint");
  fp->add_option("--report-top", fpa.report_top, "rows in the rank report")->check(CLI::NonNegativeNumber);
  fp->add_option("--report", fpa.report, "write rank report CSV to file");
  fp->add_option("--trace", fpa.trace, "write convergence trace CSV");
  fp->add_option("--trace-every", fpa.trace_every, "rounds between trace rows");
  fp->callback([&] {
    if (fpa.resume.empty() && (c.n == 0 || c.k == 0)) {
      throw blotto::PreconditionError("fp needs --n and --k unless --resume is given");
    }
    result = run_fp(c, fpa);
  });

  bool partitions = false;
  auto* enumerate = app.add_subcommand("enumerate", "list allocations or partitions");
  game_opts(enumerate);
  enumerate->add_flag("--partitions", partitions, "list partitions instead of allocations");
  enumerate->add_option("--cap", cap, "refuse to list more than this many");
  enumerate->callback([&] {
    const auto spec = c.spec();
    Json rows = Json::array();
    std::uint64_t listed = 0;
    const auto add = [&](const std::string& s) {
      if (c.fmt() == Format::kText) {
        std::cout << s << "\n";
      } else {
        rows.push_back({{"bids", s}});
      }
      ++listed;
    };
    if (partitions) {
      blotto::for_each_partition(spec, [&](const blotto::Partition& p) { add(p.str(',')); }, cap);
    } else {
      blotto::for_each_allocation(spec, [&](const Allocation& a) { add(a.str()); }, cap);
    }
    if (c.fmt() != Format::kText) result = {{"count", listed}, {"rows", rows}};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!result.is_null()) emit(result, c.fmt(), std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const blotto::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
