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

// Acceptance suite: one PASS/FAIL line per criterion with wall time against
// its runtime budget. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blotto/analysis.hpp"
#include "blotto/constructors.hpp"
#include "blotto/learning.hpp"

namespace blotto {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::vector<Rational> five_alphas() { return {0, Rational(1, 2), 1, Rational(3, 2), 2}; }

// Direct sum over support atoms; independent of the marginal shortcut.
Rational support_payoff(const Allocation& s, const MixedStrategy& sigma, const GameSpec& spec) {
  Rational total = 0;
  sigma.for_each_atom([&](const Atom& a) { total += a.probability * payoff(s, a.allocation, spec); });
  return total;
}

Outcome canonical_value() {
  Outcome o;
  const GameSpec spec(120, 6, 0);
  const auto s = canonical_pair_equilibrium(spec);
  const auto r = verify_equilibrium(s, s, spec);
  o.require(r.gap_a == 0 && r.gap_b == 0, "nonzero gap");
  o.require(r.payoff_a == Rational(120, 41), "payoff " + to_string(r.payoff_a));
  o.detail = o.ok ? "payoff " + to_string(r.payoff_a) + ", gaps 0" : o.detail;
  return o;
}

Outcome uniform_formula_grid() {
  Outcome o;
  int specs = 0;
  for (int k : {2, 4, 6}) {
    for (int m : {1, 2, 3, 5}) {
      for (const auto& alpha : five_alphas()) {
        const GameSpec spec(k * m, k, alpha);
        const auto s = canonical_pair_equilibrium(spec);
        const auto r = verify_equilibrium(s, s, spec);
        const Rational want = Rational(k) * (2 * k * m + alpha * k) / (4 * k * m + 2 * k);
        std::ostringstream at;
        at << "K=" << k << " m=" << m << " alpha=" << alpha;
        o.require(r.payoff_a == want && r.payoff_b == want, "payoff mismatch at " + at.str());
        o.require(r.gap_a == 0 && r.gap_b == 0, "gap at " + at.str());
        ++specs;
      }
    }
  }
  o.require(specs >= 20, "grid too small");
  if (o.ok) o.detail = std::to_string(specs) + " specs exact";
  return o;
}

Outcome counting() {
  Outcome o;
  const BigInt ordered = count_ordered(GameSpec(120, 6, 0));
  const BigInt parts = count_partitions(126, 6);
  o.require(ordered == 234531275, "count_ordered " + ordered.str());
  o.require(parts == 436140, "count_partitions " + parts.str());
  if (o.ok) o.detail = "234531275 / 436140";
  return o;
}

Outcome witness_sample() {
  Outcome o;
  const GameSpec base(12, 4, 0);
  std::vector<Allocation> pool;
  for (const auto& a : enumerate_allocations(base)) {
    if (a.max_bid() <= 6) pool.push_back(a);
  }
  Rng rng(2026);
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    const Allocation& s = pool[rng.below(pool.size())];
    const auto w = good_strategy_witness(s, base);
    o.require(w.in_support(s), "not in support: " + s.str());
    o.require(w.marginals() == MarginalProfile::uniform(base), "marginals: " + s.str());
    for (Rational alpha : {Rational(0), Rational(1), Rational(2)}) {
      const GameSpec spec = base.with_alpha(alpha);
      const auto r = verify_equilibrium(w, w, spec);
      o.require(r.gap_a == 0 && r.gap_b == 0, "gap for " + s.str());
    }
    ++checked;
  }
  if (o.ok) o.detail = std::to_string(checked) + " witnesses x 3 alphas, pool " +
                       std::to_string(pool.size());
  return o;
}

Outcome never_good() {
  Outcome o;
  const Rational kstar = *never_good_threshold(GameSpec(120, 6, 0));
  o.require(kstar == Rational(720, 246), "K* " + to_string(kstar));
  const GameSpec spec(12, 4, 0);
  const auto u = uniform_marginal_strategy(spec);
  const Rational desk_kstar = *never_good_threshold(spec);
  const auto all = enumerate_allocations(spec);
  Rational best = -1;
  std::vector<Rational> values;
  for (const auto& s : all) {
    values.push_back(support_payoff(s, u, spec));
    best = std::max(best, values.back());
  }
  o.require(best == best_response(u, spec).value, "brute-force maximum differs from DP");
  int few = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    if (Rational(all[i].active_battlefields()) >= desk_kstar) continue;
    ++few;
    o.require(values[i] < best, "best response with few fields: " + all[i].str());
    const auto b = never_good_bounds(all[i].active_battlefields(), spec);
    o.require(b.pure_upper < b.uniform_lower, "bounds not separated");
    o.require(values[i] <= b.pure_upper, "upper bound violated: " + all[i].str());
  }
  o.require(few > 0, "no allocation below K*");
  if (o.ok) {
    o.detail = "K*=" + to_string(kstar) + " (= 720/246); desk K*=" + to_string(desk_kstar) + ", " +
               std::to_string(few) + " of " + std::to_string(all.size()) + " below";
  }
  return o;
}

Outcome no_dominance() {
  Outcome o;
  int pairs = 0;
  int dominated = 0;
  for (Rational alpha : {Rational(0), Rational(1, 5), Rational(3, 5)}) {
    const GameSpec spec(6, 3, alpha);
    const auto all = enumerate_allocations(spec);
    o.require(all.size() == 28, "expected 28 allocations");
    std::set<std::vector<int>> flagged;
    for (const auto& c : all) {
      for (const auto& t : all) {
        if (c == t) continue;
        const auto r = weakly_dominates(c, t, spec);
        Rational lo = 1000;
        Rational hi = -1000;
        for (const auto& opp : all) {
          const Rational d = payoff(c, opp, spec) - payoff(t, opp, spec);
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        o.require(r.min_gap == lo && r.max_gap == hi, "DP gap mismatch " + c.str() + " " + t.str());
        o.require(r.dominates == (lo >= 0 && hi > 0), "dominance flag mismatch");
        if (r.dominates) flagged.insert(std::vector<int>(t.begin(), t.end()));
        ++pairs;
      }
    }
    dominated += static_cast<int>(flagged.size());
  }
  o.require(dominated == 0, std::to_string(dominated) + " dominated strategies");
  if (o.ok) o.detail = std::to_string(pairs) + " ordered pairs, 0 dominated";
  return o;
}

Outcome example_five() {
  Outcome o;
  const GameSpec spec(120, 6, 1);
  const Allocation hat({115, 1, 1, 1, 1, 1}, spec);
  const Allocation s({120, 0, 0, 0, 0, 0}, spec);
  const Allocation opp({119, 1, 0, 0, 0, 0}, spec);
  const auto r = weakly_dominates(hat, s, spec);
  o.require(r.dominates, "not dominating");
  o.require(payoff(s, opp, spec) == 3, "pi(s) = " + to_string(payoff(s, opp, spec)));
  o.require(payoff(hat, opp, spec) == Rational(9, 2), "pi(hat) = " + to_string(payoff(hat, opp, spec)));
  if (o.ok) {
    o.detail = "min_gap " + to_string(r.min_gap) + ", max_gap " + to_string(r.max_gap) +
               "; payoffs 3 and 9/2";
  }
  return o;
}

Outcome solver_family() {
  Outcome o;
  const GameSpec spec(6, 3, 0);
  const auto sol = solve_uniform_marginals(spec);
  const auto& s = sol.strategy;
  const auto p = [&](std::vector<int> b) { return s.probability_of(Allocation(b, spec)); };
  // Per-allocation weights of the family on orbits 411, 222, 123, 330, 420.
  const Rational lambda = 1 - 10 * p({2, 2, 2});
  o.require(lambda >= 0 && lambda <= 1, "lambda out of range");
  const auto mix = [&](Rational a, Rational b) { return (1 - lambda) * a + lambda * b; };
  o.require(p({1, 1, 4}) == mix(Rational(1, 10), Rational(1, 15)), "411 orbit off family");
  o.require(p({1, 2, 3}) == mix(0, Rational(1, 30)), "123 orbit off family");
  o.require(p({0, 3, 3}) == mix(Rational(1, 10), Rational(1, 15)), "330 orbit off family");
  o.require(p({0, 2, 4}) == mix(Rational(1, 20), Rational(1, 15)), "420 orbit off family");
  o.require(lambda == 0, "not the lambda=0 member");
  for (auto b : std::vector<std::vector<int>>{
           {2, 2, 2}, {3, 3, 0}, {3, 0, 3}, {0, 3, 3}, {4, 1, 1}, {1, 4, 1}, {1, 1, 4}}) {
    o.require(p(b) == Rational(1, 10), "S_a weight");
  }
  for (auto b : std::vector<std::vector<int>>{
           {4, 2, 0}, {4, 0, 2}, {2, 4, 0}, {2, 0, 4}, {0, 4, 2}, {0, 2, 4}}) {
    o.require(p(b) == Rational(1, 20), "S_b weight");
  }
  o.require(s.support_size() == 13, "support size");
  o.require(s.marginals() == MarginalProfile::uniform(spec), "marginals not uniform on 0..4");
  for (Rational alpha : {Rational(0), Rational(1), Rational(2)}) {
    const auto r = verify_equilibrium(s, s, spec.with_alpha(alpha));
    o.require(r.gap_a == 0 && r.gap_b == 0, "gap at alpha " + to_string(alpha));
  }
  if (o.ok) o.detail = "lambda=0, 13 atoms, " + std::to_string(sol.candidates_examined) + " candidates";
  return o;
}

Outcome parity_robustness() {
  Outcome o;
  const auto rows = alpha_robustness_scan(GameSpec(8, 4, 0), five_alphas(), default_thread_count());
  std::ostringstream summary;
  for (const auto& row : rows) {
    const auto& r = row.report;
    const std::string at = row.profile + " alpha=" + to_string(row.alpha);
    if (row.profile == "odd/even") {
      if (row.alpha <= 1) {
        o.require(r.is_equilibrium, at + " should verify");
        o.require(r.payoff_a == 2 && r.payoff_b == 2, at + " payoff");
      } else if (row.alpha == Rational(3, 2)) {
        o.require(!r.is_equilibrium, at + " should fail");
      }
    } else if (row.profile == "even/even") {
      if (row.alpha >= 1) o.require(r.is_equilibrium, at + " should verify");
      if (row.alpha == Rational(1, 2)) o.require(!r.is_equilibrium, at + " should fail");
    } else if (row.profile == "uniform/uniform") {
      o.require(r.is_equilibrium, at + " should verify");
    }
  }
  if (o.ok) o.detail = std::to_string(rows.size()) + " cells match";
  return o;
}

Outcome psne_threshold_iff() {
  Outcome o;
  int cells = 0;
  for (int k = 2; k <= 6; ++k) {
    const auto all = enumerate_allocations(GameSpec(6, k, 0));
    for (int i = 0; i <= 40; ++i) {
      const GameSpec spec(6, k, Rational(i, 20));
      bool every = true;
      for (const auto& s : all) every = every && psne_check(Allocation(std::vector<int>(s.begin(), s.end()), spec), spec);
      o.require(every == (spec.alpha() >= psne_threshold(k)),
                "K=" + std::to_string(k) + " alpha=" + to_string(spec.alpha()));
      ++cells;
    }
  }
  if (o.ok) o.detail = std::to_string(cells) + " (K, alpha) cells on N=6";
  return o;
}

Outcome constant_sum_iff() {
  Outcome o;
  const GameSpec spec(8, 4, 1);
  const auto u = canonical_pair_equilibrium(spec);
  const Rational best = best_response(u, spec).value;
  int good = 0;
  int never = 0;
  for (const auto& s : enumerate_allocations(spec)) {
    const auto v = classify_constant_sum(s, spec);
    if (s.max_bid() <= 4) {
      o.require(v.verdict == Verdict::kGood && v.witness && v.witness->in_support(s),
                "no witness for " + s.str());
      if (v.witness) {
        const auto r = verify_equilibrium(*v.witness, *v.witness, spec);
        o.require(r.is_equilibrium, "witness fails for " + s.str());
      }
      ++good;
    } else {
      const Rational gap = best - support_payoff(s, u, spec);
      o.require(gap > 0 && v.verdict == Verdict::kNeverGood, "no strict gap for " + s.str());
      ++never;
    }
  }
  if (o.ok) o.detail = std::to_string(good) + " good, " + std::to_string(never) + " never good";
  return o;
}

Outcome fp_desk() {
  Outcome o;
  const GameSpec spec(12, 4, 0);
  FictitiousPlay fp(spec, {});
  fp.step();
  const TracePoint first_round = trace_point(fp);
  const auto trace = fp_convergence_trace(fp, 100000, 10000);
  o.require(fp.state().round == 100000, "round count");
  const auto& first = trace.front();
  const auto& last = trace.back();
  o.require(last.tv_a < first_round.tv_a && last.tv_b < first_round.tv_b, "TV did not drop");
  o.require(last.gap_a + last.gap_b < first.gap_a + first.gap_b, "gap did not decrease");
  char buf[200];
  std::snprintf(buf, sizeof buf, "TV %.4g -> %.4g, gap %.4g -> %.4g", to_double(first_round.tv_a),
                to_double(last.tv_a), to_double(first.gap_a + first.gap_b),
                to_double(last.gap_a + last.gap_b));
  if (o.ok) o.detail = buf;
  return o;
}

Outcome fp_determinism() {
  Outcome o;
  const GameSpec spec(12, 4, Rational(1, 2));
  for (auto tie : {TieBreak::kLexicographic, TieBreak::kRandom}) {
    FpOptions opts;
    opts.tie_break = tie;
    opts.seed = 42;
    const auto a = serialize_checkpoint(fp_run(spec, 3000, opts));
    const auto b = serialize_checkpoint(fp_run(spec, 3000, opts));
    o.require(a == b, "checkpoints differ");
  }
  if (o.ok) o.detail = "lexicographic and seeded-random checkpoints byte-identical";
  return o;
}

Outcome fp_ar_smoke() {
  Outcome o;
  const GameSpec spec(120, 6, 0);
  const auto state = fp_run(spec, 100000);
  std::ostringstream csv;
  write_rank_report_csv(csv, rank_report(state, 1000));
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  o.require(line == "rank,partition,probability,first_round", "bad header");
  int expected_rank = 1;
  Rational prev = 2;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    o.require(cols.size() == 4, "bad column count: " + line);
    if (cols.size() != 4) break;
    o.require(std::stoi(cols[0]) == expected_rank++, "rank sequence");
    int total = 0;
    int parts = 0;
    std::stringstream ps(cols[1]);
    while (std::getline(ps, cell, '-')) {
      total += std::stoi(cell);
      ++parts;
    }
    o.require(total == 120 && parts == 6, "bad partition " + cols[1]);
    const Rational p = parse_rational(cols[2]);
    o.require(p <= prev && p > 0, "probabilities not descending");
    prev = p;
    o.require(std::stoll(cols[3]) >= 1 && std::stoll(cols[3]) <= 100000, "bad first_round");
  }
  const auto top = rank_report(state, 1);
  const Partition focal({31, 31, 31, 23, 2, 2}, spec);
  const auto rank = rank_of(state, focal);
  const auto disc = discovery_position(state, focal);
  std::ostringstream detail;
  detail << "modal " << top.rows.front().partition << " p=" << to_string(top.rows.front().probability)
         << ", support " << top.support_size << ", (31,31,31,23,2,2) rank "
         << (rank ? std::to_string(*rank) : "unplayed") << " discovery "
         << (disc ? std::to_string(*disc) : "none");
  std::cout << "  observed: " << detail.str() << "\n";
  if (o.ok) o.detail = "rank report well-formed, " + std::to_string(expected_rank - 1) + " rows";
  return o;
}

}  // namespace
}  // namespace blotto

int main() {
  using namespace blotto;
  const std::vector<Criterion> criteria = {
      {1, "canonical equilibrium value on (120,6,0)", 1, canonical_value},
      {2, "uniform payoff formula and zero gap over grid", 10, uniform_formula_grid},
      {3, "strategy counts", 0.1, counting},
      {4, "swap witness on sampled (12,4) allocations", 30, witness_sample},
      {5, "never-good threshold and brute-force check", 60, never_good},
      {6, "no weak dominance for alpha < 2/K on (6,3)", 60, no_dominance},
      {7, "dominance example on (120,6,1)", 1, example_five},
      {8, "uniform-marginal solver on (6,3)", 5, solver_family},
      {9, "parity profiles and alpha robustness on (8,4)", 10, parity_robustness},
      {10, "pure symmetric equilibria iff alpha >= 2(K-1)/K", 60, psne_threshold_iff},
      {11, "constant-sum good iff max bid <= 2m on (8,4,1)", 60, constant_sum_iff},
      {121, "fictitious play on (12,4,0), 1e5 rounds", 60, fp_desk},
      {122, "fictitious play determinism", 60, fp_determinism},
      {123, "fictitious play smoke run on (120,6,0), 1e5 rounds", 600, fp_ar_smoke},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::string id = c.id > 100 ? std::to_string(c.id / 10) + static_cast<char>('a' + c.id % 10 - 1)
                                : std::to_string(c.id);
    std::printf("%s [%s] %s: %.3fs (limit %gs) %s%s\n", pass ? "PASS" : "FAIL", id.c_str(),
                c.name.c_str(), secs, c.limit_s, o.detail.c_str(), in_time ? "" : " [over time]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
