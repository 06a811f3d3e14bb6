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

#include "blotto/analysis.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace blotto {
namespace {

std::vector<oracle::WeightedBids> atoms_of(const MixedStrategy& s) {
  std::vector<oracle::WeightedBids> out;
  s.for_each_atom([&](const Atom& a) {
    out.push_back({std::vector<int>(a.allocation.begin(), a.allocation.end()), a.probability});
  });
  return out;
}

TEST(BestResponseTest, MatchesBruteForceOnAssortedOpponents) {
  for (auto [n, k] : {std::pair{6, 3}, std::pair{8, 4}, std::pair{7, 3}, std::pair{10, 2},
                      std::pair{9, 4}}) {
    for (Rational alpha : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
      const GameSpec spec(n, k, alpha);
      std::vector<Atom> atoms;
      int i = 0;
      for (const auto& a : enumerate_allocations(spec)) {
        if (i++ % 3 == 0) atoms.push_back({a, Rational(1 + i % 5)});
      }
      Rational total = 0;
      for (const auto& a : atoms) total += a.probability;
      for (auto& a : atoms) a.probability /= total;
      const auto opp = MixedStrategy::explicit_table(atoms, spec);
      const auto br = best_response(opp, spec);
      EXPECT_EQ(br.value, oracle::best_value(n, k, atoms_of(opp), alpha)) << n << "," << k;
      EXPECT_EQ(expected_payoff_pure_vs_mixed(br.argmax, opp, spec), br.value);
    }
  }
}

TEST(BestResponseTest, ArgmaxIsLexicographicallySmallest) {
  const GameSpec spec(4, 2, 0);
  const auto br = best_response(MarginalProfile::uniform(spec), spec);
  std::vector<Allocation> maximizers;
  for (const auto& a : enumerate_allocations(spec)) {
    if (expected_payoff_pure_vs_mixed(a, MarginalProfile::uniform(spec), spec) == br.value) {
      maximizers.push_back(a);
    }
  }
  ASSERT_FALSE(maximizers.empty());
  EXPECT_EQ(br.argmax, maximizers.front());
}

TEST(VerifyEquilibriumTest, ArCanonicalValue) {
  const GameSpec spec(120, 6, 0);
  const auto s = canonical_pair_equilibrium(spec);
  const auto r = verify_equilibrium(s, s, spec);
  EXPECT_EQ(r.gap_a, 0);
  EXPECT_EQ(r.gap_b, 0);
  EXPECT_EQ(r.payoff_a, Rational(120, 41));
  EXPECT_EQ(to_string(r.payoff_a), "120/41");
  EXPECT_TRUE(r.is_equilibrium);
}

TEST(VerifyEquilibriumTest, UniformPayoffFormulaGrid) {
  int specs = 0;
  for (int k : {2, 4, 6}) {
    for (int m : {1, 2, 3, 5}) {
      for (Rational alpha : {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
        const GameSpec spec(k * m, k, alpha);
        const auto s = canonical_pair_equilibrium(spec);
        const auto r = verify_equilibrium(s, s, spec);
        const Rational want = Rational(k) * (2 * k * m + alpha * k) / (4 * k * m + 2 * k);
        EXPECT_EQ(r.payoff_a, want);
        EXPECT_EQ(uniform_equilibrium_payoff(spec), want);
        EXPECT_EQ(r.gap_a, 0);
        EXPECT_EQ(r.gap_b, 0);
        ++specs;
      }
    }
  }
  EXPECT_GE(specs, 20);
}

TEST(VerifyEquilibriumTest, DetectsProfitableDeviation) {
  const GameSpec spec(6, 3, 0);
  const auto pure = MixedStrategy::pure(Allocation({2, 2, 2}, spec), spec);
  const auto r = verify_equilibrium(pure, pure, spec);
  EXPECT_FALSE(r.is_equilibrium);
  EXPECT_GT(r.gap_a, 0);
  EXPECT_EQ(expected_payoff_pure_vs_mixed(r.deviation_a, pure, spec), r.best_response_a);
}

TEST(VerifyEquilibriumTest, GapsAreNonnegative) {
  const GameSpec spec(8, 4, Rational(1, 3));
  const auto a = parity_strategy(spec, Parity::kOdd);
  const auto b = MixedStrategy::pure(Allocation({5, 1, 1, 1}, spec), spec);
  const auto r = verify_equilibrium(a, b, spec);
  EXPECT_GE(r.gap_a, 0);
  EXPECT_GE(r.gap_b, 0);
}

TEST(NeverGoodTest, ThresholdValues) {
  EXPECT_EQ(*never_good_threshold(GameSpec(120, 6, 0)), Rational(720, 246));
  EXPECT_EQ(to_string(*never_good_threshold(GameSpec(120, 6, 0))), "120/41");
  EXPECT_EQ(*never_good_threshold(GameSpec(12, 4, 0)), Rational(12, 7));
  EXPECT_EQ(*never_good_threshold(GameSpec(12, 4, 1)), 0);
  EXPECT_FALSE(never_good_threshold(GameSpec(12, 4, 2)).has_value());
}

TEST(NeverGoodTest, FewActiveFieldsNeverBestRespond) {
  const GameSpec spec(12, 4, 0);
  const auto u = canonical_pair_equilibrium(spec);
  const Rational kstar = *never_good_threshold(spec);
  const Rational best = best_response(u, spec).value;
  int checked = 0;
  for (const auto& s : enumerate_allocations(spec)) {
    if (s.active_battlefields() >= kstar) continue;
    const auto bounds = never_good_bounds(s.active_battlefields(), spec);
    EXPECT_LT(bounds.pure_upper, bounds.uniform_lower);
    EXPECT_TRUE(bounds.strictly_separated);
    const Rational v = oracle::pay_pure_mixed(std::vector<int>(s.begin(), s.end()), atoms_of(u),
                                              spec.alpha());
    EXPECT_LE(v, bounds.pure_upper);
    EXPECT_LT(v, best);
    const auto verdict = classify(s, spec);
    EXPECT_EQ(verdict.verdict, Verdict::kNeverGood);
    ++checked;
  }
  EXPECT_EQ(checked, 4);
}

TEST(ClassifyTest, GoodAllocationsCarryVerifiedWitness) {
  const GameSpec spec(8, 4, Rational(1, 2));
  const auto v = classify(Allocation({1, 4, 0, 3}, spec), spec);
  ASSERT_EQ(v.verdict, Verdict::kGood);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(v.witness->in_support(Allocation({1, 4, 0, 3}, spec)));
  const auto r = verify_equilibrium(*v.witness, *v.witness, spec);
  EXPECT_EQ(r.gap_a, 0);
}

TEST(ClassifyTest, UnknownOutsideAssumptions) {
  const GameSpec odd(6, 3, 0);
  EXPECT_EQ(classify(Allocation({2, 2, 2}, odd), odd).verdict, Verdict::kUnknown);
  const GameSpec high(12, 4, Rational(3, 2));
  EXPECT_EQ(classify(Allocation({12, 0, 0, 0}, high), high).verdict, Verdict::kUnknown);
}

TEST(ClassifyTest, ConstantSumIff) {
  const GameSpec spec(8, 4, 1);
  const auto u = canonical_pair_equilibrium(spec);
  const Rational best = best_response(u, spec).value;
  for (const auto& s : enumerate_allocations(spec)) {
    const auto v = classify_constant_sum(s, spec);
    if (s.max_bid() <= 4) {
      ASSERT_EQ(v.verdict, Verdict::kGood) << s;
      ASSERT_TRUE(v.witness->in_support(s));
    } else {
      ASSERT_EQ(v.verdict, Verdict::kNeverGood) << s;
      ASSERT_LT(expected_payoff_pure_vs_mixed(s, u, spec), best) << s;
    }
  }
  EXPECT_THROW(classify_constant_sum(Allocation({2, 2, 2, 2}, GameSpec(8, 4, 0)), GameSpec(8, 4, 0)),
               WrongRegimeError);
}

// Brute-force dominance: compare payoffs against every opponent allocation.
std::pair<Rational, Rational> brute_gaps(const std::vector<int>& c, const std::vector<int>& t,
                                         const GameSpec& spec) {
  Rational lo = 1000;
  Rational hi = -1000;
  for (const auto& o : oracle::all_bids(spec.budget(), spec.battlefields())) {
    const Rational d = oracle::pay(c, o, spec.alpha()) - oracle::pay(t, o, spec.alpha());
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

TEST(DominanceTest, SpreadBeatsConcentrationAtHalfTies) {
  const GameSpec spec(120, 6, 1);
  const Allocation cand({115, 1, 1, 1, 1, 1}, spec);
  const Allocation target({120, 0, 0, 0, 0, 0}, spec);
  const auto r = weakly_dominates(cand, target, spec);
  EXPECT_TRUE(r.dominates);
  EXPECT_EQ(r.min_gap, 0);
  EXPECT_GT(r.max_gap, 0);
  const Allocation opp({119, 1, 0, 0, 0, 0}, spec);
  EXPECT_EQ(payoff(target, opp, spec), 3);
  EXPECT_EQ(payoff(cand, opp, spec), Rational(9, 2));
}

TEST(DominanceTest, NoneDominatedBelowTwoOverK) {
  for (Rational alpha : {Rational(0), Rational(1, 5), Rational(3, 5)}) {
    const GameSpec spec(6, 3, alpha);
    EXPECT_TRUE(no_dominance_regime(spec));
    const auto all = enumerate_allocations(spec);
    ASSERT_EQ(all.size(), 28u);
    for (const auto& c : all) {
      for (const auto& t : all) {
        if (c == t) continue;
        const auto r = weakly_dominates(c, t, spec);
        EXPECT_FALSE(r.dominates) << c << " vs " << t;
      }
    }
  }
}

TEST(DominanceTest, DpAgreesWithBruteForce) {
  for (auto [n, k, alpha] : {std::tuple{6, 3, Rational(1)}, std::tuple{5, 3, Rational(2)},
                             std::tuple{6, 2, Rational(3, 2)}, std::tuple{4, 4, Rational(1, 2)}}) {
    const GameSpec spec(n, k, alpha);
    const auto all = enumerate_allocations(spec);
    for (const auto& c : all) {
      for (const auto& t : all) {
        if (c == t) continue;
        const auto r = weakly_dominates(c, t, spec);
        const auto [lo, hi] = brute_gaps(std::vector<int>(c.begin(), c.end()), std::vector<int>(t.begin(), t.end()), spec);
        ASSERT_EQ(r.min_gap, lo);
        ASSERT_EQ(r.max_gap, hi);
        ASSERT_EQ(r.dominates, lo >= 0 && hi > 0);
        ASSERT_EQ(payoff(c, r.min_opponent, spec) - payoff(t, r.min_opponent, spec), lo);
        ASSERT_EQ(payoff(c, r.max_opponent, spec) - payoff(t, r.max_opponent, spec), hi);
      }
    }
  }
}

TEST(DominanceTest, IdenticalAllocationsRejected) {
  const GameSpec spec(6, 3, 0);
  const Allocation s({2, 2, 2}, spec);
  EXPECT_THROW(weakly_dominates(s, s, spec), InvalidComparisonError);
}

TEST(PsneTest, ThresholdIff) {
  for (int k = 2; k <= 6; ++k) {
    const GameSpec shape(6, k, 0);
    const auto all = enumerate_allocations(shape);
    for (int i = 0; i <= 40; ++i) {
      const Rational alpha(i, 20);
      const GameSpec spec(6, k, alpha);
      bool every = true;
      for (const auto& s : all) every = every && psne_check(Allocation(std::vector<int>(s.begin(), s.end()), spec), spec);
      EXPECT_EQ(every, alpha >= psne_threshold(k)) << "K=" << k << " alpha=" << alpha;
    }
  }
}

TEST(PsneTest, ReportFields) {
  const GameSpec spec(6, 3, 0);
  const auto r = psne_report(Allocation({2, 2, 2}, spec), spec);
  EXPECT_FALSE(r.is_equilibrium);
  EXPECT_EQ(r.symmetric_payoff, 0);
  EXPECT_EQ(r.deviation_value, 2);
  const GameSpec high(6, 3, Rational(4, 3));
  EXPECT_TRUE(psne_check(Allocation({2, 2, 2}, high), high));
}

TEST(RobustnessTest, ParityScan) {
  const GameSpec base(8, 4, 0);
  const std::vector<Rational> grid = {0, Rational(1, 2), 1, Rational(3, 2), 2};
  const auto rows = alpha_robustness_scan(base, grid, 2);
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& row : rows) {
    const bool low = row.alpha <= 1;
    const bool high = row.alpha >= 1;
    if (row.profile == "uniform/uniform") {
      EXPECT_TRUE(row.report.is_equilibrium) << row.alpha;
    } else if (row.profile == "odd/even") {
      EXPECT_EQ(row.report.is_equilibrium, low) << row.alpha;
      EXPECT_EQ(row.report.payoff_a, 2);
    } else {
      EXPECT_EQ(row.report.is_equilibrium, high) << row.profile << " " << row.alpha;
    }
  }
}

TEST(RobustnessTest, ThreadCountDoesNotChangeRows) {
  const GameSpec base(8, 4, 0);
  const std::vector<Rational> grid = {0, Rational(1, 3), Rational(5, 2)};
  const auto one = alpha_robustness_scan(base, grid, 1);
  const auto four = alpha_robustness_scan(base, grid, 4);
  ASSERT_EQ(one.size(), four.size());
  for (size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].profile, four[i].profile);
    EXPECT_EQ(one[i].report.gap_a, four[i].report.gap_a);
    EXPECT_EQ(one[i].report.gap_b, four[i].report.gap_b);
  }
}

}  // namespace
}  // namespace blotto
