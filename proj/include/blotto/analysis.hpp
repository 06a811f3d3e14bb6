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

#ifndef BLOTTO_ANALYSIS_HPP_
#define BLOTTO_ANALYSIS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "blotto/constructors.hpp"
#include "blotto/errors.hpp"
#include "blotto/game.hpp"
#include "blotto/mixed.hpp"
#include "blotto/parallel.hpp"
#include "blotto/rational.hpp"
#include "blotto/separable_dp.hpp"

namespace blotto {

struct BestResponseResult {
  Rational value;
  Allocation argmax;  // lexicographically smallest maximizer
  std::vector<std::vector<Rational>> value_table;  // v_k(x), x = 0..N
};

// Exact best response to an opponent's marginals: maximize sum_k v_k(s_k)
// over all allocations with the budget DP, O(K N^2).
inline BestResponseResult best_response(const MarginalProfile& opponent, const GameSpec& spec) {
  require_matching(opponent, spec);
  std::vector<std::vector<Rational>> tables;
  tables.reserve(static_cast<size_t>(spec.battlefields()));
  for (int k = 0; k < spec.battlefields(); ++k) {
    tables.push_back(field_value_table(opponent.at(k), spec));
  }
  SeparableDp<Rational> dp(tables, spec.budget(), Sense::kMaximize);
  return {dp.optimum(), Allocation(dp.argopt(), spec), std::move(tables)};
}

inline BestResponseResult best_response(const MixedStrategy& opponent, const GameSpec& spec) {
  return best_response(marginals(opponent, spec), spec);
}

struct EquilibriumReport {
  Rational payoff_a;
  Rational payoff_b;
  Rational best_response_a;  // A's best deviation value against B
  Rational best_response_b;
  Rational gap_a;
  Rational gap_b;
  Allocation deviation_a;
  Allocation deviation_b;
  bool is_equilibrium = false;
};

// Marginal linearity makes pure deviations against marginals a complete
// check for independently mixing players.
inline EquilibriumReport verify_equilibrium(const MixedStrategy& a, const MixedStrategy& b,
                                            const GameSpec& spec) {
  const MarginalProfile ma = marginals(a, spec);
  const MarginalProfile mb = marginals(b, spec);
  auto br_a = best_response(mb, spec);
  auto br_b = best_response(ma, spec);
  Rational pa = expected_payoff_marginal(ma, mb, spec);
  Rational pb = expected_payoff_marginal(mb, ma, spec);
  Rational gap_a = br_a.value - pa;
  Rational gap_b = br_b.value - pb;
  const bool eq = gap_a == 0 && gap_b == 0;
  return {std::move(pa),          std::move(pb),          br_a.value,     br_b.value,
          std::move(gap_a),       std::move(gap_b),       br_a.argmax,    br_b.argmax,
          eq};
}

// Equilibrium payoff with uniform marginals on both sides:
// K (2N + alpha K) / (4N + 2K).
inline Rational uniform_equilibrium_payoff(const GameSpec& spec) {
  const int N = spec.budget();
  const int K = spec.battlefields();
  return Rational(K) * (Rational(2 * N) + spec.alpha() * K) / (4 * N + 2 * K);
}

enum class Verdict { kGood, kNeverGood, kUnknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kGood:
      return "Good";
    case Verdict::kNeverGood:
      return "NeverGood";
    case Verdict::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

struct GoodnessVerdict {
  Verdict verdict = Verdict::kUnknown;
  std::optional<MixedStrategy> witness;
  std::optional<Rational> threshold;  // K*; undefined at alpha = 2
  int support_size = 0;               // K_+
  std::string reason;
};

// K* = NK/(2N+K) * (1 - alpha/(2-alpha)).
inline std::optional<Rational> never_good_threshold(const GameSpec& spec) {
  if (spec.alpha() == 2) return std::nullopt;
  const int N = spec.budget();
  const int K = spec.battlefields();
  return Rational(N * K, 2 * N + K) * (1 - spec.alpha() / (2 - spec.alpha()));
}

// The two bounds compared in the never-good argument, for a strategy active
// on `active` battlefields:
//   pure_upper     = alpha K/2 + (2 - alpha) K_+/2   (payoff of s vs anything)
//   uniform_lower  = NK/(2N+K) + (alpha/2) K^2/(2N+K) (uniform deviation floor)
struct NeverGoodBounds {
  Rational pure_upper;
  Rational uniform_lower;
  bool strictly_separated = false;
};

inline NeverGoodBounds never_good_bounds(int active, const GameSpec& spec) {
  const int N = spec.budget();
  const int K = spec.battlefields();
  const Rational& a = spec.alpha();
  Rational upper = a * K / 2 + (2 - a) * active / 2;
  Rational lower = Rational(N * K, 2 * N + K) + a / 2 * Rational(K * K, 2 * N + K);
  const bool strict = upper < lower;
  return {std::move(upper), std::move(lower), strict};
}

namespace detail {

inline bool witness_verifies(const MixedStrategy& witness, const Allocation& s,
                             const GameSpec& spec) {
  if (!witness.in_support(s)) return false;
  return verify_equilibrium(witness, witness, spec).is_equilibrium;
}

}  // namespace detail

// Good (with a verified swap witness) when every bid is at most 2N/K;
// NeverGood when alpha in [0,1) and fewer than K* battlefields are active;
// Unknown otherwise.
inline GoodnessVerdict classify(const Allocation& s, const GameSpec& spec) {
  require_matching(s, spec);
  GoodnessVerdict out;
  out.threshold = never_good_threshold(spec);
  out.support_size = s.active_battlefields();
  const bool assumptions = spec.even_battlefields() && spec.divisible();
  if (!assumptions) {
    out.reason = "needs K even and K | N";
    return out;
  }
  if (s.max_bid() <= 2 * spec.m()) {
    auto witness = good_strategy_witness(s, spec);
    if (detail::witness_verifies(witness, s, spec)) {
      out.verdict = Verdict::kGood;
      out.witness = std::move(witness);
      out.reason = "every bid <= 2N/K; swap witness verified";
    } else {
      out.reason = "swap witness failed verification at this alpha";
    }
    return out;
  }
  if (spec.alpha() >= 0 && spec.alpha() < 1 && out.threshold &&
      Rational(out.support_size) < *out.threshold) {
    out.verdict = Verdict::kNeverGood;
    out.reason = "active battlefields below K*";
    return out;
  }
  out.reason = spec.alpha() >= 0 && spec.alpha() < 1 ? "bid above 2N/K with K_+ >= K*"
                                                    : "no never-good criterion for alpha >= 1";
  return out;
}

// The alpha = 1 characterization: Good iff every bid is at most 2N/K.
inline GoodnessVerdict classify_constant_sum(const Allocation& s, const GameSpec& spec) {
  if (spec.alpha() != 1) {
    throw WrongRegimeError("constant-sum classification needs alpha = 1, got " +
                           to_string(spec.alpha()));
  }
  if (!spec.even_battlefields() || !spec.divisible()) {
    throw PreconditionError("constant-sum classification needs K even and K | N");
  }
  require_matching(s, spec);
  GoodnessVerdict out;
  out.threshold = never_good_threshold(spec);
  out.support_size = s.active_battlefields();
  if (s.max_bid() <= 2 * spec.m()) {
    auto witness = good_strategy_witness(s, spec);
    if (!detail::witness_verifies(witness, s, spec)) {
      throw BlottoError("swap witness failed verification for " + s.str());
    }
    out.verdict = Verdict::kGood;
    out.witness = std::move(witness);
    out.reason = "every bid <= 2N/K";
  } else {
    out.verdict = Verdict::kNeverGood;
    out.reason = "some bid > 2N/K";
  }
  return out;
}

struct DominanceReport {
  Rational min_gap;  // min over opponents of pi(candidate,t) - pi(target,t)
  Rational max_gap;
  Allocation min_opponent;
  Allocation max_opponent;
  bool dominates = false;
};

// Does `candidate` weakly dominate `target`? With
// d_k(b) = value(candidate_k, b) - value(target_k, b), the extreme gaps over
// all opponent allocations come from the budget DP in both senses.
inline DominanceReport weakly_dominates(const Allocation& candidate, const Allocation& target,
                                        const GameSpec& spec) {
  require_matching(candidate, spec);
  require_matching(target, spec);
  if (candidate == target) {
    throw InvalidComparisonError("dominance needs two distinct allocations");
  }
  std::vector<std::vector<Rational>> diff(static_cast<size_t>(spec.battlefields()));
  for (int k = 0; k < spec.battlefields(); ++k) {
    diff[k].reserve(static_cast<size_t>(spec.budget()) + 1);
    for (int b = 0; b <= spec.budget(); ++b) {
      diff[k].push_back(battlefield_value(candidate[k], b, spec) -
                        battlefield_value(target[k], b, spec));
    }
  }
  SeparableDp<Rational> lo(diff, spec.budget(), Sense::kMinimize);
  SeparableDp<Rational> hi(std::move(diff), spec.budget(), Sense::kMaximize);
  const bool dom = lo.optimum() >= 0 && hi.optimum() > 0;
  return {lo.optimum(), hi.optimum(), Allocation(lo.argopt(), spec), Allocation(hi.argopt(), spec),
          dom};
}

// Regime where no pure strategy is weakly dominated by another: alpha < 2/K.
inline bool no_dominance_regime(const GameSpec& spec) {
  return spec.alpha() < Rational(2, spec.battlefields());
}

struct PsneReport {
  Rational deviation_value;  // best response against the point mass at s
  Rational symmetric_payoff;  // K alpha / 2
  Allocation deviation;
  bool is_equilibrium = false;
};

inline PsneReport psne_report(const Allocation& s, const GameSpec& spec) {
  auto br = best_response(MarginalProfile::point_mass(s, spec), spec);
  Rational sym = spec.alpha() * spec.battlefields() / 2;
  const bool eq = br.value <= sym;
  return {std::move(br.value), std::move(sym), std::move(br.argmax), eq};
}

// (s, s) is a Nash equilibrium in pure strategies.
inline bool psne_check(const Allocation& s, const GameSpec& spec) {
  return psne_report(s, spec).is_equilibrium;
}

// Threshold above which every symmetric pure profile is an equilibrium.
inline Rational psne_threshold(int battlefields) {
  return Rational(2 * (battlefields - 1), battlefields);
}

struct RobustnessRow {
  Rational alpha;
  std::string profile;  // "uniform/uniform", "odd/even", "even/even", "odd/odd"
  EquilibriumReport report;
};

// Equilibrium verdicts of the uniform and parity profiles over a grid of
// tie values. Grid points may leave [0, 2].
inline std::vector<RobustnessRow> alpha_robustness_scan(const GameSpec& base,
                                                        const std::vector<Rational>& grid,
                                                        int threads = 1) {
  const GameSpec shape(base.budget(), base.battlefields(), Rational(0));
  const MixedStrategy uniform = canonical_pair_equilibrium(shape);
  const MixedStrategy odd = parity_strategy(shape, Parity::kOdd);
  const MixedStrategy even = parity_strategy(shape, Parity::kEven);
  struct Profile {
    const char* name;
    const MixedStrategy* a;
    const MixedStrategy* b;
  };
  const std::vector<Profile> profiles = {{"uniform/uniform", &uniform, &uniform},
                                         {"odd/even", &odd, &even},
                                         {"even/even", &even, &even},
                                         {"odd/odd", &odd, &odd}};
  const size_t cells = grid.size() * profiles.size();
  auto rows = parallel_map<std::optional<RobustnessRow>>(cells, threads, [&](size_t i) {
    const Rational& alpha = grid[i / profiles.size()];
    const Profile& p = profiles[i % profiles.size()];
    const GameSpec spec(base.budget(), base.battlefields(), alpha, AlphaRange::kOverride);
    return std::optional<RobustnessRow>(
        RobustnessRow{alpha, p.name, verify_equilibrium(*p.a, *p.b, spec)});
  });
  std::vector<RobustnessRow> out;
  out.reserve(cells);
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

}  // namespace blotto

#endif  // BLOTTO_ANALYSIS_HPP_
