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

#ifndef BLOTTO_CONSTRUCTORS_HPP_
#define BLOTTO_CONSTRUCTORS_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/game.hpp"
#include "blotto/mixed.hpp"
#include "blotto/rational.hpp"
#include "blotto/strategy_space.hpp"

namespace blotto {

namespace detail {

inline void require_pair_assumptions(const GameSpec& spec) {
  if (!spec.even_battlefields()) {
    throw PreconditionError("K=" + std::to_string(spec.battlefields()) +
                            " is odd; pair constructions need even K (use the "
                            "uniform-marginal solver instead)");
  }
  if (!spec.divisible()) {
    throw PreconditionError("K=" + std::to_string(spec.battlefields()) +
                            " does not divide N=" + std::to_string(spec.budget()));
  }
}

inline std::vector<int> split_range(int first, int last, int step) {
  std::vector<int> out;
  for (int j = first; j <= last; j += step) out.push_back(j);
  return out;
}

}  // namespace detail

// Uniform over S_0 = {(j, 2m-j, j, 2m-j, ...) : j = 0..2m}, pairing
// battlefields (1,2), (3,4), ... Every marginal is U^m.
inline MixedStrategy canonical_pair_equilibrium(const GameSpec& spec) {
  detail::require_pair_assumptions(spec);
  const int c = 2 * spec.m();
  return MixedStrategy::pair_coupled(spec, c, detail::split_range(0, c, 1), "canonical");
}

// Same construction with pair sum c = N/(K/2); needs only (K/2) | N.
inline MixedStrategy pairwise_fixed_sum_equilibrium(const GameSpec& spec) {
  if (!spec.even_battlefields()) {
    throw PreconditionError("pairwise construction needs even K");
  }
  const int pairs = spec.battlefields() / 2;
  if (spec.budget() % pairs != 0) {
    throw PreconditionError("K/2=" + std::to_string(pairs) +
                            " does not divide N=" + std::to_string(spec.budget()));
  }
  const int c = spec.budget() / pairs;
  return MixedStrategy::pair_coupled(spec, c, detail::split_range(0, c, 1), "pairs");
}

inline MixedStrategy pairwise_fixed_sum_equilibrium(const GameSpec& spec, int pair_budget) {
  if (spec.even_battlefields() && pair_budget * (spec.battlefields() / 2) != spec.budget()) {
    throw PreconditionError("pair budget " + std::to_string(pair_budget) +
                            " times K/2 must equal N=" + std::to_string(spec.budget()));
  }
  return pairwise_fixed_sum_equilibrium(spec);
}

// S_1: every pair of battlefields splits 2m independently and uniformly.
// (2m+1)^(K/2) equiprobable atoms, generated by index.
inline MixedStrategy independent_pairs_strategy(const GameSpec& spec) {
  detail::require_pair_assumptions(spec);
  return MixedStrategy::independent_pairs(spec, 2 * spec.m(), "independent");
}

// An equilibrium strategy with s in its support: S_1 with the atoms
//   (s1, 2m-s1, s3, 2m-s3, ...)  and  (2m-s2, s2, 2m-s4, s4, ...)
// replaced by
//   s  and  (2m-s2, 2m-s1, 2m-s4, 2m-s3, ...),
// which leaves every marginal unchanged. If s already lies in S_1 the swap is
// the identity and S_1 is returned.
inline MixedStrategy good_strategy_witness(const Allocation& s, const GameSpec& spec) {
  detail::require_pair_assumptions(spec);
  require_matching(s, spec);
  const int two_m = 2 * spec.m();
  for (int k = 0; k < spec.battlefields(); ++k) {
    if (s[k] > two_m) {
      throw NotCoverableError("allocation " + s.str() + " bids " + std::to_string(s[k]) +
                              " > 2m=" + std::to_string(two_m) + " on battlefield " +
                              std::to_string(k + 1));
    }
  }
  const int pairs = spec.battlefields() / 2;
  bool in_s1 = true;
  for (int l = 0; l < pairs; ++l) in_s1 = in_s1 && s[2 * l] + s[2 * l + 1] == two_m;
  if (in_s1) return MixedStrategy::independent_pairs(spec, two_m, "witness");

  const std::uint64_t base = static_cast<std::uint64_t>(two_m) + 1;
  std::uint64_t first_index = 0;
  std::uint64_t second_index = 0;
  std::vector<int> partner(static_cast<size_t>(spec.battlefields()));
  for (int l = 0; l < pairs; ++l) {
    const int odd = s[2 * l];      // s_{2l-1} in 1-based numbering
    const int even = s[2 * l + 1]; // s_{2l}
    first_index = first_index * base + static_cast<std::uint64_t>(odd);
    second_index = second_index * base + static_cast<std::uint64_t>(two_m - even);
    partner[2 * l] = two_m - even;
    partner[2 * l + 1] = two_m - odd;
  }
  return MixedStrategy::swapped_pairs(
      spec, IndependentPairs{two_m, pairs}, {first_index, second_index},
      {std::vector<int>(s.begin(), s.end()), partner}, "witness");
}

enum class Parity { kOdd, kEven };

// Pair construction with splits restricted to odd (U^m_O) or even (U^m_E)
// levels of {0, ..., 2m}.
inline MixedStrategy parity_strategy(const GameSpec& spec, Parity parity) {
  detail::require_pair_assumptions(spec);
  const int m = spec.m();
  if (parity == Parity::kOdd) {
    if (m < 1) throw PreconditionError("odd parity strategy needs m >= 1");
    return MixedStrategy::pair_coupled(spec, 2 * m, detail::split_range(1, 2 * m - 1, 2),
                                       "parity-odd");
  }
  return MixedStrategy::pair_coupled(spec, 2 * m, detail::split_range(0, 2 * m, 2),
                                     "parity-even");
}

// ---------------------------------------------------------------------------
// Battlefield-symmetric uniform-marginal solver.

struct SolverOptions {
  std::uint64_t max_orbits = 2000;            // partitions with parts <= 2m
  std::uint64_t max_candidates = 20'000'000;  // candidate supports examined
};

struct OrbitWeight {
  Partition orbit;
  Rational probability;     // per allocation in the orbit
  std::uint64_t orbit_size;  // distinct permutations
};

struct UniformMarginalSolution {
  std::vector<OrbitWeight> weights;  // positive weights only, orbit order
  std::uint64_t candidates_examined = 0;
  MixedStrategy strategy;
};

namespace detail {

inline std::uint64_t distinct_permutations(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end());
  // Multinomial K! / prod(mult!) built incrementally to stay exact.
  BigInt total = 1;
  int placed = 0;
  for (size_t i = 0; i < parts.size();) {
    size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    for (size_t t = 1; t <= j - i; ++t) {
      ++placed;
      total = total * placed / static_cast<long long>(t);
    }
    i = j;
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    throw OverflowError("orbit size does not fit in 64 bits");
  }
  return total.convert_to<std::uint64_t>();
}

// Permutations of `parts` with `first` on battlefield 1.
inline std::uint64_t permutations_with_first(const std::vector<int>& parts, int first) {
  std::vector<int> rest(parts);
  auto it = std::find(rest.begin(), rest.end(), first);
  if (it == rest.end()) return 0;
  rest.erase(it);
  if (rest.empty()) return 1;
  return distinct_permutations(rest);
}

// Unique solution of A_S x = b if the selected columns are independent and the
// system is consistent.
inline std::optional<std::vector<Rational>> solve_columns(
    const std::vector<std::vector<Rational>>& columns, const std::vector<size_t>& chosen,
    const Rational& rhs, size_t rows) {
  const size_t r = chosen.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(r + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < r; ++j) a[i][j] = columns[chosen[j]][i];
    a[i][r] = rhs;
  }
  size_t row = 0;
  for (size_t col = 0; col < r; ++col) {
    size_t pivot = row;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) return std::nullopt;  // dependent columns
    std::swap(a[pivot], a[row]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[row][col];
      for (size_t j = col; j <= r; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  for (size_t i = row; i < rows; ++i) {
    if (a[i][r] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rational> x(r);
  for (size_t j = 0; j < r; ++j) x[j] = a[j][r] / a[j][j];
  return x;
}

inline bool next_combination(std::vector<size_t>& c, size_t n) {
  const size_t r = c.size();
  for (size_t i = r; i-- > 0;) {
    if (c[i] < n - r + i) {
      ++c[i];
      for (size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Finds per-orbit probabilities p_o >= 0 with every battlefield marginal equal
// to U^m, i.e. for each level b in {0..2m}:
//   sum_o p_o * #{permutations of o with b on battlefield 1} = 1/(2m+1).
// Among nonnegative solutions returns one with the fewest positive orbits,
// ties broken by the lexicographically smallest orbit list. Minimal supports
// have independent columns, so only basic solutions are examined.
inline UniformMarginalSolution solve_uniform_marginals(const GameSpec& spec,
                                                       const SolverOptions& options = {}) {
  const int m = spec.m();
  const int two_m = 2 * m;
  std::vector<Partition> orbits;
  for_each_partition(spec, [&](const Partition& p) {
    if (p[0] <= two_m) {
      orbits.push_back(p);
      if (orbits.size() > options.max_orbits) {
        throw SolverFailureError("uniform-marginal solver: more than " +
                                 std::to_string(options.max_orbits) + " candidate orbits");
      }
    }
  });
  std::sort(orbits.begin(), orbits.end());
  const size_t rows = static_cast<size_t>(two_m) + 1;
  const size_t n = orbits.size();
  std::vector<std::vector<Rational>> columns(n, std::vector<Rational>(rows));
  std::vector<std::vector<bool>> covers(n, std::vector<bool>(rows, false));
  for (size_t o = 0; o < n; ++o) {
    std::vector<int> parts(orbits[o].begin(), orbits[o].end());
    for (size_t b = 0; b < rows; ++b) {
      const auto c = detail::permutations_with_first(parts, static_cast<int>(b));
      columns[o][b] = Rational(BigInt(c));
      covers[o][b] = c > 0;
    }
  }
  const Rational rhs(1, two_m + 1);
  std::uint64_t examined = 0;
  for (size_t r = 1; r <= std::min(n, rows); ++r) {
    std::vector<size_t> chosen(r);
    std::iota(chosen.begin(), chosen.end(), size_t{0});
    do {
      // Every level carries positive mass, so the support must cover it.
      bool covered = true;
      for (size_t b = 0; b < rows && covered; ++b) {
        bool any = false;
        for (size_t j : chosen) any = any || covers[j][b];
        covered = any;
      }
      if (!covered) continue;
      if (++examined > options.max_candidates) {
        throw SolverFailureError("uniform-marginal solver: candidate cap " +
                                 std::to_string(options.max_candidates) + " reached");
      }
      auto x = detail::solve_columns(columns, chosen, rhs, rows);
      if (!x) continue;
      if (!std::all_of(x->begin(), x->end(), [](const Rational& v) { return v > 0; })) continue;

      std::vector<OrbitWeight> weights;
      std::vector<Atom> atoms;
      for (size_t j = 0; j < r; ++j) {
        const Partition& orbit = orbits[chosen[j]];
        std::vector<int> perm(orbit.begin(), orbit.end());
        std::sort(perm.begin(), perm.end());
        weights.push_back({orbit, (*x)[j], detail::distinct_permutations(perm)});
        do {
          atoms.push_back(Atom{Allocation(perm, spec), (*x)[j]});
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      std::sort(atoms.begin(), atoms.end(),
                [](const Atom& a, const Atom& b) { return a.allocation < b.allocation; });
      auto strategy = MixedStrategy::explicit_table(std::move(atoms), spec, "solver");
      return {std::move(weights), examined, std::move(strategy)};
    } while (detail::next_combination(chosen, n));
  }
  throw SolverFailureError("uniform-marginal solver found no nonnegative solution within caps");
}

inline MixedStrategy uniform_marginal_solver(const GameSpec& spec,
                                             const SolverOptions& options = {}) {
  return solve_uniform_marginals(spec, options).strategy;
}

// Uniform-marginal equilibrium strategy for any K dividing N: the canonical
// pair construction for even K, the solver otherwise.
inline MixedStrategy uniform_marginal_strategy(const GameSpec& spec) {
  if (spec.even_battlefields()) return canonical_pair_equilibrium(spec);
  return uniform_marginal_solver(spec);
}

}  // namespace blotto

#endif  // BLOTTO_CONSTRUCTORS_HPP_
