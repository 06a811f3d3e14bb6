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

#ifndef BLOTTO_MIXED_HPP_
#define BLOTTO_MIXED_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/game.hpp"
#include "blotto/rational.hpp"

namespace blotto {

// Sampling generator: std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Bounded draws use rejection below the largest multiple of the
// bound, so streams are identical on every conforming platform.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64/reject-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("Rng::below needs a positive bound");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() { return engine_; }
  const std::mt19937_64& engine() const { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// K exact distributions over bid levels {0, ..., N}.
class MarginalProfile {
 public:
  MarginalProfile(std::vector<std::vector<Rational>> dists, const GameSpec& spec)
      : budget_(spec.budget()), dists_(std::move(dists)) {
    if (static_cast<int>(dists_.size()) != spec.battlefields()) {
      throw PreconditionError("marginal profile needs K distributions");
    }
    for (const auto& d : dists_) {
      if (static_cast<int>(d.size()) != budget_ + 1) {
        throw PreconditionError("marginal distribution needs N+1 bid levels");
      }
      Rational total = 0;
      for (const auto& p : d) {
        if (p < 0) throw PreconditionError("negative marginal probability");
        total += p;
      }
      if (total != 1) throw PreconditionError("marginal distribution sums to " + to_string(total));
    }
  }

  // Uniform on {0, ..., upper} at every battlefield; upper = 2m gives U^m.
  static MarginalProfile uniform(const GameSpec& spec, int upper) {
    return uniform_over(spec, upper, 1, 0);
  }
  static MarginalProfile uniform(const GameSpec& spec) { return uniform(spec, 2 * spec.m()); }
  // U^m_O (odd levels) or U^m_E (even levels) within {0, ..., 2m}.
  static MarginalProfile uniform_parity(const GameSpec& spec, bool odd) {
    return uniform_over(spec, 2 * spec.m(), 2, odd ? 1 : 0);
  }
  static MarginalProfile point_mass(const Allocation& s, const GameSpec& spec) {
    require_matching(s, spec);
    std::vector<std::vector<Rational>> d(
        static_cast<size_t>(spec.battlefields()),
        std::vector<Rational>(static_cast<size_t>(spec.budget()) + 1, Rational(0)));
    for (int k = 0; k < spec.battlefields(); ++k) d[k][s[k]] = 1;
    return MarginalProfile(std::move(d), spec);
  }

  int battlefields() const { return static_cast<int>(dists_.size()); }
  int budget() const { return budget_; }
  const std::vector<Rational>& at(int k) const { return dists_[static_cast<size_t>(k)]; }
  const Rational& probability(int k, int bid) const { return at(k)[static_cast<size_t>(bid)]; }

  Rational expected_bid(int k) const {
    Rational e = 0;
    for (int b = 0; b <= budget_; ++b) e += probability(k, b) * b;
    return e;
  }
  Rational expected_total_bid() const {
    Rational e = 0;
    for (int k = 0; k < battlefields(); ++k) e += expected_bid(k);
    return e;
  }

  friend bool operator==(const MarginalProfile& a, const MarginalProfile& b) {
    return a.budget_ == b.budget_ && a.dists_ == b.dists_;
  }

 private:
  static MarginalProfile uniform_over(const GameSpec& spec, int upper, int step, int first) {
    if (upper > spec.budget()) throw PreconditionError("uniform marginal exceeds budget");
    std::vector<Rational> d(static_cast<size_t>(spec.budget()) + 1, Rational(0));
    int levels = 0;
    for (int b = first; b <= upper; b += step) ++levels;
    if (levels == 0) throw PreconditionError("empty uniform marginal");
    for (int b = first; b <= upper; b += step) d[b] = Rational(1, levels);
    return MarginalProfile(std::vector<std::vector<Rational>>(
                               static_cast<size_t>(spec.battlefields()), d),
                           spec);
  }

  int budget_;
  std::vector<std::vector<Rational>> dists_;
};

struct Atom {
  Allocation allocation;
  Rational probability;
};

// Strategy representations. Generator forms never materialize their support.
struct ExplicitTable {
  std::vector<Atom> atoms;
};

// Uniform over {(j, c-j, j, c-j, ...) : j in splits}: every pair of
// battlefields (1,2), (3,4), ... uses the same split.
struct PairCoupled {
  int pair_sum;
  std::vector<int> splits;
};

// Uniform over {(j_1, c-j_1, ..., j_L, c-j_L)}: each pair splits independently.
// Atom index i encodes the splits in base c+1, first pair most significant.
struct IndependentPairs {
  int pair_sum;
  int pairs;
};

// IndependentPairs with two atoms replaced by two others of equal total
// marginal mass.
struct SwappedPairs {
  IndependentPairs base;
  std::array<std::uint64_t, 2> removed;  // ascending atom indices of base
  std::array<std::vector<int>, 2> added;  // added[i] takes the slot of removed[i]
};

class MixedStrategy {
 public:
  using Representation = std::variant<ExplicitTable, PairCoupled, IndependentPairs, SwappedPairs>;

  static MixedStrategy explicit_table(std::vector<Atom> atoms, const GameSpec& spec,
                                      std::string family = "explicit") {
    if (atoms.empty()) throw PreconditionError("mixed strategy needs a nonempty support");
    Rational total = 0;
    for (const auto& a : atoms) {
      require_matching(a.allocation, spec);
      if (a.probability <= 0) {
        throw PreconditionError("support atom " + a.allocation.str() +
                                " has nonpositive probability");
      }
      total += a.probability;
    }
    if (total != 1) throw PreconditionError("probabilities sum to " + to_string(total));
    std::vector<Allocation> seen;
    seen.reserve(atoms.size());
    for (const auto& a : atoms) seen.push_back(a.allocation);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw PreconditionError("duplicate atom in mixed strategy");
    }
    return MixedStrategy(spec, ExplicitTable{std::move(atoms)}, std::move(family));
  }

  static MixedStrategy pure(const Allocation& s, const GameSpec& spec) {
    return explicit_table({Atom{s, Rational(1)}}, spec, "pure");
  }

  static MixedStrategy pair_coupled(const GameSpec& spec, int pair_sum, std::vector<int> splits,
                                    std::string family) {
    check_pairs(spec, pair_sum);
    if (splits.empty()) throw PreconditionError("pair-coupled strategy needs splits");
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    for (int j : splits) {
      if (j < 0 || j > pair_sum) throw PreconditionError("split outside [0, pair sum]");
    }
    return MixedStrategy(spec, PairCoupled{pair_sum, std::move(splits)}, std::move(family));
  }

  static MixedStrategy independent_pairs(const GameSpec& spec, int pair_sum,
                                         std::string family = "independent") {
    check_pairs(spec, pair_sum);
    IndependentPairs g{pair_sum, spec.battlefields() / 2};
    (void)independent_size(g);  // overflow check
    return MixedStrategy(spec, g, std::move(family));
  }

  static MixedStrategy swapped_pairs(const GameSpec& spec, IndependentPairs base,
                                     std::array<std::uint64_t, 2> removed,
                                     std::array<std::vector<int>, 2> added,
                                     std::string family = "witness") {
    if (removed[0] > removed[1]) {
      std::swap(removed[0], removed[1]);
      std::swap(added[0], added[1]);
    }
    if (removed[0] == removed[1]) throw PreconditionError("swap must remove two distinct atoms");
    for (const auto& a : added) Allocation(a, spec);
    return MixedStrategy(spec, SwappedPairs{base, removed, std::move(added)}, std::move(family));
  }

  const GameSpec& spec() const { return spec_; }
  int budget() const { return spec_.budget(); }
  int battlefields() const { return spec_.battlefields(); }
  const std::string& family() const { return family_; }
  const Representation& representation() const { return rep_; }
  bool is_generator() const { return !std::holds_alternative<ExplicitTable>(rep_); }

  std::uint64_t support_size() const {
    return std::visit(
        [](const auto& r) -> std::uint64_t {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ExplicitTable>) {
            return r.atoms.size();
          } else if constexpr (std::is_same_v<T, PairCoupled>) {
            return r.splits.size();
          } else if constexpr (std::is_same_v<T, IndependentPairs>) {
            return independent_size(r);
          } else {
            return independent_size(r.base);
          }
        },
        rep_);
  }

  Atom atom(std::uint64_t index) const {
    if (index >= support_size()) throw PreconditionError("atom index out of range");
    return std::visit(
        [&](const auto& r) -> Atom {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ExplicitTable>) {
            return r.atoms[index];
          } else if constexpr (std::is_same_v<T, PairCoupled>) {
            std::vector<int> bids(static_cast<size_t>(battlefields()));
            const int j = r.splits[index];
            for (int l = 0; l < battlefields() / 2; ++l) {
              bids[2 * l] = j;
              bids[2 * l + 1] = r.pair_sum - j;
            }
            return Atom{Allocation(std::move(bids), spec_), Rational(1, r.splits.size())};
          } else if constexpr (std::is_same_v<T, IndependentPairs>) {
            return Atom{Allocation(independent_atom(r, index), spec_), independent_probability(r)};
          } else {
            for (int i = 0; i < 2; ++i) {
              if (r.removed[i] == index) {
                return Atom{Allocation(r.added[i], spec_), independent_probability(r.base)};
              }
            }
            return Atom{Allocation(independent_atom(r.base, index), spec_),
                        independent_probability(r.base)};
          }
        },
        rep_);
  }

  template <class Fn>
  void for_each_atom(Fn&& fn) const {
    const std::uint64_t n = support_size();
    for (std::uint64_t i = 0; i < n; ++i) fn(atom(i));
  }

  std::vector<Atom> materialize(std::uint64_t cap = 10'000'000) const {
    if (support_size() > cap) {
      throw EnumerationTooLargeError("support of " + std::to_string(support_size()) +
                                     " atoms exceeds materialization cap");
    }
    std::vector<Atom> out;
    out.reserve(support_size());
    for_each_atom([&](const Atom& a) { out.push_back(a); });
    return out;
  }

  Rational probability_of(const Allocation& s) const {
    if (!s.matches(spec_)) return 0;
    return std::visit(
        [&](const auto& r) -> Rational {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ExplicitTable>) {
            for (const auto& a : r.atoms) {
              if (a.allocation == s) return a.probability;
            }
            return 0;
          } else if constexpr (std::is_same_v<T, PairCoupled>) {
            const int j = s[0];
            if (!std::binary_search(r.splits.begin(), r.splits.end(), j)) return 0;
            for (int l = 0; l < battlefields() / 2; ++l) {
              if (s[2 * l] != j || s[2 * l + 1] != r.pair_sum - j) return 0;
            }
            return Rational(1, r.splits.size());
          } else if constexpr (std::is_same_v<T, IndependentPairs>) {
            return independent_index(r, s) ? independent_probability(r) : Rational(0);
          } else {
            for (const auto& a : r.added) {
              if (std::equal(a.begin(), a.end(), s.begin(), s.end())) {
                return independent_probability(r.base);
              }
            }
            auto idx = independent_index(r.base, s);
            if (!idx || *idx == r.removed[0] || *idx == r.removed[1]) return 0;
            return independent_probability(r.base);
          }
        },
        rep_);
  }

  bool in_support(const Allocation& s) const { return probability_of(s) > 0; }

  // Exact per-battlefield marginals; generator forms are computed
  // analytically rather than by walking the support.
  MarginalProfile marginals() const {
    const int K = battlefields();
    const size_t levels = static_cast<size_t>(budget()) + 1;
    std::vector<std::vector<Rational>> d(static_cast<size_t>(K),
                                         std::vector<Rational>(levels, Rational(0)));
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ExplicitTable>) {
            for (const auto& a : r.atoms) {
              for (int k = 0; k < K; ++k) d[k][a.allocation[k]] += a.probability;
            }
          } else if constexpr (std::is_same_v<T, PairCoupled>) {
            const Rational p(1, r.splits.size());
            for (int j : r.splits) {
              for (int l = 0; l < K / 2; ++l) {
                d[2 * l][j] += p;
                d[2 * l + 1][r.pair_sum - j] += p;
              }
            }
          } else if constexpr (std::is_same_v<T, IndependentPairs>) {
            add_independent(d, r);
          } else {
            add_independent(d, r.base);
            const Rational p = independent_probability(r.base);
            for (int i = 0; i < 2; ++i) {
              const auto gone = independent_atom(r.base, r.removed[i]);
              for (int k = 0; k < K; ++k) {
                d[k][gone[k]] -= p;
                d[k][r.added[i][k]] += p;
              }
            }
          }
        },
        rep_);
    return MarginalProfile(std::move(d), spec_);
  }

 private:
  MixedStrategy(const GameSpec& spec, Representation rep, std::string family)
      : spec_(spec), rep_(std::move(rep)), family_(std::move(family)) {}

  static void check_pairs(const GameSpec& spec, int pair_sum) {
    if (!spec.even_battlefields()) {
      throw PreconditionError("pair constructions need an even number of battlefields; use the "
                              "uniform-marginal solver for odd K");
    }
    if (pair_sum * (spec.battlefields() / 2) != spec.budget()) {
      throw PreconditionError("pair sum " + std::to_string(pair_sum) + " times K/2 must equal N");
    }
  }

  static std::uint64_t independent_size(const IndependentPairs& g) {
    std::uint64_t n = 1;
    const std::uint64_t base = static_cast<std::uint64_t>(g.pair_sum) + 1;
    for (int l = 0; l < g.pairs; ++l) {
      if (n > (std::numeric_limits<std::uint64_t>::max() >> 1) / base) {
        throw OverflowError("independent-pairs support does not fit in 63 bits");
      }
      n *= base;
    }
    return n;
  }

  static Rational independent_probability(const IndependentPairs& g) {
    return Rational(BigInt(1), BigInt(independent_size(g)));
  }

  static std::vector<int> independent_atom(const IndependentPairs& g, std::uint64_t index) {
    const std::uint64_t base = static_cast<std::uint64_t>(g.pair_sum) + 1;
    std::vector<int> bids(static_cast<size_t>(2 * g.pairs));
    for (int l = g.pairs - 1; l >= 0; --l) {
      const int j = static_cast<int>(index % base);
      index /= base;
      bids[2 * l] = j;
      bids[2 * l + 1] = g.pair_sum - j;
    }
    return bids;
  }

  static std::optional<std::uint64_t> independent_index(const IndependentPairs& g,
                                                        const Allocation& s) {
    const std::uint64_t base = static_cast<std::uint64_t>(g.pair_sum) + 1;
    std::uint64_t index = 0;
    for (int l = 0; l < g.pairs; ++l) {
      if (s[2 * l] + s[2 * l + 1] != g.pair_sum) return std::nullopt;
      index = index * base + static_cast<std::uint64_t>(s[2 * l]);
    }
    return index;
  }

  static void add_independent(std::vector<std::vector<Rational>>& d, const IndependentPairs& g) {
    const Rational p(1, g.pair_sum + 1);
    for (size_t k = 0; k < d.size(); ++k) {
      for (int b = 0; b <= g.pair_sum; ++b) d[k][b] += p;
    }
  }

  GameSpec spec_;
  Representation rep_;
  std::string family_;
};

// v(x) = P(b < x) + (alpha/2) P(b = x) for the opponent marginal at one
// battlefield, x in {0, ..., N}.
inline std::vector<Rational> field_value_table(const std::vector<Rational>& opponent,
                                               const GameSpec& spec) {
  const Rational half_alpha = spec.alpha() / 2;
  std::vector<Rational> v(opponent.size());
  Rational below = 0;
  for (size_t x = 0; x < opponent.size(); ++x) {
    v[x] = below + half_alpha * opponent[x];
    below += opponent[x];
  }
  return v;
}

inline void require_matching(const MarginalProfile& m, const GameSpec& spec) {
  if (m.battlefields() != spec.battlefields() || m.budget() != spec.budget()) {
    throw PreconditionError("marginal profile does not match the game");
  }
}

inline void require_matching(const MixedStrategy& s, const GameSpec& spec) {
  if (s.battlefields() != spec.battlefields() || s.budget() != spec.budget()) {
    throw PreconditionError("mixed strategy does not match the game");
  }
}

inline MarginalProfile marginals(const MixedStrategy& sigma, const GameSpec& spec) {
  require_matching(sigma, spec);
  return sigma.marginals();
}

// Payoffs depend only on marginals because the players randomize
// independently.
inline Rational expected_payoff_marginal(const MarginalProfile& self,
                                         const MarginalProfile& opponent, const GameSpec& spec) {
  require_matching(self, spec);
  require_matching(opponent, spec);
  Rational total = 0;
  for (int k = 0; k < spec.battlefields(); ++k) {
    const auto v = field_value_table(opponent.at(k), spec);
    for (int a = 0; a <= spec.budget(); ++a) {
      if (self.probability(k, a) != 0) total += self.probability(k, a) * v[a];
    }
  }
  return total;
}

inline Rational expected_payoff_pure_vs_mixed(const Allocation& s, const MarginalProfile& opponent,
                                              const GameSpec& spec) {
  require_matching(s, spec);
  require_matching(opponent, spec);
  Rational total = 0;
  const Rational half_alpha = spec.alpha() / 2;
  for (int k = 0; k < spec.battlefields(); ++k) {
    const auto& d = opponent.at(k);
    for (int b = 0; b < s[k]; ++b) total += d[b];
    total += half_alpha * d[s[k]];
  }
  return total;
}

inline Rational expected_payoff_pure_vs_mixed(const Allocation& s, const MixedStrategy& sigma,
                                              const GameSpec& spec) {
  return expected_payoff_pure_vs_mixed(s, marginals(sigma, spec), spec);
}

inline Rational expected_payoff(const MixedStrategy& self, const MixedStrategy& opponent,
                                const GameSpec& spec) {
  return expected_payoff_marginal(marginals(self, spec), marginals(opponent, spec), spec);
}

// Draws with an exact integer lookup when the common probability denominator
// fits in 64 bits; otherwise falls back to a 53-bit double CDF search.
inline std::vector<Allocation> sample(const MixedStrategy& sigma, std::uint64_t seed,
                                      std::size_t count) {
  Rng rng(seed);
  std::vector<Allocation> out;
  out.reserve(count);
  const auto& rep = sigma.representation();
  if (const auto* table = std::get_if<ExplicitTable>(&rep)) {
    BigInt common = 1;
    for (const auto& a : table->atoms) {
      common = boost::multiprecision::lcm(common, denominator_of(a.probability));
    }
    if (common <= std::numeric_limits<std::uint64_t>::max()) {
      std::vector<std::uint64_t> cumulative;
      std::uint64_t acc = 0;
      for (const auto& a : table->atoms) {
        acc += (numerator_of(a.probability) * (common / denominator_of(a.probability)))
                   .convert_to<std::uint64_t>();
        cumulative.push_back(acc);
      }
      const auto total = common.convert_to<std::uint64_t>();
      for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t u = rng.below(total);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        out.push_back(table->atoms[static_cast<size_t>(it - cumulative.begin())].allocation);
      }
    } else {
      std::vector<double> cumulative;
      Rational acc = 0;
      for (const auto& a : table->atoms) {
        acc += a.probability;
        cumulative.push_back(to_double(acc));
      }
      for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.unit();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        out.push_back(table->atoms[static_cast<size_t>(it - cumulative.begin())].allocation);
      }
    }
    return out;
  }
  // Generator forms are uniform over their indexed support.
  const std::uint64_t n = sigma.support_size();
  for (std::size_t i = 0; i < count; ++i) out.push_back(sigma.atom(rng.below(n)).allocation);
  return out;
}

// Text format:
//   N K alpha_num alpha_den
//   p_num p_den b_1 ... b_K      (one line per support atom)
// Leading lines starting with '#' are comments.
inline void write_mixed_strategy(std::ostream& os, const MixedStrategy& sigma,
                                 const GameSpec& spec, const std::string& provenance = "",
                                 std::uint64_t cap = 10'000'000) {
  require_matching(sigma, spec);
  if (!provenance.empty()) os << "# " << provenance << "\n";
  os << spec.budget() << " " << spec.battlefields() << " " << numerator_of(spec.alpha()) << " "
     << denominator_of(spec.alpha()) << "\n";
  for (const auto& a : sigma.materialize(cap)) {
    os << numerator_of(a.probability) << " " << denominator_of(a.probability);
    for (int b : a.allocation) os << " " << b;
    os << "\n";
  }
}

struct ParsedMixedStrategy {
  GameSpec spec;
  MixedStrategy strategy;
};

inline ParsedMixedStrategy read_mixed_strategy(std::istream& is) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("mixed-strategy file is empty");
  std::istringstream header(line);
  long long n = 0;
  long long k = 0;
  std::string anum;
  std::string aden;
  if (!(header >> n >> k >> anum >> aden)) throw ParseError("bad header line '" + line + "'");
  const Rational alpha = parse_rational(anum + "/" + aden);
  const bool standard = alpha >= 0 && alpha <= 2;
  GameSpec spec(static_cast<int>(n), static_cast<int>(k), alpha,
                standard ? AlphaRange::kStandard : AlphaRange::kOverride);
  std::vector<Atom> atoms;
  while (next_line()) {
    std::istringstream row(line);
    std::string pnum;
    std::string pden;
    if (!(row >> pnum >> pden)) throw ParseError("bad atom line '" + line + "'");
    std::vector<int> bids;
    long long b = 0;
    while (row >> b) bids.push_back(static_cast<int>(b));
    if (!row.eof()) throw ParseError("bad atom line '" + line + "'");
    atoms.push_back(Atom{Allocation(std::move(bids), spec), parse_rational(pnum + "/" + pden)});
  }
  auto strategy = MixedStrategy::explicit_table(std::move(atoms), spec);
  return {spec, std::move(strategy)};
}

}  // namespace blotto

#endif  // BLOTTO_MIXED_HPP_
