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

#ifndef BLOTTO_GAME_HPP_
#define BLOTTO_GAME_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/rational.hpp"

namespace blotto {

enum class AlphaRange {
  kStandard,  // alpha restricted to [0, 2]
  kOverride,  // any rational alpha (pure-strategy equilibrium experiments)
};

// The game B_alpha(N, K): N resource units spread over K battlefields, ties
// paying alpha/2 to each side.
class GameSpec {
 public:
  GameSpec(int budget, int battlefields, Rational tie_value,
           AlphaRange range = AlphaRange::kStandard)
      : budget_(budget), battlefields_(battlefields), alpha_(std::move(tie_value)), range_(range) {
    if (budget_ < 1) throw InvalidSpecError("budget N must be at least 1");
    if (battlefields_ < 2) throw InvalidSpecError("battlefield count K must be at least 2");
    if (range_ == AlphaRange::kStandard && (alpha_ < 0 || alpha_ > 2)) {
      throw InvalidSpecError("tie value alpha=" + to_string(alpha_) +
                             " outside [0,2]; pass the alpha override to allow it");
    }
  }

  int budget() const { return budget_; }
  int battlefields() const { return battlefields_; }
  const Rational& alpha() const { return alpha_; }
  AlphaRange alpha_range() const { return range_; }

  bool divisible() const { return budget_ % battlefields_ == 0; }
  bool even_battlefields() const { return battlefields_ % 2 == 0; }

  // m = N/K; only defined when K divides N.
  int m() const {
    if (!divisible()) {
      throw PreconditionError("m = N/K undefined: K=" + std::to_string(battlefields_) +
                              " does not divide N=" + std::to_string(budget_));
    }
    return budget_ / battlefields_;
  }

  GameSpec with_alpha(Rational tie_value) const {
    return GameSpec(budget_, battlefields_, std::move(tie_value), range_);
  }

  friend bool operator==(const GameSpec& a, const GameSpec& b) {
    return a.budget_ == b.budget_ && a.battlefields_ == b.battlefields_ && a.alpha_ == b.alpha_;
  }

 private:
  int budget_;
  int battlefields_;
  Rational alpha_;
  AlphaRange range_;
};

inline std::string format_bids(std::span<const int> bids, char sep = ',') {
  std::string out;
  for (size_t i = 0; i < bids.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(bids[i]);
  }
  return out;
}

inline std::vector<int> parse_bids(std::string_view text) {
  std::vector<int> bids;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw ParseError("bad bid '" + item + "'");
      bids.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("bad bid '" + item + "' in '" + std::string(text) + "'");
    }
  }
  return bids;
}

// A pure strategy: K nonnegative bids summing to N. Validated on construction.
class Allocation {
 public:
  Allocation(std::vector<int> bids, const GameSpec& spec) : bids_(std::move(bids)) {
    if (static_cast<int>(bids_.size()) != spec.battlefields()) {
      throw InvalidAllocationError("allocation (" + format_bids(bids_) + ") has " +
                                   std::to_string(bids_.size()) + " components, expected K=" +
                                   std::to_string(spec.battlefields()));
    }
    long long sum = 0;
    for (int b : bids_) {
      if (b < 0) throw InvalidAllocationError("negative bid in (" + format_bids(bids_) + ")");
      sum += b;
    }
    if (sum != spec.budget()) {
      throw InvalidAllocationError("allocation (" + format_bids(bids_) + ") sums to " +
                                   std::to_string(sum) + ", expected N=" +
                                   std::to_string(spec.budget()));
    }
    budget_ = static_cast<int>(sum);
  }

  static Allocation parse(std::string_view text, const GameSpec& spec) {
    return Allocation(parse_bids(text), spec);
  }

  int size() const { return static_cast<int>(bids_.size()); }
  int budget() const { return budget_; }
  int operator[](int k) const { return bids_[static_cast<size_t>(k)]; }
  std::span<const int> bids() const { return bids_; }
  auto begin() const { return bids_.begin(); }
  auto end() const { return bids_.end(); }
  int max_bid() const { return *std::max_element(bids_.begin(), bids_.end()); }
  // Number of battlefields receiving a positive bid (K_+).
  int active_battlefields() const {
    return static_cast<int>(std::count_if(bids_.begin(), bids_.end(), [](int b) { return b > 0; }));
  }

  bool matches(const GameSpec& spec) const {
    return size() == spec.battlefields() && budget_ == spec.budget();
  }

  std::string str() const { return format_bids(bids_); }

  friend auto operator<=>(const Allocation& a, const Allocation& b) { return a.bids_ <=> b.bids_; }
  friend bool operator==(const Allocation& a, const Allocation& b) { return a.bids_ == b.bids_; }

 private:
  std::vector<int> bids_;
  int budget_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Allocation& a) {
  return os << "(" << a.str() << ")";
}

struct BattlefieldOutcome {
  int wins = 0;
  int ties = 0;
  int losses = 0;

  int total() const { return wins + ties + losses; }
  friend bool operator==(const BattlefieldOutcome&, const BattlefieldOutcome&) = default;
};

// 1 for a strict win, alpha/2 for a tie, 0 for a loss.
inline Rational battlefield_value(int a, int b, const GameSpec& spec) {
  if (a > b) return Rational(1);
  if (a == b) return spec.alpha() / 2;
  return Rational(0);
}

inline void require_matching(const Allocation& s, const GameSpec& spec) {
  if (!s.matches(spec)) {
    throw InvalidAllocationError("allocation " + s.str() + " does not belong to B(N=" +
                                 std::to_string(spec.budget()) +
                                 ", K=" + std::to_string(spec.battlefields()) + ")");
  }
}

inline BattlefieldOutcome outcome(const Allocation& s, const Allocation& t, const GameSpec& spec) {
  require_matching(s, spec);
  require_matching(t, spec);
  BattlefieldOutcome o;
  for (int k = 0; k < spec.battlefields(); ++k) {
    if (s[k] > t[k]) {
      ++o.wins;
    } else if (s[k] == t[k]) {
      ++o.ties;
    } else {
      ++o.losses;
    }
  }
  return o;
}

inline Rational payoff(const BattlefieldOutcome& o, const GameSpec& spec) {
  return Rational(o.wins) + spec.alpha() * o.ties / 2;
}

inline Rational payoff(const Allocation& s, const Allocation& t, const GameSpec& spec) {
  return payoff(outcome(s, t, spec), spec);
}

// pi(s,t) + pi(t,s) = K - (1 - alpha) * ties.
inline Rational payoff_sum_identity(const Allocation& s, const Allocation& t,
                                    const GameSpec& spec) {
  return payoff(s, t, spec) + payoff(t, s, spec);
}

}  // namespace blotto

#endif  // BLOTTO_GAME_HPP_
