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

#ifndef BLOTTO_STRATEGY_SPACE_HPP_
#define BLOTTO_STRATEGY_SPACE_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/game.hpp"
#include "blotto/rational.hpp"

namespace blotto {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// A Colonel Lotto pure strategy: the bids of an allocation sorted descending
// (zero-padded to length K).
class Partition {
 public:
  Partition(std::vector<int> parts, const GameSpec& spec) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    Allocation check(parts_, spec);  // validates length, sign and sum
    (void)check;
  }
  explicit Partition(const Allocation& a) : parts_(a.begin(), a.end()) {
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  int size() const { return static_cast<int>(parts_.size()); }
  int operator[](int k) const { return parts_[static_cast<size_t>(k)]; }
  std::span<const int> parts() const { return parts_; }
  auto begin() const { return parts_.begin(); }
  auto end() const { return parts_.end(); }
  int active_parts() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int b) { return b > 0; }));
  }

  Allocation as_allocation(const GameSpec& spec) const { return Allocation(parts_, spec); }
  // Dash-separated form used in rank reports, e.g. "20-20-20-20-20-20".
  std::string str(char sep = '-') const { return format_bids(parts_, sep); }

  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }
  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) {
  return os << "(" << p.str(',') << ")";
}

struct StrategyCount {
  BigInt ordered;
  BigInt unordered;
};

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// |S| = C(N+K-1, K-1).
inline BigInt count_ordered(const GameSpec& spec) {
  return binomial(spec.budget() + spec.battlefields() - 1, spec.battlefields() - 1);
}

namespace detail {

class PartitionMemo {
 public:
  BigInt get(int n, int k) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find({n, k}); it != table_.end()) return it->second;
    }
    BigInt value = compute(n, k);
    std::unique_lock lock(mutex_);
    table_.emplace(std::make_pair(n, k), value);
    return value;
  }

 private:
  // Bottom-up fill of p(i, j) for j <= k, so no recursion depth issues.
  BigInt compute(int n, int k) {
    if (k < 1 || n < 0) return 0;
    if (k > n) return 0;
    std::vector<std::vector<BigInt>> p(static_cast<size_t>(n) + 1,
                                       std::vector<BigInt>(static_cast<size_t>(k) + 1, 0));
    for (int i = 1; i <= n; ++i) {
      p[i][1] = 1;
      for (int j = 2; j <= std::min(i, k); ++j) {
        p[i][j] = p[i - 1][j - 1] + (i - j >= j ? p[i - j][j] : BigInt(0));
      }
    }
    return p[n][k];
  }

  std::shared_mutex mutex_;
  std::map<std::pair<int, int>, BigInt> table_;
};

inline PartitionMemo& partition_memo() {
  static PartitionMemo memo;
  return memo;
}

}  // namespace detail

// Partitions of n into exactly k positive parts via
// p(n,k) = p(n-1,k-1) + p(n-k,k), p(n,1) = 1, p(n,k) = 0 for k > n.
inline BigInt count_partitions(int n, int k) {
  if (n < 0 || k < 1) throw PreconditionError("count_partitions needs n >= 0 and k >= 1");
  return detail::partition_memo().get(n, k);
}

inline BigInt count_lotto(const GameSpec& spec) {
  return count_partitions(spec.budget() + spec.battlefields(), spec.battlefields());
}

inline StrategyCount count_strategies(const GameSpec& spec) {
  return {count_ordered(spec), count_lotto(spec)};
}

namespace detail {

inline void check_cap(const BigInt& count, std::uint64_t cap, const char* what) {
  if (count > cap) {
    throw EnumerationTooLargeError(std::string(what) + " enumeration of " + count.str() +
                                   " items exceeds cap " + std::to_string(cap));
  }
}

template <class Fn>
void allocations_rec(std::vector<int>& cur, int k, int remaining, const GameSpec& spec, Fn& fn) {
  const int K = spec.battlefields();
  if (k == K - 1) {
    cur[k] = remaining;
    fn(Allocation(cur, spec));
    return;
  }
  for (int x = 0; x <= remaining; ++x) {
    cur[k] = x;
    allocations_rec(cur, k + 1, remaining - x, spec, fn);
  }
}

template <class Fn>
void partitions_rec(std::vector<int>& cur, int k, int remaining, int max_part,
                    const GameSpec& spec, Fn& fn) {
  const int K = spec.battlefields();
  if (k == K - 1) {
    cur[k] = remaining;
    fn(Partition(cur, spec));
    return;
  }
  const int slots = K - k;
  const int lowest = (remaining + slots - 1) / slots;  // largest part can't be below the mean
  for (int x = std::min(remaining, max_part); x >= lowest; --x) {
    cur[k] = x;
    partitions_rec(cur, k + 1, remaining - x, x, spec, fn);
  }
}

}  // namespace detail

// Streams every allocation in lexicographic order: (0,...,0,N) first.
template <class Fn>
void for_each_allocation(const GameSpec& spec, Fn&& fn,
                         std::uint64_t cap = kDefaultEnumerationCap) {
  detail::check_cap(count_ordered(spec), cap, "allocation");
  std::vector<int> cur(static_cast<size_t>(spec.battlefields()), 0);
  detail::allocations_rec(cur, 0, spec.budget(), spec, fn);
}

// Streams every partition, parts descending, in descending lexicographic
// order: (N,0,...,0) first.
template <class Fn>
void for_each_partition(const GameSpec& spec, Fn&& fn,
                        std::uint64_t cap = kDefaultEnumerationCap) {
  detail::check_cap(count_lotto(spec), cap, "partition");
  std::vector<int> cur(static_cast<size_t>(spec.battlefields()), 0);
  detail::partitions_rec(cur, 0, spec.budget(), spec.budget(), spec, fn);
}

inline std::vector<Allocation> enumerate_allocations(const GameSpec& spec,
                                                     std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Allocation> out;
  for_each_allocation(spec, [&](const Allocation& a) { out.push_back(a); }, cap);
  return out;
}

inline std::vector<Partition> enumerate_partitions(const GameSpec& spec,
                                                   std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Partition> out;
  for_each_partition(spec, [&](const Partition& p) { out.push_back(p); }, cap);
  return out;
}

// Expected Blotto payoff when battlefields are matched uniformly at random:
// (1/K) * sum_{j,k} value(p_j, q_k).
inline Rational lotto_payoff(const Partition& p, const Partition& q, const GameSpec& spec) {
  const int K = spec.battlefields();
  if (p.size() != K || q.size() != K) {
    throw InvalidAllocationError("partition length does not match K");
  }
  long long wins = 0;
  long long ties = 0;
  for (int a : p) {
    for (int b : q) {
      if (a > b) {
        ++wins;
      } else if (a == b) {
        ++ties;
      }
    }
  }
  return (Rational(wins) + spec.alpha() * ties / 2) / K;
}

}  // namespace blotto

#endif  // BLOTTO_STRATEGY_SPACE_HPP_
