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

#ifndef BLOTTO_SEPARABLE_DP_HPP_
#define BLOTTO_SEPARABLE_DP_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "blotto/errors.hpp"

namespace blotto {

enum class Sense { kMaximize, kMinimize };

// Optimizes sum_k table[k][x_k] over nonnegative integer vectors with
// sum_k x_k == budget, by dynamic programming on (battlefield, budget left).
// O(K * N^2) additions; Value is any exactly ordered additive type.
template <class Value>
class SeparableDp {
 public:
  SeparableDp(std::vector<std::vector<Value>> tables, int budget, Sense sense)
      : tables_(std::move(tables)), budget_(budget), sense_(sense) {
    const int K = fields();
    if (K < 1) throw PreconditionError("separable DP needs at least one field");
    for (const auto& t : tables_) {
      if (static_cast<int>(t.size()) != budget_ + 1) {
        throw PreconditionError("value table must cover bids 0..N");
      }
    }
    const size_t width = static_cast<size_t>(budget_) + 1;
    suffix_.resize(static_cast<size_t>(K) * width);
    for (int r = 0; r <= budget_; ++r) at(K - 1, r) = tables_[K - 1][r];
    for (int k = K - 2; k >= 0; --k) {
      const auto& t = tables_[k];
      for (int r = 0; r <= budget_; ++r) {
        Value best = t[0] + at(k + 1, r);
        for (int x = 1; x <= r; ++x) {
          Value c = t[x] + at(k + 1, r - x);
          if (better(c, best)) best = std::move(c);
        }
        at(k, r) = std::move(best);
      }
    }
  }

  int fields() const { return static_cast<int>(tables_.size()); }
  int budget() const { return budget_; }
  const Value& optimum() const { return suffix(0, budget_); }
  // Optimum over battlefields k..K-1 spending exactly r units.
  const Value& suffix(int k, int r) const {
    return suffix_[static_cast<size_t>(k) * (static_cast<size_t>(budget_) + 1) +
                   static_cast<size_t>(r)];
  }
  const std::vector<Value>& table(int k) const { return tables_[static_cast<size_t>(k)]; }

  // Lexicographically smallest optimizer.
  std::vector<int> argopt() const {
    const int K = fields();
    std::vector<int> x(static_cast<size_t>(K), 0);
    int r = budget_;
    for (int k = 0; k < K - 1; ++k) {
      const Value& target = suffix(k, r);
      for (int v = 0; v <= r; ++v) {
        if (tables_[k][v] + suffix(k + 1, r - v) == target) {
          x[k] = v;
          break;
        }
      }
      r -= x[k];
    }
    x[K - 1] = r;
    return x;
  }

 private:
  bool better(const Value& a, const Value& b) const {
    return sense_ == Sense::kMaximize ? b < a : a < b;
  }
  Value& at(int k, int r) {
    return suffix_[static_cast<size_t>(k) * (static_cast<size_t>(budget_) + 1) +
                   static_cast<size_t>(r)];
  }

  std::vector<std::vector<Value>> tables_;
  int budget_;
  Sense sense_;
  std::vector<Value> suffix_;
};

}  // namespace blotto

#endif  // BLOTTO_SEPARABLE_DP_HPP_
