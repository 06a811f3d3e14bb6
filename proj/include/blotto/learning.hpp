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

#ifndef BLOTTO_LEARNING_HPP_
#define BLOTTO_LEARNING_HPP_

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/game.hpp"
#include "blotto/mixed.hpp"
#include "blotto/rational.hpp"
#include "blotto/separable_dp.hpp"
#include "blotto/strategy_space.hpp"

namespace blotto {

enum class FpMode { kTwoSided, kSelfPlay };
enum class TieBreak { kLexicographic, kRandom };

inline const char* mode_name(FpMode m) {
  return m == FpMode::kTwoSided ? "two-sided" : "self-play";
}

struct FpOptions {
  FpMode mode = FpMode::kTwoSided;
  TieBreak tie_break = TieBreak::kLexicographic;
  std::uint64_t seed = 0;  // only read when tie_break == kRandom
  std::optional<std::vector<int>> init;  // defaults to the most balanced partition
};

struct Discovery {
  Partition partition;
  std::int64_t round;  // 1-based round of first play
};

struct PlayerHistory {
  std::map<Partition, std::int64_t> counts;
  std::vector<std::int64_t> histogram;  // multiplicity of each bid level 0..N
  std::vector<Discovery> discoveries;
  std::optional<Partition> last_played;
};

struct FPState {
  GameSpec spec;
  FpOptions options;
  Partition init;
  std::int64_t round = 0;
  std::vector<PlayerHistory> players;  // one entry in self-play
  std::string rng_state;               // serialized engine, random tie-break only
  std::string provenance;

  // Player 1 reads the shared history in self-play.
  const PlayerHistory& history(int player) const {
    return players[players.size() == 1 ? 0 : static_cast<size_t>(player)];
  }
};

// (m, ..., m) when K divides N; otherwise the lexicographically smallest
// partition, i.e. the most balanced one.
inline Partition balanced_partition(const GameSpec& spec) {
  const int K = spec.battlefields();
  const int base = spec.budget() / K;
  const int extra = spec.budget() % K;
  std::vector<int> parts(static_cast<size_t>(K), base);
  for (int k = 0; k < extra; ++k) ++parts[k];
  return Partition(parts, spec);
}

struct LottoBestResponse {
  Partition partition;
  Rational value;  // expected payoff against the opponent's empirical play
};

// Fictitious play over the Lotto strategy space. Against an empirical
// mixture of partitions the Lotto payoff of x is sum_j v(x_j) with
//   v(x) = (1 / (R K)) sum_b hist(b) value(x, b),
// so every best response is a single budget DP over one shared value table.
// Values are kept as integers scaled by 2 q R K, where alpha = p/q.
class FictitiousPlay {
 public:
  FictitiousPlay(const GameSpec& spec, FpOptions options)
      : state_{spec, std::move(options), balanced_partition(spec), 0, {}, {}, {}} {
    if (state_.options.init) {
      state_.init = Partition(*state_.options.init, spec);
      state_.options.init = std::vector<int>(state_.init.begin(), state_.init.end());
    }
    const size_t n = state_.options.mode == FpMode::kTwoSided ? 2 : 1;
    state_.players.resize(n);
    for (auto& p : state_.players) {
      p.histogram.assign(static_cast<size_t>(spec.budget()) + 1, 0);
    }
    if (state_.options.tie_break == TieBreak::kRandom) rng_.emplace(state_.options.seed);
  }

  explicit FictitiousPlay(FPState resumed) : state_(std::move(resumed)) {
    if (state_.options.tie_break == TieBreak::kRandom) {
      rng_.emplace(state_.options.seed);
      if (!state_.rng_state.empty()) {
        std::istringstream is(state_.rng_state);
        is >> rng_->engine();
      }
    }
  }

  const FPState& state() const { return state_; }
  FPState snapshot() const {
    FPState copy = state_;
    if (rng_) {
      std::ostringstream os;
      os << rng_->engine();
      copy.rng_state = os.str();
    }
    return copy;
  }
  void set_provenance(std::string p) { state_.provenance = std::move(p); }

  void step() {
    if (state_.round >= std::numeric_limits<std::int64_t>::max() / (2 * state_.spec.battlefields())) {
      throw OverflowError("fictitious play round counter overflow");
    }
    if (state_.round == 0) {
      for (size_t i = 0; i < state_.players.size(); ++i) record(i, state_.init);
    } else if (state_.players.size() == 2) {
      // Simultaneous update: both respond to round-r beliefs.
      Partition a = respond(state_.players[1], rng_ptr()).partition;
      Partition b = respond(state_.players[0], rng_ptr()).partition;
      record(0, a);
      record(1, b);
    } else {
      Partition a = respond(state_.players[0], rng_ptr()).partition;
      record(0, a);
    }
    ++state_.round;
  }

  // Plays until `total_rounds`; `observer` fires after every `every`-th round
  // and after the last one.
  void run_until(std::int64_t total_rounds, std::int64_t every = 0,
                 const std::function<void(const FictitiousPlay&)>& observer = {}) {
    while (state_.round < total_rounds) {
      step();
      if (observer && ((every > 0 && state_.round % every == 0) || state_.round == total_rounds)) {
        observer(*this);
      }
    }
  }

  // Best response of `player` to the opponent's current empirical play.
  LottoBestResponse best_response(int player) const {
    if (state_.round == 0) throw PreconditionError("no history yet");
    Scaled s = respond(state_.history(1 - player), nullptr);
    return {s.partition, Rational(to_big(s.value), scale())};
  }

  // Expected Lotto payoff of `player`'s empirical mixture against the
  // opponent's.
  Rational empirical_payoff(int player) const {
    if (state_.round == 0) throw PreconditionError("no history yet");
    const auto& self = state_.history(player).histogram;
    const auto table = scaled_table(state_.history(1 - player));
    BigInt acc = 0;
    for (size_t x = 0; x < self.size(); ++x) {
      if (self[x] != 0) acc += BigInt(self[x]) * BigInt(table[x]);
    }
    return Rational(acc, scale() * BigInt(state_.round));
  }

 private:
  BigInt scale() const {
    return BigInt(2) * denominator_of(state_.spec.alpha()) * BigInt(state_.round) *
           BigInt(state_.spec.battlefields());
  }

  // S(x) = 2q * #(opponent bids < x) + p * #(opponent bids == x).
  std::vector<__int128> scaled_table(const PlayerHistory& opp) const {
    const auto p = static_cast<__int128>(numerator_of(state_.spec.alpha()).convert_to<long long>());
    const auto q2 =
        2 * static_cast<__int128>(denominator_of(state_.spec.alpha()).convert_to<long long>());
    std::vector<__int128> t(opp.histogram.size());
    __int128 below = 0;
    for (size_t x = 0; x < t.size(); ++x) {
      t[x] = q2 * below + p * opp.histogram[x];
      below += opp.histogram[x];
    }
    return t;
  }

  Rng* rng_ptr() { return rng_ ? &*rng_ : nullptr; }

  // Random tie-breaking when an engine is supplied, lexicographic otherwise.
  template <class Value>
  std::vector<int> solve(const std::vector<__int128>& table, Value* optimum, Rng* rng) const {
    const int K = state_.spec.battlefields();
    std::vector<Value> narrow(table.begin(), table.end());
    SeparableDp<Value> dp(std::vector<std::vector<Value>>(static_cast<size_t>(K), narrow),
                          state_.spec.budget(), Sense::kMaximize);
    *optimum = dp.optimum();
    if (rng) return sample_argmax(dp, *rng);
    return dp.argopt();
  }

  // Uniform over maximizing allocations via counts of optimal completions.
  template <class Value>
  static std::vector<int> sample_argmax(const SeparableDp<Value>& dp, Rng& rng) {
    using Count = unsigned __int128;
    const int K = dp.fields();
    const int N = dp.budget();
    const Count limit = static_cast<Count>(1) << 120;
    std::vector<std::vector<Count>> count(static_cast<size_t>(K),
                                          std::vector<Count>(static_cast<size_t>(N) + 1, 0));
    for (int r = 0; r <= N; ++r) count[K - 1][r] = 1;
    for (int k = K - 2; k >= 0; --k) {
      for (int r = 0; r <= N; ++r) {
        Count c = 0;
        for (int x = 0; x <= r; ++x) {
          if (dp.table(k)[x] + dp.suffix(k + 1, r - x) == dp.suffix(k, r)) c += count[k + 1][r - x];
        }
        if (c > limit) throw OverflowError("argmax count overflow");
        count[k][r] = c;
      }
    }
    std::vector<int> out(static_cast<size_t>(K));
    int r = N;
    for (int k = 0; k < K - 1; ++k) {
      Count total = count[k][r];
      // Draw u uniform in [0, total) from two 64-bit words.
      Count u;
      if (total <= std::numeric_limits<std::uint64_t>::max()) {
        u = rng.below(static_cast<std::uint64_t>(total));
      } else {
        const Count bound = total;
        const Count cap = ~static_cast<Count>(0) - (~static_cast<Count>(0) % bound);
        do {
          u = (static_cast<Count>(rng.next()) << 64) | rng.next();
        } while (u >= cap);
        u %= bound;
      }
      for (int x = 0; x <= r; ++x) {
        if (dp.table(k)[x] + dp.suffix(k + 1, r - x) != dp.suffix(k, r)) continue;
        if (u < count[k + 1][r - x]) {
          out[k] = x;
          break;
        }
        u -= count[k + 1][r - x];
      }
      r -= out[k];
    }
    out[K - 1] = r;
    return out;
  }

  struct Scaled {
    Partition partition;
    __int128 value;
  };

  Scaled respond(const PlayerHistory& opp, Rng* rng) const {
    const auto table = scaled_table(opp);
    const int K = state_.spec.battlefields();
    const __int128 p = static_cast<__int128>(
        boost::multiprecision::abs(numerator_of(state_.spec.alpha())).convert_to<long long>());
    const __int128 q2 =
        2 * static_cast<__int128>(denominator_of(state_.spec.alpha()).convert_to<long long>());
    // |sum_k S(x_k)| <= K * (2q + |p|) * R * K
    const __int128 bound = static_cast<__int128>(K) * (q2 + p) * state_.round * K;
    std::vector<int> bids;
    __int128 value = 0;
    if (bound < (static_cast<__int128>(1) << 62)) {
      std::int64_t v = 0;
      bids = solve<std::int64_t>(table, &v, rng);
      value = v;
    } else if (bound < (static_cast<__int128>(1) << 124)) {
      bids = solve<__int128>(table, &value, rng);
    } else {
      throw OverflowError("scaled fictitious-play payoffs exceed 128 bits");
    }
    return {Partition(Allocation(bids, state_.spec)), value};
  }

  static BigInt to_big(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<std::uint64_t>(u >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(u & 0xffffffffffffffffULL);
    return neg ? BigInt(-out) : out;
  }

  void record(size_t player, const Partition& p) {
    PlayerHistory& h = state_.players[player];
    auto [it, inserted] = h.counts.try_emplace(p, 0);
    ++it->second;
    if (inserted) h.discoveries.push_back({p, state_.round + 1});
    for (int b : p) ++h.histogram[static_cast<size_t>(b)];
    h.last_played = p;
  }

  FPState state_;
  std::optional<Rng> rng_;
};

inline FPState fp_run(const GameSpec& spec, std::int64_t rounds, const FpOptions& options = {}) {
  if (rounds < 1) throw PreconditionError("fictitious play needs at least one round");
  FictitiousPlay fp(spec, options);
  fp.run_until(rounds);
  return fp.snapshot();
}

// ---------------------------------------------------------------------------
// Reporting.

struct RankRow {
  int rank;
  Partition partition;
  Rational probability;
  std::int64_t first_round;
};

struct RankReport {
  std::vector<RankRow> rows;
  std::size_t support_size = 0;
  std::int64_t rounds = 0;
};

namespace detail {

inline std::vector<const std::pair<const Partition, std::int64_t>*> ranked_entries(
    const PlayerHistory& h) {
  std::vector<const std::pair<const Partition, std::int64_t>*> order;
  order.reserve(h.counts.size());
  for (const auto& e : h.counts) order.push_back(&e);
  // Probability descending, then partition ascending (map order is stable).
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->second > b->second; });
  return order;
}

}  // namespace detail

inline RankReport rank_report(const FPState& state, int top, int player = 0) {
  if (state.round == 0) throw PreconditionError("rank report needs at least one round");
  const PlayerHistory& h = state.history(player);
  std::map<Partition, std::int64_t> first;
  for (const auto& d : h.discoveries) first.emplace(d.partition, d.round);
  RankReport out;
  out.support_size = h.counts.size();
  out.rounds = state.round;
  const auto order = detail::ranked_entries(h);
  const size_t n = std::min<size_t>(order.size(), static_cast<size_t>(std::max(top, 0)));
  for (size_t i = 0; i < n; ++i) {
    out.rows.push_back({static_cast<int>(i) + 1, order[i]->first,
                        Rational(order[i]->second, state.round), first.at(order[i]->first)});
  }
  return out;
}

// 1-based rank of `p` in the learned mixture, if it was ever played.
inline std::optional<int> rank_of(const FPState& state, const Partition& p, int player = 0) {
  const auto order = detail::ranked_entries(state.history(player));
  for (size_t i = 0; i < order.size(); ++i) {
    if (order[i]->first == p) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

// 1-based position of `p` among newly created best responses.
inline std::optional<int> discovery_position(const FPState& state, const Partition& p,
                                             int player = 0) {
  const auto& log = state.history(player).discoveries;
  for (size_t i = 0; i < log.size(); ++i) {
    if (log[i].partition == p) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

inline void write_rank_report_csv(std::ostream& os, const RankReport& report,
                                  const std::string& provenance = "") {
  if (!provenance.empty()) os << "# " << provenance << "\n";
  os << "rank,partition,probability,first_round\n";
  for (const auto& r : report.rows) {
    os << r.rank << "," << r.partition.str('-') << "," << to_string(r.probability) << ","
       << r.first_round << "\n";
  }
}

struct TracePoint {
  std::int64_t round;
  Rational tv_a;
  Rational tv_b;
  Rational gap_a;
  Rational gap_b;
};

// Total variation between the normalized aggregated bid histogram and U^m;
// mass above 2m counts fully toward the distance.
inline Rational tv_to_uniform(const std::vector<std::int64_t>& histogram, const GameSpec& spec) {
  const int two_m = 2 * spec.m();
  std::int64_t total = 0;
  for (auto c : histogram) total += c;
  if (total == 0) throw PreconditionError("empty histogram");
  const Rational u(1, two_m + 1);
  Rational sum = 0;
  for (size_t b = 0; b < histogram.size(); ++b) {
    const Rational f(histogram[b], total);
    if (static_cast<int>(b) <= two_m) {
      sum += f > u ? Rational(f - u) : Rational(u - f);
    } else {
      sum += f;
    }
  }
  return sum / 2;
}

inline TracePoint trace_point(const FictitiousPlay& fp) {
  const FPState& s = fp.state();
  TracePoint t{s.round, tv_to_uniform(s.history(0).histogram, s.spec),
               tv_to_uniform(s.history(1).histogram, s.spec), 0, 0};
  t.gap_a = fp.best_response(0).value - fp.empirical_payoff(0);
  t.gap_b = fp.best_response(1).value - fp.empirical_payoff(1);
  return t;
}

// Runs fictitious play and samples the convergence diagnostics every `every`
// rounds (and at the final round).
inline std::vector<TracePoint> fp_convergence_trace(FictitiousPlay& fp, std::int64_t total_rounds,
                                                    std::int64_t every) {
  (void)fp.state().spec.m();  // U^m must exist
  std::vector<TracePoint> out;
  fp.run_until(total_rounds, every, [&](const FictitiousPlay& f) { out.push_back(trace_point(f)); });
  return out;
}

inline void write_trace_csv_header(std::ostream& os, const std::string& provenance = "") {
  if (!provenance.empty()) os << "# " << provenance << "\n";
  os << "round,tv_a,tv_b,gap_a,gap_b\n";
}

inline void write_trace_csv_row(std::ostream& os, const TracePoint& t) {
  std::ostringstream line;
  line.precision(12);
  line << t.round << "," << to_double(t.tv_a) << "," << to_double(t.tv_b) << ","
       << to_double(t.gap_a) << "," << to_double(t.gap_b) << "\n";
  os << line.str();
}

// ---------------------------------------------------------------------------
// Versioned binary checkpoints (little-endian, fixed-width fields).

inline constexpr char kCheckpointMagic[8] = {'B', 'L', 'O', 'T', 'T', 'O', 'F', 'P'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

namespace detail {

class ByteWriter {
 public:
  template <class T>
  void put(T v) {
    static_assert(std::is_integral_v<T>);
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(v);
    for (size_t i = 0; i < sizeof(T); ++i) {
      bytes_.push_back(static_cast<char>(u & 0xff));
      u = static_cast<U>(u >> 8);
    }
  }
  void put_string(const std::string& s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    bytes_ += s;
  }
  void put_parts(const Partition& p) {
    for (int b : p) put<std::int32_t>(b);
  }
  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string bytes) : bytes_(std::move(bytes)) {}
  template <class T>
  T get() {
    static_assert(std::is_integral_v<T>);
    using U = std::make_unsigned_t<T>;
    need(sizeof(T));
    U u = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
      u = static_cast<U>(u | (static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i)));
    }
    pos_ += sizeof(T);
    return static_cast<T>(u);
  }
  std::string get_string() {
    const auto n = get<std::uint32_t>();
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<int> get_parts(int k) {
    std::vector<int> v(static_cast<size_t>(k));
    for (auto& b : v) b = get<std::int32_t>();
    return v;
  }
  std::string get_raw(size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(size_t n) const {
    if (pos_ + n > bytes_.size()) throw ParseError("truncated checkpoint");
  }
  std::string bytes_;
  size_t pos_ = 0;
};

}  // namespace detail

inline std::string serialize_checkpoint(const FPState& s) {
  detail::ByteWriter w;
  std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
  w.put<std::uint32_t>(kCheckpointVersion);
  w.put<std::int32_t>(s.spec.budget());
  w.put<std::int32_t>(s.spec.battlefields());
  w.put<std::int64_t>(numerator_of(s.spec.alpha()).convert_to<std::int64_t>());
  w.put<std::int64_t>(denominator_of(s.spec.alpha()).convert_to<std::int64_t>());
  w.put<std::uint8_t>(s.spec.alpha_range() == AlphaRange::kOverride ? 1 : 0);
  w.put<std::uint8_t>(s.options.mode == FpMode::kTwoSided ? 0 : 1);
  w.put<std::uint8_t>(s.options.tie_break == TieBreak::kLexicographic ? 0 : 1);
  w.put<std::uint64_t>(s.options.seed);
  w.put_parts(s.init);
  w.put<std::int64_t>(s.round);
  w.put_string(s.provenance);
  w.put_string(s.rng_state);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(s.players.size()));
  for (const auto& p : s.players) {
    for (auto c : p.histogram) w.put<std::int64_t>(c);
    w.put<std::uint64_t>(p.counts.size());
    for (const auto& [part, c] : p.counts) {
      w.put_parts(part);
      w.put<std::int64_t>(c);
    }
    w.put<std::uint64_t>(p.discoveries.size());
    for (const auto& d : p.discoveries) {
      w.put_parts(d.partition);
      w.put<std::int64_t>(d.round);
    }
    w.put<std::uint8_t>(p.last_played ? 1 : 0);
    if (p.last_played) w.put_parts(*p.last_played);
  }
  return out + w.bytes();
}

inline FPState deserialize_checkpoint(const std::string& bytes) {
  detail::ByteReader r(bytes);
  if (r.get_raw(sizeof(kCheckpointMagic)) != std::string(kCheckpointMagic, sizeof(kCheckpointMagic))) {
    throw ParseError("not a fictitious-play checkpoint");
  }
  if (const auto v = r.get<std::uint32_t>(); v != kCheckpointVersion) {
    throw ParseError("unsupported checkpoint version " + std::to_string(v));
  }
  const int n = r.get<std::int32_t>();
  const int k = r.get<std::int32_t>();
  const auto anum = r.get<std::int64_t>();
  const auto aden = r.get<std::int64_t>();
  const auto range = r.get<std::uint8_t>() ? AlphaRange::kOverride : AlphaRange::kStandard;
  GameSpec spec(n, k, Rational(anum, aden), range);
  FpOptions opt;
  opt.mode = r.get<std::uint8_t>() ? FpMode::kSelfPlay : FpMode::kTwoSided;
  opt.tie_break = r.get<std::uint8_t>() ? TieBreak::kRandom : TieBreak::kLexicographic;
  opt.seed = r.get<std::uint64_t>();
  Partition init(r.get_parts(k), spec);
  opt.init = std::vector<int>(init.begin(), init.end());
  FPState s{spec, opt, init, r.get<std::int64_t>(), {}, {}, {}};
  s.provenance = r.get_string();
  s.rng_state = r.get_string();
  const auto players = r.get<std::uint32_t>();
  if (players != (opt.mode == FpMode::kTwoSided ? 2u : 1u)) throw ParseError("bad player count");
  s.players.resize(players);
  for (auto& p : s.players) {
    p.histogram.resize(static_cast<size_t>(n) + 1);
    for (auto& c : p.histogram) c = r.get<std::int64_t>();
    const auto entries = r.get<std::uint64_t>();
    for (std::uint64_t i = 0; i < entries; ++i) {
      Partition part(r.get_parts(k), spec);
      p.counts.emplace(std::move(part), r.get<std::int64_t>());
    }
    const auto found = r.get<std::uint64_t>();
    for (std::uint64_t i = 0; i < found; ++i) {
      Partition part(r.get_parts(k), spec);
      p.discoveries.push_back({std::move(part), r.get<std::int64_t>()});
    }
    if (r.get<std::uint8_t>()) p.last_played = Partition(r.get_parts(k), spec);
  }
  if (!r.done()) throw ParseError("trailing bytes in checkpoint");
  return s;
}

inline void save_checkpoint(const FPState& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BlottoError("cannot write checkpoint " + path);
  const std::string bytes = serialize_checkpoint(s);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw BlottoError("failed writing checkpoint " + path);
}

inline FPState load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open checkpoint " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_checkpoint(buf.str());
}

}  // namespace blotto

#endif  // BLOTTO_LEARNING_HPP_
