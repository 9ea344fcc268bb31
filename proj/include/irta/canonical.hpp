#pragma once

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "irta/acceptor.hpp"

namespace irta {

// Partition of acceptor states; refined until transitions respect blocks.
struct StatePartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;  // state id -> block index
  int iteration = 0;
};

// Moore-style refinement: start from (region, acceptance) blocks, then split
// by the successor blocks under every symbolic letter until stable.
inline StatePartition stable_partition(const KAcceptor& b) {
  const SymbolicDfa dfa = to_symbolic_dfa(b);
  const int n = static_cast<int>(b.num_states());

  StatePartition part;
  part.block_of.assign(n, 0);
  {
    std::map<std::pair<RegionIndex, bool>, int> key_to_block;
    for (int q = 0; q < n; ++q) {
      const auto key = std::make_pair(b.region(q), dfa.accepting[q] != 0);
      auto [it, fresh] = key_to_block.emplace(key, key_to_block.size());
      part.block_of[q] = it->second;
    }
  }

  int block_count = 0;
  for (int v : part.block_of) block_count = std::max(block_count, v + 1);
  for (;;) {
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{part.block_of[q]};
      for (std::size_t li = 0; li < dfa.letters.size(); ++li)
        sig.push_back(part.block_of[dfa.step(q, li)]);
      auto [it, fresh] = sig_to_block.emplace(std::move(sig), sig_to_block.size());
      next[q] = it->second;
    }
    const int next_count = static_cast<int>(sig_to_block.size());
    if (next_count == block_count) break;
    part.block_of = std::move(next);
    block_count = next_count;
    ++part.iteration;
  }

  part.blocks.assign(block_count, {});
  for (int q = 0; q < n; ++q) part.blocks[part.block_of[q]].push_back(q);
  return part;
}

// Quotient by the stable partition: the canonical (minimal) K-acceptor for
// the language among all acceptors with this K.
inline KAcceptor minimize(const KAcceptor& b) {
  const StatePartition part = stable_partition(b);

  KAcceptor out;
  out.k = b.k;
  out.ta.alphabet = b.ta.alphabet;
  for (std::size_t blk = 0; blk < part.blocks.size(); ++blk) {
    const int rep = part.blocks[blk][0];
    out.ta.add_state(b.ta.states[rep].name, b.ta.states[rep].accepting);
    out.region_map.push_back(b.region(rep));
  }
  out.ta.initial = part.block_of[b.ta.initial];
  std::set<std::tuple<int, int, std::string, Guard, int>> dedup;
  for (const auto& t : b.ta.transitions) {
    Transition nt = t;
    nt.from = part.block_of[t.from];
    nt.to = part.block_of[t.to];
    auto key = std::make_tuple(nt.from, nt.to, nt.symbol, nt.guard, nt.reset);
    if (dedup.insert(key).second) out.ta.transitions.push_back(nt);
  }
  KAcceptor pruned = out;
  pruned.ta = prune_unreachable(out.ta);
  pruned.region_map.clear();
  {
    // prune_unreachable renumbers; rebuild the region annotation by name-free
    // reachability over the quotient.
    std::vector<char> seen(out.ta.states.size(), 0);
    std::deque<int> queue{out.ta.initial};
    seen[out.ta.initial] = 1;
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      for (const auto& t : out.ta.transitions)
        if (t.from == q && !seen[t.to]) {
          seen[t.to] = 1;
          queue.push_back(t.to);
        }
    }
    for (std::size_t q = 0; q < out.ta.states.size(); ++q)
      if (seen[q]) pruned.region_map.push_back(out.region_map[q]);
  }
  pruned.sink = detail::find_dead_state(pruned.ta);
  return pruned;
}

// Shortest (then lexicographically least) small half-integral word telling
// two same-region states apart, or nothing when the states are equivalent.
inline std::optional<TimedWord> distinguishing_word(const KAcceptor& b, int p,
                                                    int q) {
  if (p < 0 || q < 0 || p >= static_cast<int>(b.num_states()) ||
      q >= static_cast<int>(b.num_states()))
    throw std::invalid_argument("distinguishing_word: no such state");
  if (b.region(p) != b.region(q))
    throw std::invalid_argument(
        "distinguishing_word: states carry different regions");
  const SymbolicDfa dfa = to_symbolic_dfa(b);

  std::map<std::pair<int, int>, std::optional<std::pair<std::pair<int, int>, std::size_t>>>
      parent;
  std::deque<std::pair<int, int>> queue;
  const auto start = std::make_pair(p, q);
  parent.emplace(start, std::nullopt);
  queue.push_back(start);
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    if ((dfa.accepting[cur.first] != 0) != (dfa.accepting[cur.second] != 0)) {
      std::vector<std::size_t> letters;
      auto node = cur;
      for (;;) {
        const auto& link = parent.at(node);
        if (!link) break;
        letters.push_back(link->second);
        node = link->first;
      }
      TimedWord w;
      for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        w.letters.push_back(dfa.letters[*it]);
      return w;
    }
    for (std::size_t li = 0; li < dfa.letters.size(); ++li) {
      const auto nxt =
          std::make_pair(dfa.step(cur.first, li), dfa.step(cur.second, li));
      if (parent.emplace(nxt, std::make_pair(cur, li)).second)
        queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

// Language comparison of two K-acceptors by breadth-first search over the
// product of their symbolic views. Agreement on all small half-integral
// words implies agreement on every timed word, so the result is either
// "equivalent" or a shortest (lexicographically least) half-integral
// counterexample.
inline std::optional<TimedWord> equivalent(const KAcceptor& b1,
                                           const KAcceptor& b2) {
  if (b1.k != b2.k)
    throw std::invalid_argument("equivalent: acceptors use different constants");
  auto alpha1 = b1.ta.alphabet, alpha2 = b2.ta.alphabet;
  std::sort(alpha1.begin(), alpha1.end());
  std::sort(alpha2.begin(), alpha2.end());
  if (alpha1 != alpha2)
    throw std::invalid_argument("equivalent: acceptors use different alphabets");

  const SymbolicDfa d1 = to_symbolic_dfa(b1);
  const SymbolicDfa d2 = to_symbolic_dfa(b2);

  std::map<std::pair<int, int>, std::optional<std::pair<std::pair<int, int>, std::size_t>>>
      parent;
  std::deque<std::pair<int, int>> queue;
  const auto start = std::make_pair(d1.initial, d2.initial);
  parent.emplace(start, std::nullopt);
  queue.push_back(start);
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    if ((d1.accepting[cur.first] != 0) != (d2.accepting[cur.second] != 0)) {
      std::vector<std::size_t> letters;
      auto node = cur;
      for (;;) {
        const auto& link = parent.at(node);
        if (!link) break;
        letters.push_back(link->second);
        node = link->first;
      }
      TimedWord w;
      for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        w.letters.push_back(d1.letters[*it]);
      return w;
    }
    for (std::size_t li = 0; li < d1.letters.size(); ++li) {
      const auto nxt =
          std::make_pair(d1.step(cur.first, li), d2.step(cur.second, li));
      if (parent.emplace(nxt, std::make_pair(cur, li)).second)
        queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

// Small half-integral stand-in for u after the half-integral prefix u0:
// every K-acceptor reaches the same state on u0.u and on u0.w. Built letter
// by letter so that each step lands in the same region as the original and
// the running clock value stays below K+1 (hence half-integral values only).
inline TimedWord half_integral_witness(const TimedWord& u0, const TimedWord& u,
                                       int k) {
  if (!is_half_integral(u0) || !is_small(u0, k))
    throw std::invalid_argument(
        "half_integral_witness: prefix must be small and half-integral");
  const Rational k_rat(k);
  const Rational one_half = half();
  Rational c = clock_value(u0, k);        // running value along u0.u
  Rational c_w = clock_value(u0, k);      // running value along u0.w
  TimedWord w;
  for (const auto& letter : u.letters) {
    const Rational& t = letter.delay;
    Rational t_prime;
    if (c > k_rat) {
      t_prime = Rational();
    } else if (c.is_zero()) {
      if (t > k_rat)
        t_prime = k_rat + one_half;
      else
        t_prime = Rational(t.floor()) + (t.frac().is_zero() ? Rational() : one_half);
    } else {
      // c is a noninteger below K, so the witness value c_w is floor(c)+1/2.
      if (c + t > k_rat) {
        t_prime = k_rat - Rational(c_w.floor());
      } else {
        const Rational s = c.frac() + t.frac();
        if (s < Rational(1))
          t_prime = Rational(t.floor());
        else if (s == Rational(1))
          t_prime = Rational(t.floor()) + one_half;
        else
          t_prime = Rational(t.floor() + 1);
      }
    }
    w.letters.push_back({t_prime, letter.symbol});
    c = step_clock(c, t, k);
    c_w = step_clock(c_w, t_prime, k);
  }
  return w;
}

// Decides the syntactic equivalence of two small half-integral words against
// the acceptor's language by brute force: equal capped clock values plus
// agreement of timed membership on every symbolic extension up to the given
// depth. With depth at least the acceptor's state count this is exact.
inline bool syntactic_equiv_oracle(const KAcceptor& b, const TimedWord& u,
                                   const TimedWord& v, int depth) {
  if (!is_half_integral(u) || !is_small(u, b.k) || !is_half_integral(v) ||
      !is_small(v, b.k))
    throw std::invalid_argument(
        "syntactic_equiv_oracle: words must be small and half-integral");
  if (!(capped_clock_value(u, b.k) == capped_clock_value(v, b.k))) return false;

  const auto letters = symbolic_alphabet(b.ta.alphabet, b.k);
  const RunResult ru = run(b.ta, u);
  const RunResult rv = run(b.ta, v);
  if (ru.stuck || rv.stuck)
    throw std::invalid_argument("syntactic_equiv_oracle: acceptor incomplete");

  // Depth-first walk over all z with |z| <= depth, extending both runs one
  // timed letter at a time.
  struct Walker {
    const KAcceptor& b;
    const std::vector<SymbolicLetter>& letters;
    int depth;

    bool agree(Config cu, Config cv, int remaining) const {
      if (cu == cv) return true;  // identical configurations share all futures
      const bool au = b.ta.states[cu.state].accepting;
      const bool av = b.ta.states[cv.state].accepting;
      if (au != av) return false;
      if (remaining == 0) return true;
      for (const auto& l : letters) {
        const Config nu = step(cu, l);
        const Config nv = step(cv, l);
        if (!agree(nu, nv, remaining - 1)) return false;
      }
      return true;
    }

    Config step(Config c, const SymbolicLetter& l) const {
      const Rational value = c.clock + l.delay;
      for (const auto& t : b.ta.transitions) {
        if (t.from != c.state || t.symbol != l.symbol) continue;
        if (!guard_satisfied(t.guard, value)) continue;
        return {t.to, t.reset == 0 ? Rational() : value};
      }
      throw std::invalid_argument("syntactic_equiv_oracle: acceptor incomplete");
    }
  };
  return Walker{b, letters, depth}.agree(ru.trace.back(), rv.trace.back(), depth);
}

}  // namespace irta
