#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irta/automaton.hpp"

namespace irta {

namespace detail {

inline bool is_bad(const Transition& t) {
  return t.guard.kind == Guard::Kind::Eq && t.reset == 1;
}

// Shift a region-form guard down by m (the copy's clock runs m behind the
// simulated one). Guards entirely below m can never fire in the copy.
inline std::optional<Guard> shift_guard(const Guard& g, int m) {
  switch (g.kind) {
    case Guard::Kind::Eq:
      if (g.m < m) return std::nullopt;
      return Guard::eq(g.m - m);
    case Guard::Kind::Open:
      if (g.m < m) return std::nullopt;
      return Guard::open(g.m - m);
    case Guard::Kind::Above:
      if (g.m < m) return std::nullopt;
      return Guard::above(g.m - m);
    default:
      throw std::invalid_argument("shift_guard: guard not region-form");
  }
}

// One elimination round: remove the given equality-keep transition by
// running a second copy of the automaton in which the clock is lowered by
// the guard constant. Entering the copy resets the clock; resetting
// transitions lead back to the original states.
inline OneClockTA eliminate_bad_transition(const OneClockTA& a,
                                           std::size_t bad_index) {
  const Transition theta = a.transitions[bad_index];
  const int m = theta.guard.m;
  const int n = static_cast<int>(a.states.size());

  OneClockTA out;
  out.alphabet = a.alphabet;
  out.initial = a.initial;
  for (const auto& st : a.states) out.add_state(st.name, st.accepting);
  for (const auto& st : a.states) out.add_state(st.name + "'", st.accepting);

  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    if (i != bad_index) out.transitions.push_back(a.transitions[i]);

  out.add_transition(theta.from, theta.to + n, theta.symbol, Guard::eq(m), 0);

  for (const auto& t : a.transitions) {
    if (is_bad(t)) {
      if (t.guard.m == m)
        out.add_transition(t.from + n, t.to + n, t.symbol, Guard::eq(0), 0);
      // bad transitions with a smaller constant cannot fire in the copy
      continue;
    }
    if (t.reset == 1) {
      if (auto g = shift_guard(t.guard, m))
        out.add_transition(t.from + n, t.to + n, t.symbol, *g, 1);
    } else {
      if (auto g = shift_guard(t.guard, m))
        out.add_transition(t.from + n, t.to, t.symbol, *g, 0);
    }
  }
  return prune_unreachable(out);
}

}  // namespace detail

// Rebuilds a deterministic automaton with region-form guards (constants
// <= K) as a strict automaton for K. States are pairs (q, d): the simulated
// clock exceeds the strict clock by the integer d, the accumulated value of
// skipped resets. Once the simulated clock passes K it can never again
// satisfy an equality guard, so all offsets above K collapse into one.
inline OneClockTA strict_rebuild(const OneClockTA& a, int k) {
  check_structure(a);
  if (k < max_constant(a))
    throw std::invalid_argument("strict_rebuild: K below max constant");
  for (const auto& t : a.transitions)
    if (t.reset == 0) {
      const auto form = region_form(t.guard);
      if (!form || form->kind != Guard::Kind::Eq)
        throw std::invalid_argument(
            "strict_rebuild: resets must sit on equality guards");
    }
  const int top = k + 1;  // offset value marking "clock stuck above K"

  OneClockTA out;
  out.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> worklist;
  auto state_of = [&](int q, int d) {
    const auto key = std::make_pair(q, d);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const std::string suffix = d == 0 ? "" : (d == top ? "+top" : "+" + std::to_string(d));
    const int id = out.add_state(a.states[q].name + suffix, a.states[q].accepting);
    ids.emplace(key, id);
    worklist.emplace_back(q, d);
    return id;
  };
  out.initial = state_of(a.initial, 0);

  while (!ids.empty() && !worklist.empty()) {
    const auto [q, d] = worklist.back();
    worklist.pop_back();
    const int src = ids.at({q, d});
    for (const auto& sym : out.alphabet) {
      for (const auto& r : all_regions(k)) {
        // Simulated clock region seen by the original automaton.
        RegionIndex sim = RegionIndex::above();
        if (d <= k && !r.is_above()) {
          const int value = r.m + d;
          if (r.is_integer())
            sim = value <= k ? RegionIndex::integer(value) : RegionIndex::above();
          else
            sim = value < k ? RegionIndex::fractional(value) : RegionIndex::above();
        }
        const GuardInterval sim_iv = region_interval(sim, k);
        const Transition* chosen = nullptr;
        for (const auto& t : a.transitions) {
          if (t.from != q || t.symbol != sym) continue;
          if (!denotation(t.guard).intersects(sim_iv)) continue;
          if (chosen)
            throw std::invalid_argument("strict_rebuild: input not deterministic");
          chosen = &t;
        }
        if (!chosen) continue;  // incomplete input; complete() adds the sink
        int next_d;
        if (chosen->reset == 0) {
          next_d = 0;
        } else if (r.is_above() || d == top) {
          next_d = top;
        } else if (r.is_integer()) {
          next_d = d + r.m > k ? top : d + r.m;
        } else {
          next_d = d;
        }
        const int dst = state_of(chosen->to, next_d);
        out.add_transition(src, dst, sym, region_to_guard(r, k),
                           r.is_integer() ? 0 : 1);
      }
    }
  }
  return out;
}

// Eliminates equality guards on non-resetting transitions, largest constant
// first (ties: lowest transition index), pruning unreachable states after
// each round. Requires a one-clock automaton with integer resets; guards are
// normalized first. If guard shifting has left above-K guards with unequal
// constants the result is rebuilt with explicit clock offsets.
inline OneClockTA strictify(const OneClockTA& a) {
  ValidationReport rep = validate(a);
  if (!rep.irta)
    throw std::invalid_argument("strictify: input is not a 1-IRTA");
  const int k = rep.max_constant;
  OneClockTA cur = normalize_guards(a, k);

  for (;;) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < cur.transitions.size(); ++i) {
      const auto& t = cur.transitions[i];
      if (!detail::is_bad(t)) continue;
      if (!pick || t.guard.m > cur.transitions[*pick].guard.m) pick = i;
    }
    if (!pick) break;
    cur = detail::eliminate_bad_transition(cur, *pick);
  }

  if (!validate(cur).strict) cur = strict_rebuild(cur, max_constant(cur));
  return cur;
}

}  // namespace irta
