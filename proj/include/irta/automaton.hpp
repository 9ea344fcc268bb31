#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "irta/guard.hpp"
#include "irta/rational.hpp"
#include "irta/region.hpp"
#include "irta/timed_word.hpp"

namespace irta {

struct State {
  int id = 0;
  std::string name;
  bool accepting = false;
};

// reset is the clock factor from the transition label (a, guard, r):
// 0 resets the clock to zero, 1 keeps it.
struct Transition {
  int from = 0;
  int to = 0;
  std::string symbol;
  Guard guard;
  int reset = 1;
};

// One-clock timed automaton. States are dense: states[i].id == i.
struct OneClockTA {
  std::vector<std::string> alphabet;
  std::vector<State> states;
  int initial = 0;
  std::vector<Transition> transitions;

  int add_state(std::string name, bool accepting) {
    const int id = static_cast<int>(states.size());
    states.push_back({id, std::move(name), accepting});
    return id;
  }

  void add_transition(int from, int to, std::string symbol, Guard guard,
                      int reset) {
    transitions.push_back({from, to, std::move(symbol), std::move(guard), reset});
  }

  bool has_symbol(const std::string& s) const {
    return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
  }
};

inline void check_structure(const OneClockTA& a) {
  const int n = static_cast<int>(a.states.size());
  if (n == 0) throw std::invalid_argument("automaton has no states");
  for (int i = 0; i < n; ++i)
    if (a.states[i].id != i)
      throw std::invalid_argument("automaton state ids must be dense 0..n-1");
  if (a.initial < 0 || a.initial >= n)
    throw std::invalid_argument("dangling initial state reference");
  for (const auto& t : a.transitions) {
    if (t.from < 0 || t.from >= n || t.to < 0 || t.to >= n)
      throw std::invalid_argument("dangling state reference in transition");
    if (!a.has_symbol(t.symbol))
      throw std::invalid_argument("transition symbol not in alphabet: " + t.symbol);
    if (t.reset != 0 && t.reset != 1)
      throw std::invalid_argument("transition reset factor must be 0 or 1");
  }
}

inline int max_constant(const OneClockTA& a) {
  int mx = 0;
  for (const auto& t : a.transitions)
    mx = std::max(mx, guard_max_constant(t.guard));
  return mx;
}

struct ValidationReport {
  bool deterministic = false;
  bool complete = false;
  bool irta = false;
  bool strict = false;
  int max_constant = 0;
  // Constant K witnessing strictness (the shared m of the m<x guards, or
  // max_constant when no such guard occurs). Meaningful only when strict.
  int strict_constant = 0;
  std::vector<std::string> notes;
};

namespace detail {

// (state, region) pairs reachable from (initial, {0}), using regions with
// respect to the given constant. Exact for guards with constants <= k.
inline std::set<std::pair<int, RegionIndex>> reachable_configs(
    const OneClockTA& a, int k, bool* complete_out = nullptr) {
  if (complete_out) *complete_out = true;
  std::vector<GuardInterval> dens;
  dens.reserve(a.transitions.size());
  for (const auto& t : a.transitions) dens.push_back(denotation(t.guard));

  std::set<std::pair<int, RegionIndex>> seen;
  std::deque<std::pair<int, RegionIndex>> queue;
  const auto start = std::make_pair(a.initial, RegionIndex::integer(0));
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    const auto [q, r] = queue.front();
    queue.pop_front();
    for (const auto& sym : a.alphabet) {
      for (const auto& target : elapse_reachable(r, k)) {
        const GuardInterval target_iv = region_interval(target, k);
        bool any = false;
        for (std::size_t i = 0; i < a.transitions.size(); ++i) {
          const auto& t = a.transitions[i];
          if (t.from != q || t.symbol != sym) continue;
          if (!dens[i].intersects(target_iv)) continue;
          any = true;
          const RegionIndex next =
              t.reset == 0 ? RegionIndex::integer(0) : target;
          const auto cfg = std::make_pair(t.to, next);
          if (seen.insert(cfg).second) queue.push_back(cfg);
        }
        if (!any && complete_out) *complete_out = false;
      }
    }
  }
  return seen;
}

}  // namespace detail

inline ValidationReport validate(const OneClockTA& a) {
  check_structure(a);
  ValidationReport rep;
  rep.max_constant = max_constant(a);

  rep.deterministic = true;
  for (std::size_t i = 0; i < a.transitions.size() && rep.deterministic; ++i)
    for (std::size_t j = i + 1; j < a.transitions.size(); ++j) {
      const auto& t1 = a.transitions[i];
      const auto& t2 = a.transitions[j];
      if (t1.from == t2.from && t1.symbol == t2.symbol &&
          guards_intersect(t1.guard, t2.guard)) {
        rep.deterministic = false;
        rep.notes.push_back("transitions " + std::to_string(i) + " and " +
                            std::to_string(j) + " overlap");
        break;
      }
    }

  // Integer resets: a resetting transition's guard denotes a single integer.
  rep.irta = true;
  for (const auto& t : a.transitions) {
    if (t.reset != 0) continue;
    const auto form = region_form(t.guard);
    if (!form || form->kind != Guard::Kind::Eq) {
      rep.irta = false;
      break;
    }
  }

  // Strict: every guard is region-form for one shared constant, and a guard
  // is an equality exactly on the resetting transitions.
  rep.strict = true;
  std::optional<int> above_m;
  int eq_open_bound = 0;
  for (const auto& t : a.transitions) {
    const auto form = region_form(t.guard);
    if (!form) {
      rep.strict = false;
      break;
    }
    if ((form->kind == Guard::Kind::Eq) != (t.reset == 0)) {
      rep.strict = false;
      break;
    }
    switch (form->kind) {
      case Guard::Kind::Eq: eq_open_bound = std::max(eq_open_bound, form->m); break;
      case Guard::Kind::Open:
        eq_open_bound = std::max(eq_open_bound, form->m + 1);
        break;
      case Guard::Kind::Above:
        if (above_m && *above_m != form->m) rep.strict = false;
        above_m = form->m;
        break;
      default: rep.strict = false; break;
    }
    if (!rep.strict) break;
  }
  if (rep.strict) {
    if (above_m && *above_m < eq_open_bound) rep.strict = false;
    rep.strict_constant = above_m ? *above_m : eq_open_bound;
  }

  detail::reachable_configs(a, std::max(rep.max_constant, 0), &rep.complete);
  return rep;
}

struct Config {
  int state = 0;
  Rational clock;

  friend bool operator==(const Config&, const Config&) = default;
};

struct RunResult {
  bool accepted = false;
  bool stuck = false;          // no enabled transition at step stuck_at
  std::size_t stuck_at = 0;
  std::vector<Config> trace;   // configurations, starting configuration first
};

// The unique run from `from` (deterministic automata). A missing transition
// ends the run as rejected with `stuck` set.
inline RunResult run(const OneClockTA& a, const TimedWord& w, Config from) {
  RunResult res;
  res.trace.push_back(from);
  Config cur = from;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& l = w.letters[i];
    if (!a.has_symbol(l.symbol))
      throw std::invalid_argument("word symbol not in alphabet: " + l.symbol);
    const Rational value = cur.clock + l.delay;
    const Transition* chosen = nullptr;
    for (const auto& t : a.transitions) {
      if (t.from != cur.state || t.symbol != l.symbol) continue;
      if (!guard_satisfied(t.guard, value)) continue;
      if (chosen)
        throw std::logic_error("run: automaton is nondeterministic at state " +
                               a.states[cur.state].name);
      chosen = &t;
    }
    if (!chosen) {
      res.stuck = true;
      res.stuck_at = i;
      res.accepted = false;
      return res;
    }
    cur = {chosen->to, chosen->reset == 0 ? Rational() : value};
    res.trace.push_back(cur);
  }
  res.accepted = a.states[cur.state].accepting;
  return res;
}

inline RunResult run(const OneClockTA& a, const TimedWord& w) {
  return run(a, w, Config{a.initial, Rational()});
}

inline bool member(const OneClockTA& a, const TimedWord& w) {
  return run(a, w).accepted;
}

// Replaces every guard by the region-form guards (with respect to K) whose
// union has the same denotation, one transition per covered region. Keep
// transitions guarded x=0 are turned into resets; resetting a clock that is
// already zero does not change the run. Unsatisfiable guards are dropped.
inline OneClockTA normalize_guards(const OneClockTA& a, int k,
                                   std::vector<std::string>* diagnostics = nullptr) {
  check_structure(a);
  if (k < max_constant(a))
    throw std::invalid_argument("normalize_guards: K below max constant");
  OneClockTA out = a;
  out.transitions.clear();
  std::set<std::tuple<int, int, std::string, Guard, int>> dedup;
  for (const auto& t : a.transitions) {
    const auto regions = regions_covered(t.guard, k);
    if (regions.empty() && diagnostics)
      diagnostics->push_back("dropped transition with unsatisfiable guard " +
                             t.guard.str());
    for (const auto& r : regions) {
      Transition nt = t;
      nt.guard = region_to_guard(r, k);
      if (nt.guard.kind == Guard::Kind::Eq && nt.guard.m == 0) nt.reset = 0;
      auto key = std::make_tuple(nt.from, nt.to, nt.symbol, nt.guard, nt.reset);
      if (dedup.insert(key).second) out.transitions.push_back(nt);
    }
  }
  return out;
}

struct CompleteResult {
  OneClockTA ta;
  std::optional<int> sink;  // set when a sink state was added
};

// Adds a non-accepting sink and routes every uncovered (state, letter,
// region) triple into it; equality regions reset, the others keep. The
// automaton must already carry region-form guards with constants <= K.
inline CompleteResult complete(const OneClockTA& a, int k) {
  check_structure(a);
  if (k < max_constant(a))
    throw std::invalid_argument("complete: K below max constant");
  for (const auto& t : a.transitions) {
    const auto form = region_form(t.guard);
    if (!form || (form->kind == Guard::Kind::Above && form->m != k))
      throw std::invalid_argument(
          "complete: guards must be region-form for K (run normalize_guards)");
  }

  const auto regions = all_regions(k);
  std::vector<std::tuple<int, std::string, RegionIndex>> missing;
  for (const auto& st : a.states)
    for (const auto& sym : a.alphabet)
      for (const auto& r : regions) {
        const GuardInterval iv = region_interval(r, k);
        bool covered = false;
        for (const auto& t : a.transitions)
          if (t.from == st.id && t.symbol == sym &&
              denotation(t.guard).intersects(iv)) {
            covered = true;
            break;
          }
        if (!covered) missing.emplace_back(st.id, sym, r);
      }

  if (missing.empty()) return {a, std::nullopt};

  CompleteResult res{a, std::nullopt};
  const int sink = res.ta.add_state("sink", false);
  res.sink = sink;
  for (const auto& [q, sym, r] : missing)
    res.ta.add_transition(q, sink, sym, region_to_guard(r, k),
                          r.is_integer() ? 0 : 1);
  for (const auto& sym : res.ta.alphabet)
    for (const auto& r : regions)
      res.ta.add_transition(sink, sink, sym, region_to_guard(r, k),
                            r.is_integer() ? 0 : 1);
  return res;
}

// Drops states unreachable from the initial state (over the directed graph,
// ignoring guards) and renumbers densely.
inline OneClockTA prune_unreachable(const OneClockTA& a) {
  std::vector<char> seen(a.states.size(), 0);
  std::deque<int> queue{a.initial};
  seen[a.initial] = 1;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (const auto& t : a.transitions)
      if (t.from == q && !seen[t.to]) {
        seen[t.to] = 1;
        queue.push_back(t.to);
      }
  }
  std::vector<int> remap(a.states.size(), -1);
  OneClockTA out;
  out.alphabet = a.alphabet;
  for (const auto& st : a.states)
    if (seen[st.id]) remap[st.id] = out.add_state(st.name, st.accepting);
  out.initial = remap[a.initial];
  for (const auto& t : a.transitions)
    if (seen[t.from] && seen[t.to])
      out.add_transition(remap[t.from], remap[t.to], t.symbol, t.guard, t.reset);
  return out;
}

}  // namespace irta
