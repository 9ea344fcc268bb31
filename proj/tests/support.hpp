#pragma once

// Shared fixtures for the test suites: the example automata used throughout,
// reference language predicates, random data generators, and a simple
// bounded-exhaustive teacher for languages given as predicates.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "irta/acceptor.hpp"
#include "irta/canonical.hpp"
#include "irta/learner.hpp"
#include "irta/strictify.hpp"

namespace support {

using namespace irta;

// Two-state automaton accepting the words whose delays sum to exactly 1.
// Not strict: both equality transitions keep the clock.
inline OneClockTA sum_one_automaton() {
  OneClockTA a;
  a.alphabet = {"a"};
  const int start = a.add_state("start", false);
  const int done = a.add_state("done", true);
  a.add_transition(start, start, "a",
                   Guard::conj({{GuardAtom::Op::Less, 1}}), 1);
  a.add_transition(start, done, "a", Guard::eq(1), 1);
  a.add_transition(done, done, "a", Guard::eq(1), 1);
  return a;
}

inline bool sum_one_pred(const TimedWord& w) {
  return total_delay(w) == Rational(1);
}

// Strict three-state automaton accepting the words whose clock value with
// constant 1 is zero.
inline OneClockTA tail_zero_automaton() {
  OneClockTA a;
  a.alphabet = {"a"};
  const int zero = a.add_state("zero", true);
  const int frac = a.add_state("frac", false);
  const int high = a.add_state("high", false);
  a.add_transition(zero, zero, "a", Guard::eq(0), 0);
  a.add_transition(zero, frac, "a", Guard::open(0), 1);
  a.add_transition(zero, zero, "a", Guard::eq(1), 0);
  a.add_transition(zero, high, "a", Guard::above(1), 1);
  a.add_transition(frac, frac, "a", Guard::open(0), 1);
  a.add_transition(frac, zero, "a", Guard::eq(1), 0);
  a.add_transition(frac, high, "a", Guard::above(1), 1);
  a.add_transition(high, high, "a", Guard::above(1), 1);
  return a;
}

inline bool tail_zero_pred(const TimedWord& w) {
  return clock_value(w, 1).is_zero();
}

// Four-state strict automaton for the two-window language over {a, b}:
// (t1.a)(t2.b) with 0<t1<1 and t1+t2=1, or 1<t1<2 and t1+t2=2.
inline OneClockTA two_windows_automaton() {
  OneClockTA a;
  a.alphabet = {"a", "b"};
  const int q0 = a.add_state("q0", false);
  const int q1 = a.add_state("q1", false);
  const int q2 = a.add_state("q2", false);
  const int q3 = a.add_state("q3", true);
  a.add_transition(q0, q1, "a", Guard::open(0), 1);
  a.add_transition(q0, q2, "a", Guard::open(1), 1);
  a.add_transition(q1, q3, "b", Guard::eq(1), 0);
  a.add_transition(q2, q3, "b", Guard::eq(2), 0);
  return a;
}

inline bool two_windows_pred(const TimedWord& w) {
  if (w.size() != 2) return false;
  const auto& l1 = w.letters[0];
  const auto& l2 = w.letters[1];
  if (l1.symbol != "a" || l2.symbol != "b") return false;
  const Rational t1 = l1.delay, sum = l1.delay + l2.delay;
  const bool first = Rational(0) < t1 && t1 < Rational(1) && sum == Rational(1);
  const bool second = Rational(1) < t1 && t1 < Rational(2) && sum == Rational(2);
  return first || second;
}

// Hand-built canonical 6-state acceptor for the sum-equals-one language with
// constant 1. State order: eps, half, one (accepting), high, one_half, two.
inline KAcceptor canonical_sum_one_acceptor() {
  OneClockTA a;
  a.alphabet = {"a"};
  const int eps = a.add_state("eps", false);
  const int half_st = a.add_state("half", false);
  const int one = a.add_state("one", true);
  const int high = a.add_state("high", false);
  const int one_half = a.add_state("one_half", false);
  const int two = a.add_state("two", false);
  auto add = [&](int f, int t, Guard g, int r) {
    a.add_transition(f, t, "a", std::move(g), r);
  };
  add(eps, eps, Guard::eq(0), 0);
  add(eps, half_st, Guard::open(0), 1);
  add(eps, one, Guard::eq(1), 0);
  add(eps, high, Guard::above(1), 1);
  add(half_st, half_st, Guard::open(0), 1);
  add(half_st, one, Guard::eq(1), 0);
  add(half_st, high, Guard::above(1), 1);
  add(one, one, Guard::eq(0), 0);
  add(one, one_half, Guard::open(0), 1);
  add(one, two, Guard::eq(1), 0);
  add(one, high, Guard::above(1), 1);
  add(high, high, Guard::above(1), 1);
  add(one_half, one_half, Guard::open(0), 1);
  add(one_half, two, Guard::eq(1), 0);
  add(one_half, high, Guard::above(1), 1);
  add(two, two, Guard::eq(0), 0);
  add(two, one_half, Guard::open(0), 1);
  add(two, two, Guard::eq(1), 0);
  add(two, high, Guard::above(1), 1);
  return as_k_acceptor(a, 1);
}

// The shape of the first conjecture the learner makes for the sum-equals-one
// language: four states, with the equality-1 step from the accepting state
// looping back to the initial one.
inline KAcceptor first_conjecture_shape() {
  OneClockTA a;
  a.alphabet = {"a"};
  const int eps = a.add_state("eps", false);
  const int half_st = a.add_state("half", false);
  const int one = a.add_state("one", true);
  const int high = a.add_state("high", false);
  auto add = [&](int f, int t, Guard g, int r) {
    a.add_transition(f, t, "a", std::move(g), r);
  };
  add(eps, eps, Guard::eq(0), 0);
  add(eps, half_st, Guard::open(0), 1);
  add(eps, one, Guard::eq(1), 0);
  add(eps, high, Guard::above(1), 1);
  add(half_st, half_st, Guard::open(0), 1);
  add(half_st, one, Guard::eq(1), 0);
  add(half_st, high, Guard::above(1), 1);
  add(one, one, Guard::eq(0), 0);
  add(one, half_st, Guard::open(0), 1);
  add(one, eps, Guard::eq(1), 0);
  add(one, high, Guard::above(1), 1);
  add(high, high, Guard::above(1), 1);
  return as_k_acceptor(a, 1);
}

inline TimedWord make_word(std::initializer_list<std::pair<Rational, const char*>> ls) {
  TimedWord w;
  for (const auto& [d, s] : ls) w.letters.push_back({d, s});
  return w;
}

// All words over the symbolic alphabet with length <= max_len (includes eps).
inline std::vector<TimedWord> symbolic_words_up_to(
    const std::vector<std::string>& alphabet, int k, int max_len) {
  const auto letters = symbolic_alphabet(alphabet, k);
  std::vector<TimedWord> out{TimedWord{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const auto& l : letters) out.push_back(out[i].appended(l));
    level_begin = level_end;
  }
  return out;
}

inline Rational random_rational(std::mt19937_64& rng, int max_den = 6,
                                int max_whole = 3) {
  std::uniform_int_distribution<int> den_dist(1, max_den);
  const int den = den_dist(rng);
  std::uniform_int_distribution<int> num_dist(0, max_whole * den);
  return Rational(num_dist(rng), den);
}

inline TimedWord random_word(std::mt19937_64& rng,
                             const std::vector<std::string>& alphabet,
                             int max_len = 6, int max_den = 6, int max_whole = 3) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<std::size_t> sym_dist(0, alphabet.size() - 1);
  TimedWord w;
  const int len = len_dist(rng);
  for (int i = 0; i < len; ++i)
    w.letters.push_back(
        {random_rational(rng, max_den, max_whole), alphabet[sym_dist(rng)]});
  return w;
}

// Random complete strict deterministic automaton: one transition per
// (state, letter, region), equality regions resetting.
inline OneClockTA random_strict_complete(std::mt19937_64& rng, int num_states,
                                         int k,
                                         const std::vector<std::string>& alphabet) {
  OneClockTA a;
  a.alphabet = alphabet;
  std::uniform_int_distribution<int> state_dist(0, num_states - 1);
  std::bernoulli_distribution acc_dist(0.4);
  for (int i = 0; i < num_states; ++i)
    a.add_state("s" + std::to_string(i), acc_dist(rng));
  for (int q = 0; q < num_states; ++q)
    for (const auto& sym : alphabet)
      for (const auto& r : all_regions(k))
        a.add_transition(q, state_dist(rng), sym, region_to_guard(r, k),
                         r.is_integer() ? 0 : 1);
  return a;
}

inline KAcceptor random_acceptor(std::mt19937_64& rng, int num_states, int k,
                                 const std::vector<std::string>& alphabet) {
  return to_k_acceptor(random_strict_complete(rng, num_states, k, alphabet), k);
}

// Fixed fleet of small acceptors used by several suites.
inline std::vector<KAcceptor> acceptor_fleet() {
  std::vector<KAcceptor> fleet;
  fleet.push_back(build_acceptor(sum_one_automaton(), 1));
  fleet.push_back(build_acceptor(tail_zero_automaton(), 1));
  fleet.push_back(build_acceptor(two_windows_automaton(), 2));
  std::mt19937_64 rng(20240811);
  fleet.push_back(random_acceptor(rng, 2, 1, {"a"}));
  fleet.push_back(random_acceptor(rng, 2, 1, {"a", "b"}));
  fleet.push_back(random_acceptor(rng, 1, 2, {"a"}));
  return fleet;
}

// Teacher for a language given as a predicate: equivalence is checked by
// exhaustively comparing the hypothesis against the predicate on all
// symbolic words up to a fixed length plus a set of extra probe words.
class BoundedTeacher final : public Teacher {
public:
  BoundedTeacher(std::function<bool(const TimedWord&)> pred,
                 std::vector<std::string> alphabet, int k, int probe_len,
                 std::vector<TimedWord> extra_probes)
      : pred_(std::move(pred)) {
    probes_ = symbolic_words_up_to(alphabet, k, probe_len);
    for (auto& w : extra_probes) probes_.push_back(std::move(w));
  }

protected:
  bool query_membership(const TimedWord& w) override { return pred_(w); }

  std::optional<TimedWord> query_equivalence(const KAcceptor& h) override {
    for (const auto& w : probes_)
      if (irta::member(h, w) != pred_(w)) return w;
    return std::nullopt;
  }

private:
  std::function<bool(const TimedWord&)> pred_;
  std::vector<TimedWord> probes_;
};

}  // namespace support
