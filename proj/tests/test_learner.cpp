#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace irta;
using support::make_word;

namespace {

const TimedWord kEps{};
const TimedWord kZeroA = make_word({{Rational(0), "a"}});
const TimedWord kHalfA = make_word({{Rational(1, 2), "a"}});
const TimedWord kOneA = make_word({{Rational(1), "a"}});
const TimedWord kThreeHalvesA = make_word({{Rational(3, 2), "a"}});

struct Cell {
  TimedWord word;
  std::vector<int> row;
  std::string cval;
};

void check_table(const ObservationTable& table,
                 const std::vector<Cell>& upper,
                 const std::vector<Cell>& lower) {
  auto sorted_words = [](const std::vector<TimedWord>& ws) {
    std::vector<TimedWord> out = ws;
    std::sort(out.begin(), out.end(), ShortlexLess{});
    return out;
  };
  auto check_rows = [&](const std::vector<TimedWord>& got,
                        const std::vector<Cell>& expected) {
    const auto words = sorted_words(got);
    REQUIRE(words.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(words[i] == expected[i].word);
      REQUIRE(expected[i].row.size() == table.columns().size());
      for (std::size_t c = 0; c < expected[i].row.size(); ++c)
        CHECK(table.entry(expected[i].word, table.columns()[c]) ==
              (expected[i].row[c] == 1));
      CHECK(table.cval(expected[i].word).str() == expected[i].cval);
    }
  };
  check_rows(table.u1(), upper);
  check_rows(table.u2(), lower);
}

}  // namespace

TEST_CASE("initial table for the sum-equals-one target") {
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  ObservationTable t0 = init_table({"a"}, 1, teacher);

  check_table(t0,
              {{kEps, {0}, "0"}},
              {{kZeroA, {0}, "0"},
               {kHalfA, {0}, "1/2"},
               {kOneA, {1}, "0"},
               {kThreeHalvesA, {0}, "top"}});

  // clock values never cost a membership query: only the five entry words
  CHECK(teacher.membership_queries() == 5);
}

TEST_CASE("initial table for the empty language") {
  OneClockTA lonely;
  lonely.alphabet = {"a"};
  lonely.add_state("q", false);
  SimulatedTeacher teacher(support::build_acceptor(lonely, 1));
  ObservationTable t0 = init_table({"a"}, 1, teacher);
  for (const auto& w : t0.u2()) CHECK_FALSE(t0.entry(w, kEps));
  CHECK_FALSE(t0.entry(kEps, kEps));
}

TEST_CASE("two-letter alphabet with K=0 has four extensions") {
  SimulatedTeacher teacher(support::build_acceptor(support::two_windows_automaton(), 2));
  ObservationTable t0 = init_table({"a", "b"}, 0, teacher);
  CHECK(t0.u2().size() == 4);
}

TEST_CASE("closure walks through the worked run") {
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  ObservationTable table = init_table({"a"}, 1, teacher);

  auto witness = table.is_closed();
  REQUIRE(witness.has_value());
  CHECK(*witness == kHalfA);
  table.close_step(*witness);

  witness = table.is_closed();
  REQUIRE(witness.has_value());
  CHECK(*witness == kOneA);
  table.close_step(*witness);

  witness = table.is_closed();
  REQUIRE(witness.has_value());
  CHECK(*witness == kThreeHalvesA);
  table.close_step(*witness);

  CHECK(table.is_closed() == std::nullopt);
  CHECK(table.is_consistent() == std::nullopt);

  check_table(table,
              {{kEps, {0}, "0"},
               {kHalfA, {0}, "1/2"},
               {kOneA, {1}, "0"},
               {kThreeHalvesA, {0}, "top"}},
              {{kZeroA, {0}, "0"},
               {kHalfA + kZeroA, {0}, "1/2"},
               {kHalfA + kHalfA, {1}, "0"},
               {kHalfA + kOneA, {0}, "top"},
               {kHalfA + kThreeHalvesA, {0}, "top"},
               {kOneA + kZeroA, {1}, "0"},
               {kOneA + kHalfA, {0}, "1/2"},
               {kOneA + kOneA, {0}, "0"},
               {kOneA + kThreeHalvesA, {0}, "top"},
               {kThreeHalvesA + kZeroA, {0}, "top"},
               {kThreeHalvesA + kHalfA, {0}, "top"},
               {kThreeHalvesA + kOneA, {0}, "top"},
               {kThreeHalvesA + kThreeHalvesA, {0}, "top"}});

  // close_step on a represented signature is a no-op
  const auto u1_before = table.u1();
  table.close_step(kZeroA);
  CHECK(table.u1() == u1_before);

  SECTION("the first conjecture has the expected four-state shape") {
    const KAcceptor guess = table.conjecture();
    CHECK(guess.num_states() == 4);
    CHECK(isomorphic(guess, support::first_conjecture_shape()));
  }

  SECTION("processing the classic counterexample reproduces the run") {
    const TimedWord cex = kOneA + kOneA + kOneA;
    table.process_counterexample(cex);
    // both new prefixes are now upper rows
    const auto& u1 = table.u1();
    CHECK(std::find(u1.begin(), u1.end(), kOneA + kOneA) != u1.end());
    CHECK(std::find(u1.begin(), u1.end(), cex) != u1.end());
    CHECK(table.is_closed() == std::nullopt);

    const auto violation = table.is_consistent();
    REQUIRE(violation.has_value());
    CHECK(violation->u == kEps);
    CHECK(violation->w == kOneA + kOneA);
    CHECK(violation->letter == SymbolicLetter{Rational(1), "a"});
    CHECK(violation->column == kEps);

    table.consistency_step(*violation);
    REQUIRE(table.columns().size() == 2);
    CHECK(table.columns()[1] == kOneA);
    CHECK(table.is_closed() == std::nullopt);
    CHECK(table.is_consistent() == std::nullopt);

    const KAcceptor third = table.conjecture();
    CHECK(third.num_states() == 5);

    // the second counterexample from the reference run
    const TimedWord cex2 = kOneA + kHalfA + kHalfA;
    CHECK(member(third, cex2));
    CHECK_FALSE(support::sum_one_pred(cex2));
    table.process_counterexample(cex2);

    const auto violation2 = table.is_consistent();
    REQUIRE(violation2.has_value());
    const TimedWord new_column = TimedWord{{violation2->letter}} + violation2->column;
    CHECK(new_column == kHalfA);
    table.consistency_step(*violation2);
    CHECK(table.is_closed() == std::nullopt);
    CHECK(table.is_consistent() == std::nullopt);

    const KAcceptor final_guess = table.conjecture();
    CHECK(final_guess.num_states() == 6);
    CHECK(isomorphic(final_guess, support::canonical_sum_one_acceptor()));
  }
}

TEST_CASE("consistency violations pick the least new column") {
  // Reproduces the refinement step in which both a one-letter and a
  // two-letter candidate column exist.
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  ObservationTable table = init_table({"a"}, 1, teacher);
  while (auto w = table.is_closed()) table.close_step(*w);
  table.process_counterexample(kOneA + kOneA + kOneA);
  table.consistency_step(*table.is_consistent());
  table.process_counterexample(kOneA + kHalfA + kHalfA);
  const auto v = table.is_consistent();
  REQUIRE(v.has_value());
  CHECK(TimedWord{{v->letter}} + v->column == kHalfA);
}

TEST_CASE("learning the canonical sum-equals-one acceptor") {
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  const LearnResult result = learn(teacher, {"a"}, 1, {}, true);
  CHECK(result.acceptor.num_states() == 6);
  CHECK(equivalent(result.acceptor, teacher.target()) == std::nullopt);
  CHECK(result.equivalence_queries <= 6);
  REQUIRE(result.table_log.size() >= 2);
  CHECK(result.table_log[0].u1().size() == 1);   // initial table
  CHECK(result.table_log[1].u1().size() == 4);   // first closed+consistent
}

TEST_CASE("learning the tail-zero acceptor") {
  SimulatedTeacher teacher(support::build_acceptor(support::tail_zero_automaton(), 1));
  const LearnResult result = learn(teacher, {"a"}, 1);
  CHECK(result.acceptor.num_states() == 3);
  CHECK(equivalent(result.acceptor, teacher.target()) == std::nullopt);
}

TEST_CASE("learning the empty language") {
  OneClockTA lonely;
  lonely.alphabet = {"a"};
  lonely.add_state("q", false);
  SimulatedTeacher teacher(support::build_acceptor(lonely, 1));
  const LearnResult result = learn(teacher, {"a"}, 1);
  CHECK(result.acceptor.num_states() <= 4);  // at most 2K+2
  CHECK(result.equivalence_queries == 1);
  CHECK(equivalent(result.acceptor, teacher.target()) == std::nullopt);
}

TEST_CASE("learning the two-window language over two letters") {
  SimulatedTeacher teacher(support::build_acceptor(support::two_windows_automaton(), 2));
  const LearnResult result = learn(teacher, {"a", "b"}, 2);
  CHECK(equivalent(result.acceptor, teacher.target()) == std::nullopt);
}

TEST_CASE("learned acceptors match the canonical form on a random fleet") {
  std::mt19937_64 rng(101);
  int done = 0;
  while (done < 20) {
    const int k = static_cast<int>(done % 3);
    const std::vector<std::string> alphabet =
        done % 2 == 0 ? std::vector<std::string>{"a"}
                      : std::vector<std::string>{"a", "b"};
    std::uniform_int_distribution<int> n(1, 2);
    const KAcceptor target = support::random_acceptor(rng, n(rng), k, alphabet);
    const KAcceptor canonical = minimize(target);
    if (canonical.num_states() > 10) continue;
    ++done;

    SimulatedTeacher teacher(target);
    const LearnResult result = learn(teacher, alphabet, k);
    CHECK(equivalent(result.acceptor, target) == std::nullopt);
    CHECK(result.acceptor.num_states() == canonical.num_states());
    CHECK(isomorphic(minimize(result.acceptor), canonical));

    // query bounds
    const std::uint64_t n_states = canonical.num_states();
    CHECK(result.equivalence_queries <= n_states);
    CHECK(result.membership_queries <=
          50 * (2 * k + 2) * alphabet.size() * n_states * n_states);
  }
}

TEST_CASE("each counterexample round adds a row signature") {
  // progress measured through the equivalence-query count: every conjecture
  // before the last must have strictly fewer states than its successor
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  const LearnResult result = learn(teacher, {"a"}, 1, {}, true);
  std::vector<std::size_t> sizes;
  for (const auto& table : result.table_log) {
    std::set<RowSignature> sigs;
    for (const auto& u : table.u1()) sigs.insert(table.signature(u));
    sizes.push_back(sigs.size());
  }
  CHECK(std::is_sorted(sizes.begin(), sizes.end()));
  CHECK(sizes.back() == 6);
}

TEST_CASE("rows above K extend uniformly") {
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  ObservationTable table = init_table({"a"}, 1, teacher);
  while (auto w = table.is_closed()) table.close_step(*w);
  for (const auto& u : table.u1()) {
    if (!table.cval(u).top) continue;
    const auto letters = symbolic_alphabet({"a"}, 1);
    for (std::size_t i = 1; i < letters.size(); ++i)
      CHECK(table.signature(u.appended(letters[0])) ==
            table.signature(u.appended(letters[i])));
  }
}

TEST_CASE("non integer-reset targets hit the limits") {
  auto integer_singleton = [](const TimedWord& w) {
    return w.size() == 1 && w.letters[0].delay.is_integer() && w.letters[0].symbol == "a";
  };
  auto window_then_one = [](const TimedWord& w) {
    return w.size() == 2 && w.letters[0].symbol == "a" && w.letters[1].symbol == "b" &&
           Rational(0) < w.letters[0].delay && w.letters[0].delay < Rational(1) &&
           w.letters[1].delay == Rational(1);
  };
  for (int k = 0; k <= 2; ++k) {
    {
      support::BoundedTeacher teacher(
          integer_singleton, {"a"}, k, 3,
          {make_word({{Rational(k + 1), "a"}}),
           make_word({{Rational(k + 1) + Rational(1, 10), "a"}})});
      LearnLimits limits;
      limits.max_equivalence_queries = 25;
      CHECK_THROWS_AS(learn(teacher, {"a"}, k, limits), LearnLimitError);
    }
    {
      support::BoundedTeacher teacher(
          window_then_one, {"a", "b"}, k, 2,
          {make_word({{Rational(1, 5), "a"}, {Rational(1), "b"}}),
           make_word({{Rational(1, 5), "a"}, {Rational(11, 10), "b"}})});
      LearnLimits limits;
      limits.max_equivalence_queries = 25;
      CHECK_THROWS_AS(learn(teacher, {"a", "b"}, k, limits), LearnLimitError);
    }
  }
}

TEST_CASE("learning a larger two-letter target") {
  std::mt19937_64 rng(211);
  const KAcceptor target = support::random_acceptor(rng, 4, 2, {"a", "b"});
  const KAcceptor canonical = minimize(target);
  SimulatedTeacher teacher(target);
  const LearnResult result = learn(teacher, {"a", "b"}, 2);
  CHECK(equivalent(result.acceptor, target) == std::nullopt);
  CHECK(result.acceptor.num_states() == canonical.num_states());
  CHECK(result.equivalence_queries <= canonical.num_states());
}

TEST_CASE("a table over an empty alphabet is closed") {
  OneClockTA lonely;
  lonely.add_state("q", true);
  SimulatedTeacher teacher(as_k_acceptor(lonely, 0));
  ObservationTable table = init_table({}, 0, teacher);
  CHECK(table.u2().empty());
  CHECK(table.is_closed() == std::nullopt);
  CHECK(table.is_consistent() == std::nullopt);
  CHECK(table.conjecture().num_states() == 1);
}

TEST_CASE("reprocessing a known counterexample changes nothing") {
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  ObservationTable table = init_table({"a"}, 1, teacher);
  while (auto w = table.is_closed()) table.close_step(*w);
  const TimedWord cex = kOneA + kOneA + kOneA;
  table.process_counterexample(cex);
  const auto u1 = table.u1();
  const auto u2 = table.u2();
  table.process_counterexample(cex);
  CHECK(table.u1() == u1);
  CHECK(table.u2() == u2);
}

TEST_CASE("the table always mirrors the target language") {
  SimulatedTeacher teacher(support::build_acceptor(support::tail_zero_automaton(), 1));
  const LearnResult result = learn(teacher, {"a"}, 1, {}, true);
  for (const auto& table : result.table_log) {
    auto audit = [&](const std::vector<TimedWord>& words) {
      for (const auto& u : words) {
        CHECK(table.cval(u) == capped_clock_value(u, 1));
        for (const auto& e : table.columns())
          CHECK(table.entry(u, e) == member(teacher.target(), u + e));
      }
    };
    audit(table.u1());
    audit(table.u2());
  }
}

TEST_CASE("no smaller acceptor is consistent with the first closed table") {
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  ObservationTable table = init_table({"a"}, 1, teacher);
  while (auto w = table.is_closed()) table.close_step(*w);
  REQUIRE(table.is_consistent() == std::nullopt);
  const KAcceptor conj = table.conjecture();
  REQUIRE(conj.num_states() == 4);

  // Collect the cells an alternative would have to reproduce.
  std::vector<std::pair<TimedWord, bool>> cells;
  for (const auto& u : table.u1())
    for (const auto& e : table.columns()) cells.push_back({u + e, table.entry(u, e)});
  for (const auto& u : table.u2())
    for (const auto& e : table.columns()) cells.push_back({u + e, table.entry(u, e)});

  // Exhaustively enumerate complete region-pure acceptors with fewer states.
  // A state's region fixes its outgoing structure: arrivals at integer
  // regions reset and must lead to a {0}-region state, the others keep the
  // region. The initial state has region {0}.
  const std::vector<RegionIndex> regions = {
      RegionIndex::integer(0), RegionIndex::fractional(0), RegionIndex::above()};
  bool found_smaller = false;
  for (int n = 1; n <= 3 && !found_smaller; ++n) {
    std::vector<int> region_idx(n, 0);
    for (;;) {
      if (region_idx[0] == 0) {  // initial state must carry region {0}
        for (unsigned acc_mask = 0; acc_mask < (1u << n); ++acc_mask) {
          // per (state, arrival region): target must carry the arrival's
          // follow-up region
          std::vector<std::vector<std::vector<int>>> choices(n);
          bool feasible = true;
          for (int q = 0; q < n && feasible; ++q) {
            const auto reach = elapse_reachable(regions[region_idx[q]], 1);
            choices[q].resize(reach.size());
            for (std::size_t ri = 0; ri < reach.size(); ++ri) {
              const RegionIndex arrive = reach[ri];
              const RegionIndex target_region =
                  arrive.is_integer() ? RegionIndex::integer(0) : arrive;
              for (int t = 0; t < n; ++t)
                if (regions[region_idx[t]] == target_region)
                  choices[q][ri].push_back(t);
              if (choices[q][ri].empty()) feasible = false;
            }
          }
          if (!feasible) continue;
          // depth-first over all target assignments
          std::function<bool(std::size_t, OneClockTA&)> assign =
              [&](std::size_t flat, OneClockTA& a) -> bool {
            std::size_t seen = 0;
            for (int q = 0; q < n; ++q) {
              const auto reach = elapse_reachable(regions[region_idx[q]], 1);
              for (std::size_t ri = 0; ri < reach.size(); ++ri, ++seen) {
                if (seen != flat) continue;
                for (int t : choices[q][ri]) {
                  a.add_transition(q, t, "a", region_to_guard(reach[ri], 1),
                                   reach[ri].is_integer() ? 0 : 1);
                  if (assign(flat + 1, a)) return true;
                  a.transitions.pop_back();
                }
                return false;
              }
            }
            // complete assignment: check the table cells
            for (const auto& [word, expected] : cells)
              if (member(a, word) != expected) return false;
            return true;
          };
          OneClockTA a;
          a.alphabet = {"a"};
          for (int q = 0; q < n; ++q)
            a.add_state("s" + std::to_string(q), (acc_mask >> q) & 1);
          a.initial = 0;
          if (assign(0, a)) {
            found_smaller = true;
            break;
          }
        }
      }
      // next region assignment
      int pos = n - 1;
      while (pos >= 0 && ++region_idx[pos] == 3) region_idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  CHECK_FALSE(found_smaller);
}

TEST_CASE("query limits abort early") {
  SimulatedTeacher teacher(support::canonical_sum_one_acceptor());
  LearnLimits limits;
  limits.max_membership_queries = 3;
  CHECK_THROWS_AS(learn(teacher, {"a"}, 1, limits), LearnLimitError);
}
