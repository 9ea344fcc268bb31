#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "irta/acceptor.hpp"
#include "irta/canonical.hpp"

namespace irta {

// Raised when the learning loop runs out of its query budget or receives a
// counterexample it cannot turn into progress; both indicate that the target
// is not recognizable with the assumed constant K.
struct LearnLimitError : std::runtime_error {
  LearnLimitError(const std::string& what, std::uint64_t mq, std::uint64_t eq)
      : std::runtime_error(what), membership_queries(mq), equivalence_queries(eq) {}
  std::uint64_t membership_queries = 0;
  std::uint64_t equivalence_queries = 0;
};

// Minimally adequate teacher: membership plus equivalence with
// counterexamples. Query counters live in the base so every implementation
// reports them the same way.
class Teacher {
public:
  virtual ~Teacher() = default;

  bool member(const TimedWord& w) {
    ++membership_queries_;
    return query_membership(w);
  }

  std::optional<TimedWord> equivalence(const KAcceptor& hypothesis) {
    ++equivalence_queries_;
    return query_equivalence(hypothesis);
  }

  std::uint64_t membership_queries() const { return membership_queries_; }
  std::uint64_t equivalence_queries() const { return equivalence_queries_; }

protected:
  virtual bool query_membership(const TimedWord& w) = 0;
  virtual std::optional<TimedWord> query_equivalence(const KAcceptor& h) = 0;

private:
  std::uint64_t membership_queries_ = 0;
  std::uint64_t equivalence_queries_ = 0;
};

// Teacher backed by a known target acceptor: membership by running the
// target, equivalence by the product check, which returns a shortest
// half-integral counterexample.
class SimulatedTeacher final : public Teacher {
public:
  explicit SimulatedTeacher(KAcceptor target) : target_(std::move(target)) {}

  const KAcceptor& target() const { return target_; }

protected:
  bool query_membership(const TimedWord& w) override {
    return irta::member(target_, w);
  }

  std::optional<TimedWord> query_equivalence(const KAcceptor& h) override {
    return equivalent(h, target_);
  }

private:
  KAcceptor target_;
};

struct RowSignature {
  std::vector<std::int8_t> row;  // one bit per column of E, in E order
  ClockValueTop cval;

  friend bool operator==(const RowSignature& a, const RowSignature& b) {
    return a.cval == b.cval && a.row == b.row;
  }
  friend bool operator<(const RowSignature& a, const RowSignature& b) {
    if (a.cval < b.cval) return true;
    if (b.cval < a.cval) return false;
    return a.row < b.row;
  }
};

struct ConsistencyViolation {
  TimedWord u;
  TimedWord w;
  SymbolicLetter letter;
  TimedWord column;  // existing column e; the new column is letter.column
};

// Angluin-style observation table over the symbolic alphabet, with the
// capped clock value as an extra, locally computed column. U1 is
// prefix-closed, U2 holds the one-letter extensions of U1 not in U1, and E
// is suffix-closed containing the empty word.
class ObservationTable {
public:
  ObservationTable(std::vector<std::string> alphabet, int k, Teacher& teacher)
      : alphabet_(std::move(alphabet)), k_(k),
        letters_(alphabet_.empty() ? std::vector<SymbolicLetter>{}
                                   : symbolic_alphabet(alphabet_, k)),
        teacher_(&teacher) {
    u1_.push_back(TimedWord{});
    e_.push_back(TimedWord{});
    rebuild_u2();
    fill();
  }

  const std::vector<TimedWord>& u1() const { return u1_; }
  const std::vector<TimedWord>& u2() const { return u2_; }
  const std::vector<TimedWord>& columns() const { return e_; }
  int k() const { return k_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  bool entry(const TimedWord& u, const TimedWord& e) const {
    return lookup(u + e);
  }

  ClockValueTop cval(const TimedWord& u) const {
    return capped_clock_value(u, k_);
  }

  RowSignature signature(const TimedWord& u) const {
    RowSignature sig;
    sig.cval = cval(u);
    sig.row.reserve(e_.size());
    for (const auto& e : e_) sig.row.push_back(lookup(u + e) ? 1 : 0);
    return sig;
  }

  // Least (length, then lex) extension word whose signature is missing from
  // U1, or nothing when the table is closed.
  std::optional<TimedWord> is_closed() const {
    std::set<RowSignature> known;
    for (const auto& u : u1_) known.insert(signature(u));
    std::vector<TimedWord> sorted = u2_;
    std::sort(sorted.begin(), sorted.end(), ShortlexLess{});
    for (const auto& w : sorted)
      if (!known.count(signature(w))) return w;
    return std::nullopt;
  }

  // Violation of consistency whose induced new column, letter.e, is the
  // least (length, then lex) among all violations; nothing when consistent.
  std::optional<ConsistencyViolation> is_consistent() const {
    std::vector<TimedWord> sorted = u1_;
    std::sort(sorted.begin(), sorted.end(), ShortlexLess{});
    std::vector<RowSignature> sigs;
    sigs.reserve(sorted.size());
    for (const auto& u : sorted) sigs.push_back(signature(u));

    std::optional<ConsistencyViolation> best;
    TimedWord best_column;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      for (std::size_t j = i + 1; j < sorted.size(); ++j) {
        if (!(sigs[i] == sigs[j])) continue;
        for (const auto& letter : letters_) {
          const TimedWord ue = sorted[i].appended(letter);
          const TimedWord we = sorted[j].appended(letter);
          for (const auto& e : e_) {
            if (lookup(ue + e) == lookup(we + e)) continue;
            const TimedWord column = TimedWord{{letter}} + e;
            if (!best || shortlex_less(column, best_column)) {
              best = ConsistencyViolation{sorted[i], sorted[j], letter, e};
              best_column = column;
            }
          }
        }
      }
    }
    return best;
  }

  // Moves the witness into U1 and extends U2. Adding a word whose signature
  // is already represented in U1 is a no-op.
  void close_step(const TimedWord& witness) {
    for (const auto& u : u1_)
      if (signature(u) == signature(witness)) return;
    u1_.push_back(witness);
    rebuild_u2();
    fill();
  }

  void consistency_step(const ConsistencyViolation& v) {
    const TimedWord column = TimedWord{{v.letter}} + v.column;
    for (const auto& e : e_)
      if (e == column) return;
    e_.push_back(column);
    fill();
  }

  // Adds every prefix of the counterexample to U1.
  void process_counterexample(const TimedWord& cex) {
    for (std::size_t n = 1; n <= cex.size(); ++n) {
      const TimedWord p = cex.prefix(n);
      bool present = false;
      for (const auto& u : u1_)
        if (u == p) {
          present = true;
          break;
        }
      if (!present) u1_.push_back(p);
    }
    rebuild_u2();
    fill();
  }

  // The acceptor induced by a closed and consistent table: states are the
  // distinct row signatures of U1, transitions follow the region advance of
  // the signature's clock value.
  KAcceptor conjecture() const {
    std::map<RowSignature, int> state_of;
    std::vector<const TimedWord*> representative;

    KAcceptor acc;
    acc.k = k_;
    acc.ta.alphabet = alphabet_;
    for (const auto& u : u1_) {
      const RowSignature sig = signature(u);
      if (state_of.count(sig)) continue;
      const int id = acc.ta.add_state(u.empty() ? "eps" : word_text(u),
                                      lookup(u) /* entry at column eps */);
      state_of.emplace(sig, id);
      representative.push_back(&u);
      acc.region_map.push_back(sig.cval.top
                                   ? RegionIndex::above()
                                   : region_of(sig.cval.value, k_));
    }
    acc.ta.initial = state_of.at(signature(TimedWord{}));

    for (std::size_t q = 0; q < representative.size(); ++q) {
      const TimedWord& u = *representative[q];
      const ClockValueTop c = cval(u);
      std::set<std::pair<std::string, Guard>> done;
      for (const auto& letter : letters_) {
        const Guard guard = c.top ? Guard::above(k_)
                                  : guard_of_value(c.value + letter.delay, k_);
        if (!done.emplace(letter.symbol, guard).second) continue;
        const bool resets = !c.top && (c.value + letter.delay).is_integer() &&
                            c.value + letter.delay <= Rational(k_);
        const RowSignature target = signature(u.appended(letter));
        const auto it = state_of.find(target);
        if (it == state_of.end())
          throw std::logic_error("conjecture: table is not closed");
        acc.ta.add_transition(static_cast<int>(q), it->second, letter.symbol,
                              guard, resets ? 0 : 1);
      }
    }
    acc.sink = detail::find_dead_state(acc.ta);
    return acc;
  }

  std::uint64_t membership_queries() const { return teacher_->membership_queries(); }

private:
  bool lookup(const TimedWord& w) const {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    const bool v = teacher_->member(w);
    cache_.emplace(w, v);
    return v;
  }

  void rebuild_u2() {
    u2_.clear();
    std::set<TimedWord> in_u1(u1_.begin(), u1_.end());
    std::set<TimedWord> seen;
    for (const auto& u : u1_)
      for (const auto& letter : letters_) {
        TimedWord w = u.appended(letter);
        if (in_u1.count(w)) continue;
        if (seen.insert(w).second) u2_.push_back(w);
      }
  }

  void fill() {
    for (const auto& u : u1_)
      for (const auto& e : e_) (void)lookup(u + e);
    for (const auto& w : u2_)
      for (const auto& e : e_) (void)lookup(w + e);
  }

  std::vector<std::string> alphabet_;
  int k_;
  std::vector<SymbolicLetter> letters_;
  Teacher* teacher_;
  std::vector<TimedWord> u1_;  // in insertion order (prefix-closed)
  std::vector<TimedWord> u2_;
  std::vector<TimedWord> e_;   // in insertion order (suffix-closed)
  mutable std::map<TimedWord, bool> cache_;
};

inline ObservationTable init_table(const std::vector<std::string>& alphabet,
                                   int k, Teacher& teacher) {
  return ObservationTable(alphabet, k, teacher);
}

struct LearnLimits {
  std::uint64_t max_membership_queries = 1'000'000;
  std::uint64_t max_equivalence_queries = 200;

  // Ten times the expected canonical size; convergence needs at most one
  // equivalence query per state of the canonical acceptor.
  static LearnLimits for_expected_states(std::uint64_t n) {
    LearnLimits limits;
    limits.max_equivalence_queries = 10 * std::max<std::uint64_t>(n, 1);
    return limits;
  }
};

struct LearnResult {
  KAcceptor acceptor;
  std::uint64_t membership_queries = 0;
  std::uint64_t equivalence_queries = 0;
  std::vector<ObservationTable> table_log;  // filled when logging is on
};

// The L*-style loop: close and make consistent, conjecture, ask for
// equivalence, fold counterexamples back into the table. Counterexamples
// that are not small half-integral words are first replaced by a witness
// reaching the same states; if the witness is not itself a counterexample
// the target cannot be recognized with this K and the loop aborts.
inline LearnResult learn(Teacher& teacher, const std::vector<std::string>& alphabet,
                         int k, const LearnLimits& limits = {},
                         bool log_tables = false) {
  ObservationTable table(alphabet, k, teacher);
  LearnResult result;
  if (log_tables) result.table_log.push_back(table);

  auto check_limits = [&]() {
    if (teacher.membership_queries() > limits.max_membership_queries)
      throw LearnLimitError("membership query limit exceeded",
                            teacher.membership_queries(),
                            teacher.equivalence_queries());
    if (teacher.equivalence_queries() > limits.max_equivalence_queries)
      throw LearnLimitError("equivalence query limit exceeded",
                            teacher.membership_queries(),
                            teacher.equivalence_queries());
  };

  for (;;) {
    for (;;) {
      check_limits();
      if (auto witness = table.is_closed()) {
        table.close_step(*witness);
        continue;
      }
      if (auto violation = table.is_consistent()) {
        table.consistency_step(*violation);
        continue;
      }
      break;
    }
    if (log_tables) result.table_log.push_back(table);  // closed and consistent

    const KAcceptor hypothesis = table.conjecture();
    check_limits();
    const auto cex = teacher.equivalence(hypothesis);
    if (!cex) {
      result.acceptor = hypothesis;
      result.membership_queries = teacher.membership_queries();
      result.equivalence_queries = teacher.equivalence_queries();
      return result;
    }

    TimedWord usable = *cex;
    if (!is_half_integral(usable) || !is_small(usable, k)) {
      usable = half_integral_witness(TimedWord{}, *cex, k);
      // The witness reaches the same state of the hypothesis as the original
      // counterexample; if the teacher classifies it like the hypothesis
      // does, no K-acceptor separates the two and learning cannot progress.
      if (teacher.member(usable) == member(hypothesis, usable))
        throw LearnLimitError(
            "counterexample has no usable half-integral witness; the target "
            "language is not recognizable with this K",
            teacher.membership_queries(), teacher.equivalence_queries());
    }
    table.process_counterexample(usable);
    if (log_tables) result.table_log.push_back(table);
    check_limits();
  }
}

inline std::unique_ptr<SimulatedTeacher> simulated_teacher(KAcceptor target) {
  return std::make_unique<SimulatedTeacher>(std::move(target));
}

}  // namespace irta
