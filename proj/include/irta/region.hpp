#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "irta/rational.hpp"
#include "irta/timed_word.hpp"

namespace irta {

// One of the 2K+2 clock regions for a constant K: the points {0}, ..., {K},
// the open unit intervals (0,1), ..., (K-1,K), and (K, infinity).
struct RegionIndex {
  enum class Kind { Integer, Fractional, Above };
  Kind kind = Kind::Integer;
  int m = 0;  // Integer: the point m; Fractional: the interval (m, m+1)

  static RegionIndex integer(int m) { return {Kind::Integer, m}; }
  static RegionIndex fractional(int m) { return {Kind::Fractional, m}; }
  static RegionIndex above() { return {Kind::Above, 0}; }

  bool is_integer() const { return kind == Kind::Integer; }
  bool is_above() const { return kind == Kind::Above; }

  friend bool operator==(const RegionIndex&, const RegionIndex&) = default;
  friend std::strong_ordering operator<=>(const RegionIndex& a,
                                          const RegionIndex& b) {
    auto rank = [](const RegionIndex& r) {
      if (r.kind == Kind::Above) return 1 + 2 * (1 << 20);
      return 2 * r.m + (r.kind == Kind::Fractional ? 1 : 0);
    };
    return rank(a) <=> rank(b);
  }

  std::string str() const {
    switch (kind) {
      case Kind::Integer: return "{" + std::to_string(m) + "}";
      case Kind::Fractional:
        return "(" + std::to_string(m) + "," + std::to_string(m + 1) + ")";
      default: return ">K";
    }
  }
};

inline RegionIndex region_of(const Rational& x, int k) {
  if (x > Rational(k)) return RegionIndex::above();
  if (x.is_integer()) return RegionIndex::integer(static_cast<int>(x.floor()));
  return RegionIndex::fractional(static_cast<int>(x.floor()));
}

inline bool region_equiv(const Rational& x, const Rational& y, int k) {
  return region_of(x, k) == region_of(y, k);
}

inline std::vector<RegionIndex> all_regions(int k) {
  std::vector<RegionIndex> out;
  out.reserve(2 * k + 2);
  for (int m = 0; m <= k; ++m) {
    out.push_back(RegionIndex::integer(m));
    if (m < k) out.push_back(RegionIndex::fractional(m));
  }
  out.push_back(RegionIndex::above());
  return out;
}

// Regions a clock can be in after letting time elapse from region r.
inline std::vector<RegionIndex> elapse_reachable(const RegionIndex& r, int k) {
  std::vector<RegionIndex> out;
  switch (r.kind) {
    case RegionIndex::Kind::Integer:
      for (int m = r.m; m <= k; ++m) {
        out.push_back(RegionIndex::integer(m));
        if (m < k) out.push_back(RegionIndex::fractional(m));
      }
      break;
    case RegionIndex::Kind::Fractional:
      for (int m = r.m; m <= k; ++m) {
        if (m < k) out.push_back(RegionIndex::fractional(m));
        if (m + 1 <= k) out.push_back(RegionIndex::integer(m + 1));
      }
      break;
    case RegionIndex::Kind::Above:
      break;
  }
  out.push_back(RegionIndex::above());
  return out;
}

// The clock value a small half-integral word actually produces inside the
// region: m for {m}, m+1/2 for (m, m+1), and K+1/2 above K.
inline Rational canonical_clock(const RegionIndex& r, int k) {
  switch (r.kind) {
    case RegionIndex::Kind::Integer: return Rational(r.m);
    case RegionIndex::Kind::Fractional: return Rational(2 * r.m + 1, 2);
    default: return Rational(2 * k + 1, 2);
  }
}

inline RegionIndex advance(const RegionIndex& r, const Rational& delay, int k) {
  return region_of(canonical_clock(r, k) + delay, k);
}

// Positions where every strict automaton with constant K is forced to reset:
// the maximal chain of indices whose consecutive block sums are integers in
// [0, K], scanned greedily left to right. Always contains 0.
inline std::vector<std::size_t> integral_positions(const TimedWord& w, int k) {
  std::vector<std::size_t> marks{0};
  Rational block;
  for (std::size_t i = 0; i < w.size(); ++i) {
    block += w.letters[i].delay;
    if (block.is_integer() && block <= Rational(k)) {
      marks.push_back(i + 1);
      block = Rational();
    }
  }
  return marks;
}

// Clock value after reading w in any strict automaton with constant K:
// the delay sum after the last integral position.
inline Rational clock_value(const TimedWord& w, int k) {
  Rational block;
  for (std::size_t i = 0; i < w.size(); ++i) {
    block += w.letters[i].delay;
    if (block.is_integer() && block <= Rational(k)) block = Rational();
  }
  return block;
}

// One-step update of the quantity computed by clock_value.
inline Rational step_clock(const Rational& current, const Rational& delay, int k) {
  const Rational next = current + delay;
  if (next.is_integer() && next <= Rational(k)) return Rational();
  return next;
}

// clock_value with every outcome above K collapsed into a single symbol.
struct ClockValueTop {
  bool top = false;
  Rational value;  // meaningful only when !top

  static ClockValueTop of(const Rational& v) { return {false, v}; }
  static ClockValueTop top_value() { return {true, {}}; }

  friend bool operator==(const ClockValueTop& a, const ClockValueTop& b) {
    return a.top == b.top && (a.top || a.value == b.value);
  }
  friend bool operator<(const ClockValueTop& a, const ClockValueTop& b) {
    if (a.top != b.top) return !a.top;
    if (a.top) return false;
    return a.value < b.value;
  }

  std::string str() const { return top ? "top" : value.str(); }
};

inline ClockValueTop capped_clock_value(const TimedWord& w, int k) {
  const Rational c = clock_value(w, k);
  if (c < Rational(k) || c.is_zero()) return ClockValueTop::of(c);
  return ClockValueTop::top_value();
}

}  // namespace irta
