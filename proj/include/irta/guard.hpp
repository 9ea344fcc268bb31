#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irta/rational.hpp"
#include "irta/region.hpp"

namespace irta {

// Atomic clock constraint: x < m, m < x, or x = m.
struct GuardAtom {
  enum class Op { Less, Greater, Equal };
  Op op = Op::Equal;
  int m = 0;

  friend bool operator==(const GuardAtom&, const GuardAtom&) = default;
  friend std::strong_ordering operator<=>(const GuardAtom&,
                                          const GuardAtom&) = default;
};

// Region-form guards (Eq, Open, Above) drive all constructions; Conj is
// the general conjunction accepted on input and removed by normalization.
struct Guard {
  enum class Kind { Eq, Open, Above, Conj };
  Kind kind = Kind::Eq;
  int m = 0;  // Eq: x=m; Open: m<x<m+1; Above: m<x
  std::vector<GuardAtom> atoms;

  static Guard eq(int m) { return {Kind::Eq, m, {}}; }
  static Guard open(int m) { return {Kind::Open, m, {}}; }
  static Guard above(int m) { return {Kind::Above, m, {}}; }
  static Guard conj(std::vector<GuardAtom> atoms) {
    return {Kind::Conj, 0, std::move(atoms)};
  }

  friend bool operator==(const Guard&, const Guard&) = default;
  friend std::strong_ordering operator<=>(const Guard&, const Guard&) = default;

  std::string str() const {
    switch (kind) {
      case Kind::Eq: return "x=" + std::to_string(m);
      case Kind::Open:
        return std::to_string(m) + "<x<" + std::to_string(m + 1);
      case Kind::Above: return std::to_string(m) + "<x";
      case Kind::Conj: {
        if (atoms.empty()) return "true";
        std::string out;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
          if (i) out += " & ";
          const auto& a = atoms[i];
          switch (a.op) {
            case GuardAtom::Op::Less: out += "x<" + std::to_string(a.m); break;
            case GuardAtom::Op::Greater: out += std::to_string(a.m) + "<x"; break;
            case GuardAtom::Op::Equal: out += "x=" + std::to_string(a.m); break;
          }
        }
        return out;
      }
    }
    return {};
  }
};

// Denotation of a guard: an interval of nonnegative reals with integer
// endpoints (possibly empty, possibly unbounded above).
struct GuardInterval {
  bool empty = false;
  std::int64_t lo = 0;
  bool lo_open = false;
  std::optional<std::int64_t> hi;  // nullopt = unbounded
  bool hi_open = false;

  bool contains(const Rational& v) const {
    if (empty) return false;
    if (v < Rational(lo) || (lo_open && v == Rational(lo))) return false;
    if (hi && (v > Rational(*hi) || (hi_open && v == Rational(*hi)))) return false;
    return true;
  }

  bool intersects(const GuardInterval& o) const {
    if (empty || o.empty) return false;
    const std::int64_t lo2 = std::max(lo, o.lo);
    const bool lo2_open = (lo == lo2 && lo_open) || (o.lo == lo2 && o.lo_open);
    if (!hi && !o.hi) return true;
    std::int64_t hi2;
    bool hi2_open;
    if (hi && o.hi) {
      hi2 = std::min(*hi, *o.hi);
      hi2_open = (*hi == hi2 && hi_open) || (*o.hi == hi2 && o.hi_open);
    } else if (hi) {
      hi2 = *hi;
      hi2_open = hi_open;
    } else {
      hi2 = *o.hi;
      hi2_open = o.hi_open;
    }
    if (lo2 > hi2) return false;
    if (lo2 == hi2) return !lo2_open && !hi2_open;
    return true;
  }
};

inline GuardInterval denotation(const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::Eq: return {false, g.m, false, g.m, false};
    case Guard::Kind::Open: return {false, g.m, true, g.m + 1, true};
    case Guard::Kind::Above: return {false, g.m, true, std::nullopt, false};
    case Guard::Kind::Conj: {
      GuardInterval iv;  // starts as [0, infinity)
      for (const auto& a : g.atoms) {
        switch (a.op) {
          case GuardAtom::Op::Less:
            if (!iv.hi || *iv.hi > a.m) { iv.hi = a.m; iv.hi_open = true; }
            else if (*iv.hi == a.m) iv.hi_open = true;
            break;
          case GuardAtom::Op::Greater:
            if (iv.lo < a.m) { iv.lo = a.m; iv.lo_open = true; }
            else if (iv.lo == a.m) iv.lo_open = true;
            break;
          case GuardAtom::Op::Equal:
            // an existing strict bound at the same point keeps its strictness
            // and empties the interval below
            if (iv.lo < a.m) { iv.lo = a.m; iv.lo_open = false; }
            if (!iv.hi || *iv.hi > a.m) { iv.hi = a.m; iv.hi_open = false; }
            break;
        }
      }
      if (iv.hi && (iv.lo > *iv.hi ||
                    (iv.lo == *iv.hi && (iv.lo_open || iv.hi_open))))
        iv.empty = true;
      return iv;
    }
  }
  return {};
}

inline bool guard_satisfied(const Guard& g, const Rational& v) {
  return denotation(g).contains(v);
}

inline bool guards_intersect(const Guard& a, const Guard& b) {
  return denotation(a).intersects(denotation(b));
}

// Largest integer constant appearing in the guard; an open guard m<x<m+1
// contains the constant m+1.
inline int guard_max_constant(const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::Eq: return g.m;
    case Guard::Kind::Open: return g.m + 1;
    case Guard::Kind::Above: return g.m;
    case Guard::Kind::Conj: {
      int mx = 0;
      for (const auto& a : g.atoms) mx = std::max(mx, a.m);
      return mx;
    }
  }
  return 0;
}

inline GuardInterval region_interval(const RegionIndex& r, int k) {
  switch (r.kind) {
    case RegionIndex::Kind::Integer: return {false, r.m, false, r.m, false};
    case RegionIndex::Kind::Fractional:
      return {false, r.m, true, r.m + 1, true};
    default: return {false, k, true, std::nullopt, false};
  }
}

inline Guard region_to_guard(const RegionIndex& r, int k) {
  switch (r.kind) {
    case RegionIndex::Kind::Integer: return Guard::eq(r.m);
    case RegionIndex::Kind::Fractional: return Guard::open(r.m);
    default: return Guard::above(k);
  }
}

// The guard whose denotation is the region of t itself.
inline Guard guard_of_value(const Rational& t, int k) {
  return region_to_guard(region_of(t, k), k);
}

// K-regions intersecting the guard's denotation. Requires K at or above the
// guard's largest constant so that every region is fully inside or fully
// outside the denotation.
inline std::vector<RegionIndex> regions_covered(const Guard& g, int k) {
  if (guard_max_constant(g) > k)
    throw std::invalid_argument(
        "regions_covered: guard constant exceeds region constant K");
  const GuardInterval iv = denotation(g);
  std::vector<RegionIndex> out;
  if (iv.empty) return out;
  for (const auto& r : all_regions(k))
    if (iv.intersects(region_interval(r, k))) out.push_back(r);
  return out;
}

// Region-form classification by denotation; accepts Conj guards whose
// denotation happens to be a point, an open unit interval, or (m, inf).
inline std::optional<Guard> region_form(const Guard& g) {
  if (g.kind != Guard::Kind::Conj) return g;
  const GuardInterval iv = denotation(g);
  if (iv.empty) return std::nullopt;
  if (iv.hi && iv.lo == *iv.hi && !iv.lo_open && !iv.hi_open)
    return Guard::eq(static_cast<int>(iv.lo));
  if (iv.hi && *iv.hi == iv.lo + 1 && iv.lo_open && iv.hi_open)
    return Guard::open(static_cast<int>(iv.lo));
  if (!iv.hi && iv.lo_open) return Guard::above(static_cast<int>(iv.lo));
  if (!iv.hi && !iv.lo_open && iv.lo == 0) return std::nullopt;  // all of R>=0
  return std::nullopt;
}

}  // namespace irta
