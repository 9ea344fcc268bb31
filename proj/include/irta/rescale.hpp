#pragma once

#include <stdexcept>
#include <vector>

#include "irta/rational.hpp"
#include "irta/region.hpp"
#include "irta/timed_word.hpp"

namespace irta {

// Piecewise-linear bijection of the open unit interval sending (0, lambda]
// onto (0, lambda'] and (lambda, 1) onto (lambda', 1).
inline Rational unit_rescale(const Rational& lambda, const Rational& lambda_prime,
                             const Rational& t) {
  const Rational one(1);
  if (lambda.is_zero() || lambda >= one || lambda_prime.is_zero() ||
      lambda_prime >= one || t.is_zero() || t >= one)
    throw std::domain_error("unit_rescale: arguments must lie in (0,1)");
  if (t <= lambda) return (lambda_prime / lambda) * t;
  return lambda_prime + ((one - lambda_prime) / (one - lambda)) * (t - lambda);
}

// Rescaling context: two region-equivalent clock values to align.
struct RescaleContext {
  Rational x;
  Rational x_prime;
  int k = 0;

  RescaleContext(Rational x_, Rational x_prime_, int k_)
      : x(std::move(x_)), x_prime(std::move(x_prime_)), k(k_) {
    if (!region_equiv(x, x_prime, k))
      throw std::invalid_argument(
          "RescaleContext: clock values are not region-equivalent");
  }
};

// Length-preserving bijection on timestamp sequences. Walking the sequence,
// y and y' are the running clock values of source and image (the clock value
// of the sequence with x resp. x' prepended). Integral and above-K steps copy
// the delay; otherwise the integer part is kept and the nonzero fraction is
// mapped through unit_rescale between the distances to the next integer.
// A zero fraction stays zero, which keeps integral delays integral.
inline std::vector<Rational> rescale_timestamps(const RescaleContext& ctx,
                                                const std::vector<Rational>& d) {
  const Rational k_rat(ctx.k);
  Rational y = step_clock(Rational(), ctx.x, ctx.k);
  Rational y_prime = step_clock(Rational(), ctx.x_prime, ctx.k);
  std::vector<Rational> out;
  out.reserve(d.size());
  for (const Rational& t : d) {
    Rational t_prime;
    if ((y.is_integer() && y_prime.is_integer()) ||
        (y > k_rat && y_prime > k_rat)) {
      t_prime = t;
    } else {
      const Rational ft = t.frac();
      if (ft.is_zero()) {
        t_prime = t;
      } else {
        const Rational one(1);
        const Rational mapped =
            unit_rescale(one - y.frac(), one - y_prime.frac(), ft);
        t_prime = Rational(t.floor()) + mapped;
      }
    }
    out.push_back(t_prime);
    y = step_clock(y, t, ctx.k);
    y_prime = step_clock(y_prime, t_prime, ctx.k);
  }
  return out;
}

inline TimedWord rescale_word(const RescaleContext& ctx, const TimedWord& w) {
  std::vector<Rational> delays;
  delays.reserve(w.size());
  for (const auto& l : w.letters) delays.push_back(l.delay);
  const auto mapped = rescale_timestamps(ctx, delays);
  TimedWord out = w;
  for (std::size_t i = 0; i < out.size(); ++i) out.letters[i].delay = mapped[i];
  return out;
}

}  // namespace irta
