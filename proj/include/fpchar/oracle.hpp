// Copyright 2026 The fpchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string_view>

#include "fpchar/exact.hpp"
#include "fpchar/format.hpp"

namespace fpchar {

enum class RoundingMode {
  TowardZero,
  NearestEven,
  TowardPositive,
  TowardNegative,
};

[[nodiscard]] constexpr std::string_view to_string(RoundingMode m) {
  switch (m) {
    case RoundingMode::TowardZero: return "toward-zero";
    case RoundingMode::NearestEven: return "nearest-even";
    case RoundingMode::TowardPositive: return "toward-positive";
    case RoundingMode::TowardNegative: return "toward-negative";
  }
  return "?";
}

[[nodiscard]] inline RoundingMode rounding_mode_by_name(std::string_view s) {
  if (s == "toward-zero") return RoundingMode::TowardZero;
  if (s == "nearest-even") return RoundingMode::NearestEven;
  if (s == "toward-positive") return RoundingMode::TowardPositive;
  if (s == "toward-negative") return RoundingMode::TowardNegative;
  throw std::invalid_argument("unknown rounding mode: " + std::string(s));
}

/// What to do when the rounded magnitude exceeds the format's largest finite
/// value. `Infinity` follows the usual convention per rounding mode (directed
/// modes that point toward zero stop at max_finite); `Saturate` always stops
/// at max_finite. Formats without special encodings saturate regardless.
enum class OverflowPolicy { Infinity, Saturate };

namespace detail {

/// Should a magnitude be bumped one unit up, given the discarded tail?
/// `guard` is the first discarded bit, `sticky` any bit below it.
[[nodiscard]] inline bool round_up(RoundingMode mode, int sign, bool guard,
                                   bool sticky, bool lsb_odd) {
  switch (mode) {
    case RoundingMode::TowardZero: return false;
    case RoundingMode::NearestEven: return guard && (sticky || lsb_odd);
    case RoundingMode::TowardPositive: return sign > 0 && (guard || sticky);
    case RoundingMode::TowardNegative: return sign < 0 && (guard || sticky);
  }
  return false;
}

[[nodiscard]] inline FloatDatum overflow_result(const FloatFormat& fmt,
                                                RoundingMode mode, int sign,
                                                OverflowPolicy policy) {
  bool to_infinity = false;
  if (policy == OverflowPolicy::Infinity && fmt.supports_specials) {
    switch (mode) {
      case RoundingMode::NearestEven: to_infinity = true; break;
      case RoundingMode::TowardZero: to_infinity = false; break;
      case RoundingMode::TowardPositive: to_infinity = sign > 0; break;
      case RoundingMode::TowardNegative: to_infinity = sign < 0; break;
    }
  }
  return to_infinity ? make_infinity(fmt, sign) : max_finite(fmt, sign);
}

}  // namespace detail

/// Rounds an exact value to a format. This is the reference semantics the
/// rest of the toolkit is measured against: correct rounding in all four
/// modes, gradual underflow, and mode-aware overflow.
[[nodiscard]] inline FloatDatum round_exact(const FloatFormat& fmt,
                                            const ExactNumber& x,
                                            RoundingMode mode,
                                            OverflowPolicy policy = OverflowPolicy::Infinity) {
  if (x.is_zero()) return make_zero(+1);

  const int f = fmt.fraction_bits;
  const std::int64_t e_val = x.exponent();
  // Quantum exponent of the destination's last significand bit. Values below
  // the normal range round against the fixed subnormal quantum instead.
  const std::int64_t q_exp =
      std::max<std::int64_t>(e_val, fmt.min_exponent()) - f;

  BigUint q;
  bool guard = false, sticky = false;
  std::int64_t shift = x.scale() - q_exp;
  if (shift >= 0) {
    q = x.magnitude() << static_cast<unsigned>(shift);
  } else {
    std::int64_t drop = -shift;
    std::int64_t width = boost::multiprecision::msb(x.magnitude()) + 1;
    if (drop > width) {
      guard = false;
      sticky = true;  // everything, including the top bit, is below the guard
    } else {
      q = x.magnitude() >> static_cast<unsigned>(drop);
      guard = boost::multiprecision::bit_test(x.magnitude(),
                                              static_cast<unsigned>(drop - 1));
      BigUint tail = x.magnitude() & ((BigUint(1) << static_cast<unsigned>(drop - 1)) - 1);
      sticky = tail != 0;
    }
  }

  bool lsb_odd = boost::multiprecision::bit_test(q, 0);
  if (detail::round_up(mode, x.sign(), guard, sticky, lsb_odd)) ++q;

  std::int64_t e_res = std::max<std::int64_t>(e_val, fmt.min_exponent());
  BigUint top = BigUint(1) << static_cast<unsigned>(f + 1);
  if (q == top) {
    // Carry out of the significand: 0.111..1 rounded up to 1.000..0.
    q >>= 1;
    e_res += 1;
  }

  if (e_res > fmt.max_exponent() && q >= (BigUint(1) << static_cast<unsigned>(f)))
    return detail::overflow_result(fmt, mode, x.sign(), policy);

  if (q == 0) return make_zero(x.sign());
  std::uint64_t sig = static_cast<std::uint64_t>(q);
  if (q < (BigUint(1) << static_cast<unsigned>(f)))
    return {FloatClass::Subnormal, x.sign(), fmt.min_exponent(), sig};
  return {FloatClass::Normal, x.sign(), static_cast<int>(e_res), sig};
}

/// round_exact with a hardware register's overflow disposition: the exponent
/// range decides, not the rounding direction. A truncating write that exceeds
/// the largest finite magnitude still stores an infinity when the format
/// keeps one; round_exact instead follows the IEEE mode-aware rule.
[[nodiscard]] inline FloatDatum round_unit(const FloatFormat& fmt,
                                           const ExactNumber& x,
                                           RoundingMode mode,
                                           OverflowPolicy policy) {
  FloatDatum r = round_exact(fmt, x, mode, OverflowPolicy::Saturate);
  if (policy != OverflowPolicy::Infinity || !fmt.supports_specials) return r;
  FloatDatum top = max_finite(fmt);
  if (r.cls != FloatClass::Normal || r.exponent != top.exponent ||
      r.significand != top.significand)
    return r;
  // Top value returned: either saturation or a legitimate round onto it.
  // Rounding again over an unbounded exponent range tells the two apart.
  FloatFormat wide{fmt.name, 18, fmt.fraction_bits, false};
  if (round_exact(wide, x, mode).exponent > fmt.max_exponent())
    return make_infinity(fmt, x.sign() < 0 ? -1 : +1);
  return r;
}

/// Correctly rounded binary operations on finite data. NaN and infinity
/// operands are outside the oracle's domain and rejected.
[[nodiscard]] inline FloatDatum oracle_add(const FloatFormat& fmt,
                                           const FloatDatum& a,
                                           const FloatDatum& b,
                                           RoundingMode mode,
                                           OverflowPolicy policy = OverflowPolicy::Infinity) {
  ExactNumber sum = exact_add(exact_value(fmt, a), exact_value(fmt, b));
  if (sum.is_zero()) {
    // IEEE sum-of-opposites rule: exact zero sums take the sign that the
    // rounding direction favors; only toward-negative picks -0.
    if (a.cls == FloatClass::Zero && b.cls == FloatClass::Zero && a.sign == b.sign)
      return make_zero(a.sign);
    return make_zero(mode == RoundingMode::TowardNegative ? -1 : +1);
  }
  return round_exact(fmt, sum, mode, policy);
}

[[nodiscard]] inline FloatDatum oracle_mul(const FloatFormat& fmt,
                                           const FloatDatum& a,
                                           const FloatDatum& b,
                                           RoundingMode mode,
                                           OverflowPolicy policy = OverflowPolicy::Infinity) {
  ExactNumber prod = exact_mul(exact_value(fmt, a), exact_value(fmt, b));
  if (prod.is_zero()) return make_zero(a.sign * b.sign);
  return round_exact(fmt, prod, mode, policy);
}

/// exact(x*y) - round(x*y): what a fused unit sees after the product is
/// rounded away. Throws if the rounded product is not finite.
[[nodiscard]] inline ExactNumber product_remainder(const FloatFormat& fmt,
                                                   const FloatDatum& x,
                                                   const FloatDatum& y) {
  ExactNumber prod = exact_mul(exact_value(fmt, x), exact_value(fmt, y));
  FloatDatum rounded = round_exact(fmt, prod, RoundingMode::NearestEven);
  if (!is_finite(rounded.cls))
    throw std::domain_error("product overflows " + fmt.name);
  return exact_sub(prod, exact_value(fmt, rounded));
}

}  // namespace fpchar
