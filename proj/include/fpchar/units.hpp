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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "fpchar/format.hpp"
#include "fpchar/oracle.hpp"

// Bit-accurate models of the arithmetic units this toolkit characterizes:
// an adder with a configurable guard window, a multiplier that truncates
// low partial-product columns and compensates with an additive bias, a
// multiply-add whose product register width is a parameter, and the
// value-class policies applied when data crosses in or out of the units.
//
// All unit datapaths fit in 128-bit integers by construction (the widest
// case is a double-width fp64 product plus the guard window), so the
// simulators never touch arbitrary-precision arithmetic; the independent
// oracle does. Exhaustive cross-checks between the two live in the tests.

namespace fpchar {

/// Adder datapath: operands are aligned at the larger exponent and the
/// window keeps precision + guard_bits significand positions. Bits of the
/// smaller operand shifted below the window are ORed into a sticky bit when
/// enabled, and simply vanish otherwise (no borrow is taken for them).
struct AdderConfig {
  int guard_bits = 0;
  bool sticky_enabled = false;
  RoundingMode rounding = RoundingMode::TowardZero;

  friend bool operator==(const AdderConfig&, const AdderConfig&) = default;
};

/// Multiplier datapath over the (f+1) x (f+1) partial-product array. Columns
/// below `truncation_column` of the raw double-width product are dropped
/// (column 0 is the least significant); `bias_constant` is then added at
/// column 0 of the kept array, before normalization. `sign_magnitude`
/// selects how the datapath treats negative products: sign-magnitude
/// hardware computes the sign separately and truncates the magnitude, while
/// a two's-complement datapath truncates the signed value, i.e. floors it.
struct MultiplierConfig {
  int truncation_column = 0;
  std::uint64_t bias_constant = 0;
  RoundingMode rounding = RoundingMode::TowardZero;
  bool sign_magnitude = true;

  friend bool operator==(const MultiplierConfig&, const MultiplierConfig&) = default;
};

/// Multiply-add unit: the product is retained on `product_kept_bits`
/// significand bits before entering the adder. precision() keeps only what a
/// lone multiply would write back; 2 * precision() forwards the full array.
struct MadConfig {
  MultiplierConfig multiplier;
  AdderConfig adder;
  int product_kept_bits = 0;  // 0 means "format precision" at validation

  friend bool operator==(const MadConfig&, const MadConfig&) = default;
};

enum class DenormalPolicy { Preserve, FlushToZero };
enum class NanPolicy { Preserve, QuietSignaling, Unsupported };
enum class InfinityPolicy { Preserve, Unsupported };

/// What happens to each special value class when it crosses the unit
/// boundary. `Unsupported` means the class has no meaning to the hardware:
/// the pattern is passed along as plain storage bits and arithmetic reads it
/// as the ordinary value its encoding would have without specials.
struct TransferPolicy {
  DenormalPolicy denormal = DenormalPolicy::Preserve;
  NanPolicy nan = NanPolicy::Preserve;
  InfinityPolicy infinity = InfinityPolicy::Preserve;

  friend bool operator==(const TransferPolicy&, const TransferPolicy&) = default;
};

inline void validate(const AdderConfig& cfg) {
  if (cfg.guard_bits < 0 || cfg.guard_bits > 8)
    throw std::invalid_argument("guard_bits must be in [0, 8]");
}

inline void validate(const MultiplierConfig& cfg, const FloatFormat& fmt) {
  if (cfg.truncation_column < 0 || cfg.truncation_column > fmt.precision())
    throw std::invalid_argument("truncation_column must be in [0, precision]");
  if (cfg.truncation_column < 64 &&
      cfg.bias_constant >= (std::uint64_t{1} << cfg.truncation_column))
    throw std::invalid_argument("bias_constant must be below 2^truncation_column");
}

inline void validate(const MadConfig& cfg, const FloatFormat& fmt) {
  validate(cfg.adder);
  validate(cfg.multiplier, fmt);
  if (cfg.product_kept_bits < fmt.precision() ||
      cfg.product_kept_bits > 2 * fmt.precision())
    throw std::invalid_argument("product_kept_bits must be in [precision, 2*precision]");
}

namespace detail {

using u128 = unsigned __int128;

[[nodiscard]] inline int bit_width_u128(u128 x) {
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
  if (hi != 0) return 64 + std::bit_width(hi);
  return std::bit_width(static_cast<std::uint64_t>(x));
}

/// Shift right with the dropped bits ORed into `sticky`; safe for any count.
[[nodiscard]] inline u128 shr_sticky(u128 x, std::int64_t n, bool& sticky) {
  if (n <= 0) return x;
  if (n >= 128) {
    sticky = sticky || x != 0;
    return 0;
  }
  u128 kept = x >> n;
  sticky = sticky || (kept << n) != x;
  return kept;
}

/// A nonzero exact value sign * mag * 2^scale on the unit datapath.
struct Wide {
  int sign = +1;
  u128 mag = 0;
  std::int64_t scale = 0;

  [[nodiscard]] std::int64_t exponent() const {
    return scale + bit_width_u128(mag) - 1;
  }
};

[[nodiscard]] inline Wide wide_value(const FloatFormat& fmt, const FloatDatum& d) {
  return {d.sign, d.significand,
          static_cast<std::int64_t>(d.exponent) - fmt.fraction_bits};
}

/// Packs an exact datapath value into the destination format. Same contract
/// as the oracle's round_exact, reimplemented over machine integers so the
/// two can check each other.
[[nodiscard]] inline FloatDatum pack(const FloatFormat& fmt, int sign, u128 mag,
                                     std::int64_t scale, RoundingMode mode,
                                     OverflowPolicy policy) {
  if (mag == 0) return make_zero(sign);

  const int f = fmt.fraction_bits;
  const std::int64_t e_val = scale + bit_width_u128(mag) - 1;
  const std::int64_t q_exp =
      std::max<std::int64_t>(e_val, fmt.min_exponent()) - f;

  u128 q = 0;
  bool guard = false, sticky = false;
  std::int64_t shift = scale - q_exp;
  if (shift >= 0) {
    q = mag << shift;  // exact: widths stay under f+2 bits here
  } else {
    std::int64_t drop = -shift;
    u128 above_guard = shr_sticky(mag, drop - 1, sticky);
    guard = (above_guard & 1) != 0;
    q = above_guard >> 1;
  }

  if (detail::round_up(mode, sign, guard, sticky, (q & 1) != 0)) ++q;

  std::int64_t e_res = std::max<std::int64_t>(e_val, fmt.min_exponent());
  if (q == u128{1} << (f + 1)) {
    q >>= 1;
    e_res += 1;
  }

  if (e_res > fmt.max_exponent()) {
    // Units detect overflow by exponent range, not rounding direction: a
    // truncating datapath still produces an infinity when the format keeps
    // one. The IEEE mode-aware overflow lives in round_exact instead.
    if (policy == OverflowPolicy::Infinity && fmt.supports_specials)
      return make_infinity(fmt, sign);
    FloatDatum m = max_finite(fmt);
    m.sign = sign;
    return m;
  }

  if (q == 0) return make_zero(sign);
  std::uint64_t sig = static_cast<std::uint64_t>(q);
  if (q < u128{1} << f)
    return {FloatClass::Subnormal, sign, fmt.min_exponent(), sig};
  return {FloatClass::Normal, sign, static_cast<int>(e_res), sig};
}

/// Rounds a value to `bits` significand bits without any exponent clamping:
/// the retention step between a multiplier array and the downstream adder.
[[nodiscard]] inline Wide retain_bits(const Wide& v, int bits, RoundingMode mode) {
  int width = bit_width_u128(v.mag);
  if (width <= bits) return v;
  std::int64_t drop = width - bits;
  u128 q = v.mag >> drop;
  bool guard = (v.mag >> (drop - 1)) & 1;
  bool sticky = (q << drop | (guard ? u128{1} << (drop - 1) : 0)) != v.mag;
  if (round_up(mode, v.sign, guard, sticky, (q & 1) != 0)) {
    ++q;
    if (q == u128{1} << bits) {
      q >>= 1;
      drop += 1;
    }
  }
  if (q == 0) return {v.sign, 0, 0};
  return {v.sign, q, v.scale + drop};
}

/// Aligned signed sum of two nonzero values through a window of
/// `window_bits` significand positions, weights 2^e_hi down to
/// 2^(e_hi - window_bits + 1), anchored at the larger operand exponent.
/// Operand bits strictly below the window either vanish or, with sticky
/// enabled, jam into one extra position kept just below the window so that
/// a truncated tail still influences comparison and rounding. mag == 0
/// signals exact cancellation as seen by the window.
struct WindowedSum {
  int sign = +1;
  u128 mag = 0;
  std::int64_t base = 0;  // weight of unit bit 0, the jam position
};

[[nodiscard]] inline WindowedSum windowed_sum(const Wide& a, const Wide& b,
                                              int window_bits,
                                              bool sticky_enabled) {
  std::int64_t e_hi = std::max(a.exponent(), b.exponent());
  std::int64_t base = e_hi - window_bits;
  auto to_units = [&](const Wide& w) -> u128 {
    std::int64_t sh = w.scale - (base + 1);
    if (sh >= 0) return w.mag << (sh + 1);
    bool dropped = false;
    u128 u = shr_sticky(w.mag, -sh, dropped) << 1;
    if (sticky_enabled && dropped) u |= 1;
    return u;
  };
  u128 ua = to_units(a), ub = to_units(b);
  if (a.sign == b.sign) return {a.sign, ua + ub, base};
  if (ua == ub) return {+1, 0, base};
  if (ua > ub) return {a.sign, ua - ub, base};
  return {b.sign, ub - ua, base};
}

/// The exact value of the kept-and-biased multiplier array, before rounding.
/// Returns mag == 0 for a product whose kept array sums to zero.
///
/// Sign-magnitude datapath: every partial-product matrix bit in a column
/// below k is zeroed before the array is summed, so the killed mass takes
/// with it any carry it would have propagated into the kept columns; the
/// bias is then added at column 0. A two's-complement datapath instead
/// clears the low k columns of the signed product's representation, which
/// floors the signed value to a multiple of 2^k before the bias is added.
[[nodiscard]] inline Wide array_product(const FloatFormat& fmt, const FloatDatum& a,
                                        const FloatDatum& b,
                                        const MultiplierConfig& cfg) {
  const int k = cfg.truncation_column;
  const std::int64_t column0 =
      static_cast<std::int64_t>(a.exponent) + b.exponent - 2 * fmt.fraction_bits;

  u128 raw = u128{a.significand} * b.significand;
  int sign = a.sign * b.sign;

  if (cfg.sign_magnitude) {
    u128 killed = 0;
    for (int j = 0; j < k; ++j)
      if (b.significand >> j & 1)
        killed += u128{a.significand & ((std::uint64_t{1} << (k - j)) - 1)} << j;
    return {sign, raw - killed + cfg.bias_constant, column0};
  }

  u128 tail = raw & ((u128{1} << k) - 1);
  if (sign > 0) return {+1, raw - tail + cfg.bias_constant, column0};
  u128 mag = raw - tail + (tail != 0 ? u128{1} << k : 0);
  return {-1, mag - cfg.bias_constant, column0};
}

/// Every discard stage of a two's-complement multiplier floors the signed
/// value, so its truncation rounding acts as toward-negative on negative
/// products. Sign-magnitude datapaths truncate the magnitude instead.
[[nodiscard]] inline RoundingMode product_rounding(const MultiplierConfig& cfg,
                                                   int sign) {
  if (!cfg.sign_magnitude && sign < 0 && cfg.rounding == RoundingMode::TowardZero)
    return RoundingMode::TowardNegative;
  return cfg.rounding;
}

}  // namespace detail

/// Exceptions shared by the unit entry points.
inline void require_finite(const FloatDatum& d, const char* who) {
  if (!is_finite(d.cls))
    throw std::invalid_argument(std::string(who) + " requires finite operands");
}

/// Sum through an adder window of `window_bits` significand positions
/// anchored at the larger operand exponent. Exposed separately from
/// sim_add because reduced-precision paths reuse it with a custom window.
[[nodiscard]] inline FloatDatum sim_add_windowed(
    const FloatFormat& fmt, const FloatDatum& a, const FloatDatum& b,
    int window_bits, bool sticky_enabled, RoundingMode mode,
    OverflowPolicy policy = OverflowPolicy::Infinity) {
  require_finite(a, "sim_add");
  require_finite(b, "sim_add");

  if (a.cls == FloatClass::Zero && b.cls == FloatClass::Zero) {
    if (a.sign == b.sign) return make_zero(a.sign);
    return make_zero(mode == RoundingMode::TowardNegative ? -1 : +1);
  }
  if (a.cls == FloatClass::Zero) return b;
  if (b.cls == FloatClass::Zero) return a;

  detail::WindowedSum s =
      detail::windowed_sum(detail::wide_value(fmt, a), detail::wide_value(fmt, b),
                           window_bits, sticky_enabled);
  if (s.mag == 0)
    return make_zero(mode == RoundingMode::TowardNegative ? -1 : +1);
  return detail::pack(fmt, s.sign, s.mag, s.base, mode, policy);
}

/// Adder entry point: window = precision + guard bits.
[[nodiscard]] inline FloatDatum sim_add(const FloatFormat& fmt, const FloatDatum& a,
                                        const FloatDatum& b, const AdderConfig& cfg,
                                        OverflowPolicy policy = OverflowPolicy::Infinity) {
  validate(cfg);
  return sim_add_windowed(fmt, a, b, fmt.precision() + cfg.guard_bits,
                          cfg.sticky_enabled, cfg.rounding, policy);
}

[[nodiscard]] inline FloatDatum sim_sub(const FloatFormat& fmt, const FloatDatum& a,
                                        const FloatDatum& b, const AdderConfig& cfg,
                                        OverflowPolicy policy = OverflowPolicy::Infinity) {
  return sim_add(fmt, a, negated(b), cfg, policy);
}

/// Multiplier entry point: truncated array, bias, one rounding to format.
[[nodiscard]] inline FloatDatum sim_mul(const FloatFormat& fmt, const FloatDatum& a,
                                        const FloatDatum& b, const MultiplierConfig& cfg,
                                        OverflowPolicy policy = OverflowPolicy::Infinity) {
  validate(cfg, fmt);
  require_finite(a, "sim_mul");
  require_finite(b, "sim_mul");

  if (a.cls == FloatClass::Zero || b.cls == FloatClass::Zero)
    return make_zero(a.sign * b.sign);

  detail::Wide p = detail::array_product(fmt, a, b, cfg);
  if (p.mag == 0) return make_zero(p.sign);
  return detail::pack(fmt, p.sign, p.mag, p.scale,
                      detail::product_rounding(cfg, p.sign), policy);
}

/// Multiply-add entry point. With product_kept_bits == precision the product
/// takes the ordinary multiplier writeback and the result is bit-identical
/// to sim_add(sim_mul(x, y), z); wider settings hand the adder a product
/// that was never rounded to storage precision.
[[nodiscard]] inline FloatDatum sim_mad(const FloatFormat& fmt, const FloatDatum& x,
                                        const FloatDatum& y, const FloatDatum& z,
                                        const MadConfig& cfg,
                                        OverflowPolicy policy = OverflowPolicy::Infinity) {
  validate(cfg, fmt);
  require_finite(x, "sim_mad");
  require_finite(y, "sim_mad");
  require_finite(z, "sim_mad");

  if (cfg.product_kept_bits == fmt.precision()) {
    FloatDatum t = sim_mul(fmt, x, y, cfg.multiplier, policy);
    if (!is_finite(t.cls)) return t;  // overflowed product dominates the sum
    return sim_add(fmt, t, z, cfg.adder, policy);
  }

  FloatDatum t_zero = make_zero(x.sign * y.sign);
  detail::Wide t{};
  if (x.cls != FloatClass::Zero && y.cls != FloatClass::Zero) {
    t = detail::array_product(fmt, x, y, cfg.multiplier);
    t = detail::retain_bits(t, cfg.product_kept_bits,
                            detail::product_rounding(cfg.multiplier, t.sign));
  }
  if (t.mag == 0)
    return sim_add_windowed(fmt, t_zero, z,
                            fmt.precision() + cfg.adder.guard_bits,
                            cfg.adder.sticky_enabled, cfg.adder.rounding, policy);

  // The retained product enters the adder at full width: the window grows to
  // cover it, and only the final pack rounds down to storage precision.
  int window = std::max(cfg.product_kept_bits, fmt.precision()) + cfg.adder.guard_bits;
  if (z.cls == FloatClass::Zero)
    return detail::pack(fmt, t.sign, t.mag, t.scale, cfg.adder.rounding, policy);

  detail::WindowedSum s = detail::windowed_sum(t, detail::wide_value(fmt, z), window,
                                               cfg.adder.sticky_enabled);
  if (s.mag == 0)
    return make_zero(cfg.adder.rounding == RoundingMode::TowardNegative ? -1 : +1);
  return detail::pack(fmt, s.sign, s.mag, s.base, cfg.adder.rounding, policy);
}

/// Applies the value-class policy to a stored bit pattern. Idempotent.
[[nodiscard]] inline std::uint64_t sim_transfer(const FloatFormat& fmt,
                                                std::uint64_t bits,
                                                const TransferPolicy& policy) {
  FloatDatum d = decode(fmt, bits);
  switch (d.cls) {
    case FloatClass::Subnormal:
      if (policy.denormal == DenormalPolicy::FlushToZero)
        return encode(fmt, make_zero(d.sign));
      return bits;
    case FloatClass::SignalingNan:
      if (policy.nan == NanPolicy::QuietSignaling)
        return encode(fmt, quieted(fmt, d));
      return bits;
    default:
      return bits;
  }
}

}  // namespace fpchar
