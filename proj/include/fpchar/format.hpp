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

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fpchar {

/// Class of a decoded floating-point datum. Exactly one class applies to
/// every bit pattern of a format.
enum class FloatClass {
  Zero,
  Subnormal,
  Normal,
  Infinity,
  QuietNan,
  SignalingNan,
};

[[nodiscard]] constexpr bool is_finite(FloatClass c) {
  return c == FloatClass::Zero || c == FloatClass::Subnormal ||
         c == FloatClass::Normal;
}

[[nodiscard]] constexpr bool is_nan(FloatClass c) {
  return c == FloatClass::QuietNan || c == FloatClass::SignalingNan;
}

[[nodiscard]] constexpr std::string_view to_string(FloatClass c) {
  switch (c) {
    case FloatClass::Zero: return "zero";
    case FloatClass::Subnormal: return "subnormal";
    case FloatClass::Normal: return "normal";
    case FloatClass::Infinity: return "infinity";
    case FloatClass::QuietNan: return "quiet-nan";
    case FloatClass::SignalingNan: return "signaling-nan";
  }
  return "?";
}

/// Binary interchange format: 1 sign bit, `exponent_bits` biased exponent
/// bits, `fraction_bits` fraction bits, hidden leading significand bit.
///
/// When `supports_specials` is false the top exponent field value encodes
/// ordinary normal numbers instead of infinities and NaNs, which extends
/// `max_exponent()` by one binade. Storage-only formats on some hardware
/// behave this way.
struct FloatFormat {
  std::string name;
  int exponent_bits = 8;
  int fraction_bits = 23;
  bool supports_specials = true;

  [[nodiscard]] int total_bits() const { return 1 + exponent_bits + fraction_bits; }
  /// Significand width including the hidden bit.
  [[nodiscard]] int precision() const { return fraction_bits + 1; }
  [[nodiscard]] int bias() const { return (1 << (exponent_bits - 1)) - 1; }
  /// Smallest normal exponent (unbiased).
  [[nodiscard]] int min_exponent() const { return 1 - bias(); }
  /// Largest representable exponent (unbiased).
  [[nodiscard]] int max_exponent() const {
    return supports_specials ? bias() : bias() + 1;
  }

  [[nodiscard]] std::uint64_t fraction_mask() const {
    return (std::uint64_t{1} << fraction_bits) - 1;
  }
  [[nodiscard]] std::uint64_t exponent_field_mask() const {
    return (std::uint64_t{1} << exponent_bits) - 1;
  }
  /// MSB of the fraction field; set on quiet NaNs, clear on signaling ones.
  [[nodiscard]] std::uint64_t quiet_bit() const {
    return std::uint64_t{1} << (fraction_bits - 1);
  }
  [[nodiscard]] std::uint64_t pattern_mask() const {
    int w = total_bits();
    return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
  }

  friend bool operator==(const FloatFormat&, const FloatFormat&) = default;
};

/// Half precision: 5 exponent bits, 10 fraction bits.
[[nodiscard]] inline FloatFormat fp16() { return {"fp16", 5, 10, true}; }
/// 24-bit storage format: 7 exponent bits, 16 fraction bits. Infinities and
/// NaNs are undocumented for the hardware that uses it, so specials default
/// to unsupported.
[[nodiscard]] inline FloatFormat fp24() { return {"fp24", 7, 16, false}; }
/// Single precision: 8 exponent bits, 23 fraction bits.
[[nodiscard]] inline FloatFormat fp32() { return {"fp32", 8, 23, true}; }
/// Double precision: 11 exponent bits, 52 fraction bits.
[[nodiscard]] inline FloatFormat fp64() { return {"fp64", 11, 52, true}; }

[[nodiscard]] inline FloatFormat format_by_name(std::string_view name) {
  if (name == "fp16") return fp16();
  if (name == "fp24") return fp24();
  if (name == "fp32") return fp32();
  if (name == "fp64") return fp64();
  throw std::invalid_argument("unknown format: " + std::string(name));
}

/// A decoded number. Field meaning depends on `cls`:
///  - Zero:      sign only; exponent and significand are 0.
///  - Subnormal: significand in [1, 2^fraction_bits), exponent = min_exponent.
///  - Normal:    significand in [2^fraction_bits, 2^(fraction_bits+1)).
///  - Infinity:  sign only.
///  - NaNs:      significand holds the raw fraction field (payload including
///               the quiet bit), preserved verbatim by encode/decode.
/// Finite values equal sign * significand * 2^(exponent - fraction_bits).
struct FloatDatum {
  FloatClass cls = FloatClass::Zero;
  int sign = +1;  // +1 or -1
  int exponent = 0;
  std::uint64_t significand = 0;

  friend bool operator==(const FloatDatum&, const FloatDatum&) = default;
};

[[nodiscard]] inline FloatDatum make_zero(int sign = +1) {
  return {FloatClass::Zero, sign, 0, 0};
}

[[nodiscard]] inline FloatDatum make_infinity(const FloatFormat& fmt, int sign = +1) {
  if (!fmt.supports_specials)
    throw std::invalid_argument(fmt.name + " has no infinity encoding");
  return {FloatClass::Infinity, sign, 0, 0};
}

[[nodiscard]] inline FloatDatum make_quiet_nan(const FloatFormat& fmt, int sign = +1) {
  if (!fmt.supports_specials)
    throw std::invalid_argument(fmt.name + " has no NaN encoding");
  return {FloatClass::QuietNan, sign, 0, fmt.quiet_bit()};
}

/// Largest finite value: all-ones significand at the top usable exponent.
[[nodiscard]] inline FloatDatum max_finite(const FloatFormat& fmt, int sign = +1) {
  std::uint64_t sig = (std::uint64_t{1} << fmt.precision()) - 1;
  return {FloatClass::Normal, sign, fmt.max_exponent(), sig};
}

/// Smallest positive subnormal: one unit in the last place of the bottom
/// binade, value 2^(min_exponent - fraction_bits).
[[nodiscard]] inline FloatDatum min_subnormal(const FloatFormat& fmt, int sign = +1) {
  return {FloatClass::Subnormal, sign, fmt.min_exponent(), 1};
}

/// Splits a raw bit pattern into its classified components.
[[nodiscard]] inline FloatDatum decode(const FloatFormat& fmt, std::uint64_t bits) {
  if ((bits & ~fmt.pattern_mask()) != 0)
    throw std::invalid_argument("bit pattern wider than " + fmt.name);

  int f = fmt.fraction_bits;
  std::uint64_t frac = bits & fmt.fraction_mask();
  std::uint64_t efield = (bits >> f) & fmt.exponent_field_mask();
  int sign = ((bits >> (fmt.total_bits() - 1)) & 1) ? -1 : +1;

  if (fmt.supports_specials && efield == fmt.exponent_field_mask()) {
    if (frac == 0) return {FloatClass::Infinity, sign, 0, 0};
    FloatClass cls = (frac & fmt.quiet_bit()) ? FloatClass::QuietNan
                                              : FloatClass::SignalingNan;
    return {cls, sign, 0, frac};
  }
  if (efield == 0) {
    if (frac == 0) return {FloatClass::Zero, sign, 0, 0};
    return {FloatClass::Subnormal, sign, fmt.min_exponent(), frac};
  }
  std::uint64_t hidden = std::uint64_t{1} << f;
  return {FloatClass::Normal, sign, static_cast<int>(efield) - fmt.bias(),
          hidden | frac};
}

/// Packs a datum back into bits. Inverse of decode for every valid datum;
/// throws std::invalid_argument on out-of-range fields.
[[nodiscard]] inline std::uint64_t encode(const FloatFormat& fmt, const FloatDatum& d) {
  int f = fmt.fraction_bits;
  std::uint64_t hidden = std::uint64_t{1} << f;
  std::uint64_t sign_bit = d.sign < 0 ? (std::uint64_t{1} << (fmt.total_bits() - 1))
                                      : 0;
  if (d.sign != +1 && d.sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");

  switch (d.cls) {
    case FloatClass::Zero:
      return sign_bit;
    case FloatClass::Subnormal:
      if (d.significand == 0 || d.significand >= hidden)
        throw std::invalid_argument("subnormal significand out of range");
      if (d.exponent != fmt.min_exponent())
        throw std::invalid_argument("subnormal exponent must be min_exponent");
      return sign_bit | d.significand;
    case FloatClass::Normal: {
      if (d.significand < hidden || d.significand >= (hidden << 1))
        throw std::invalid_argument("normal significand out of range");
      if (d.exponent < fmt.min_exponent() || d.exponent > fmt.max_exponent())
        throw std::invalid_argument("normal exponent out of range for " + fmt.name);
      std::uint64_t efield = static_cast<std::uint64_t>(d.exponent + fmt.bias());
      return sign_bit | (efield << f) | (d.significand & fmt.fraction_mask());
    }
    case FloatClass::Infinity:
      if (!fmt.supports_specials)
        throw std::invalid_argument(fmt.name + " has no infinity encoding");
      return sign_bit | (fmt.exponent_field_mask() << f);
    case FloatClass::QuietNan:
    case FloatClass::SignalingNan: {
      if (!fmt.supports_specials)
        throw std::invalid_argument(fmt.name + " has no NaN encoding");
      if (d.significand == 0 || d.significand > fmt.fraction_mask())
        throw std::invalid_argument("NaN payload out of range");
      bool quiet = (d.significand & fmt.quiet_bit()) != 0;
      if (quiet != (d.cls == FloatClass::QuietNan))
        throw std::invalid_argument("NaN payload disagrees with class");
      return sign_bit | (fmt.exponent_field_mask() << f) | d.significand;
    }
  }
  throw std::invalid_argument("bad class");
}

/// Same payload with the quiet bit forced on; identity for quiet NaNs.
[[nodiscard]] inline FloatDatum quieted(const FloatFormat& fmt, const FloatDatum& d) {
  if (!is_nan(d.cls)) throw std::invalid_argument("quieted() needs a NaN");
  return {FloatClass::QuietNan, d.sign, 0, d.significand | fmt.quiet_bit()};
}

[[nodiscard]] inline FloatDatum negated(const FloatDatum& d) {
  FloatDatum r = d;
  r.sign = -r.sign;
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const FloatDatum& d) {
  os << to_string(d.cls) << '(' << (d.sign < 0 ? '-' : '+');
  if (d.cls == FloatClass::Normal || d.cls == FloatClass::Subnormal)
    os << ", e=" << d.exponent;
  if (d.cls != FloatClass::Zero && d.cls != FloatClass::Infinity) {
    os << ", sig=0x" << std::hex << d.significand << std::dec;
  }
  return os << ')';
}

}  // namespace fpchar
