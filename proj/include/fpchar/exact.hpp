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
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpchar/format.hpp"

namespace fpchar {

using BigUint = boost::multiprecision::cpp_int;

/// A dyadic rational sign * magnitude * 2^scale, exact under addition and
/// multiplication. Canonical form: the magnitude is odd when nonzero, and
/// zero forces sign = +1 and scale = 0, so equal values have equal fields.
class ExactNumber {
 public:
  ExactNumber() = default;

  ExactNumber(int sign, BigUint magnitude, std::int64_t scale)
      : sign_(sign), magnitude_(std::move(magnitude)), scale_(scale) {
    if (sign_ != +1 && sign_ != -1)
      throw std::invalid_argument("sign must be +1 or -1");
    if (magnitude_ < 0)
      throw std::invalid_argument("magnitude must be non-negative");
    canonicalize();
  }

  [[nodiscard]] int sign() const { return sign_; }
  [[nodiscard]] const BigUint& magnitude() const { return magnitude_; }
  [[nodiscard]] std::int64_t scale() const { return scale_; }
  [[nodiscard]] bool is_zero() const { return magnitude_ == 0; }

  /// Exponent of the value: floor(log2 |x|). Requires a nonzero value.
  [[nodiscard]] std::int64_t exponent() const {
    if (is_zero()) throw std::domain_error("zero has no exponent");
    return scale_ + static_cast<std::int64_t>(boost::multiprecision::msb(magnitude_));
  }

  [[nodiscard]] ExactNumber negated() const {
    if (is_zero()) return {};
    return ExactNumber(-sign_, magnitude_, scale_);
  }

  friend bool operator==(const ExactNumber&, const ExactNumber&) = default;

 private:
  void canonicalize() {
    if (magnitude_ == 0) {
      sign_ = +1;
      scale_ = 0;
      return;
    }
    unsigned low = boost::multiprecision::lsb(magnitude_);
    if (low > 0) {
      magnitude_ >>= low;
      scale_ += low;
    }
  }

  int sign_ = +1;
  BigUint magnitude_ = 0;
  std::int64_t scale_ = 0;
};

/// Exact value of a finite datum: sign * significand * 2^(exponent - f).
[[nodiscard]] inline ExactNumber exact_value(const FloatFormat& fmt,
                                             const FloatDatum& d) {
  if (!is_finite(d.cls))
    throw std::invalid_argument("exact_value needs a finite datum");
  if (d.cls == FloatClass::Zero) return {};
  return ExactNumber(d.sign, BigUint(d.significand),
                     static_cast<std::int64_t>(d.exponent) - fmt.fraction_bits);
}

[[nodiscard]] inline ExactNumber exact_add(const ExactNumber& a,
                                           const ExactNumber& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;

  // Align both magnitudes at the smaller scale; the gap is bounded by the
  // exponent range of the operands, not by their precision.
  std::int64_t common = std::min(a.scale(), b.scale());
  BigUint ma = a.magnitude() << static_cast<unsigned>(a.scale() - common);
  BigUint mb = b.magnitude() << static_cast<unsigned>(b.scale() - common);

  if (a.sign() == b.sign()) return ExactNumber(a.sign(), ma + mb, common);
  if (ma == mb) return {};
  if (ma > mb) return ExactNumber(a.sign(), ma - mb, common);
  return ExactNumber(b.sign(), mb - ma, common);
}

[[nodiscard]] inline ExactNumber exact_sub(const ExactNumber& a,
                                           const ExactNumber& b) {
  return exact_add(a, b.negated());
}

[[nodiscard]] inline ExactNumber exact_mul(const ExactNumber& a,
                                           const ExactNumber& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ExactNumber(a.sign() * b.sign(), a.magnitude() * b.magnitude(),
                     a.scale() + b.scale());
}

/// Three-way value comparison: -1, 0 or +1.
[[nodiscard]] inline int exact_compare(const ExactNumber& a, const ExactNumber& b) {
  ExactNumber d = exact_sub(a, b);
  if (d.is_zero()) return 0;
  return d.sign();
}

}  // namespace fpchar
