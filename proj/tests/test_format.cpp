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

#include <catch2/catch_amalgamated.hpp>

#include "fpchar/format.hpp"
#include "fpchar/exact.hpp"
#include "test_util.hpp"

using namespace fpchar;

TEST_CASE("derived format constants", "[format]") {
  CHECK(fp16().bias() == 15);
  CHECK(fp16().min_exponent() == -14);
  CHECK(fp16().max_exponent() == 15);
  CHECK(fp16().precision() == 11);

  CHECK(fp24().bias() == 63);
  CHECK(fp24().min_exponent() == -62);
  CHECK(fp24().max_exponent() == 64);  // top field is a normal binade
  CHECK_FALSE(fp24().supports_specials);

  CHECK(fp32().bias() == 127);
  CHECK(fp32().min_exponent() == -126);
  CHECK(fp32().max_exponent() == 127);
  CHECK(fp32().precision() == 24);

  CHECK(fp64().bias() == 1023);
  CHECK(fp64().min_exponent() == -1022);
  CHECK(fp64().max_exponent() == 1023);
  CHECK(fp64().precision() == 53);

  CHECK_THROWS_AS(format_by_name("fp128"), std::invalid_argument);
}

TEST_CASE("decode classifies canonical fp32 patterns", "[format]") {
  FloatFormat f = fp32();

  FloatDatum d = decode(f, 0x3FC00000);  // 1.5
  CHECK(d.cls == FloatClass::Normal);
  CHECK(d.sign == +1);
  CHECK(d.exponent == 0);
  CHECK(d.significand == 0xC00000);

  d = decode(f, 0x80000000);  // -0
  CHECK(d.cls == FloatClass::Zero);
  CHECK(d.sign == -1);
  CHECK(decode(f, 0x00000000) != d);  // signed zeros stay distinct

  CHECK(decode(f, 0x7F800000) == make_infinity(f, +1));
  CHECK(decode(f, 0xFF800000) == make_infinity(f, -1));

  d = decode(f, 0x7FC00000);
  CHECK(d.cls == FloatClass::QuietNan);
  CHECK(d.significand == 0x400000);

  d = decode(f, 0x7F800001);
  CHECK(d.cls == FloatClass::SignalingNan);
  CHECK(d.significand == 1);

  CHECK(decode(f, 0x00000001) == min_subnormal(f));
  d = decode(f, 0x00800000);  // smallest normal
  CHECK(d.cls == FloatClass::Normal);
  CHECK(d.exponent == f.min_exponent());

  d = decode(fp64(), 0x3FF0000000000001ull);
  CHECK(d.significand == (std::uint64_t{1} << 52) + 1);
}

TEST_CASE("encode inverts decode on every fp16 pattern", "[format]") {
  FloatFormat f = fp16();
  std::size_t counts[6] = {};
  for (std::uint64_t bits = 0; bits < 0x10000; ++bits) {
    FloatDatum d = decode(f, bits);
    REQUIRE(encode(f, d) == bits);
    counts[static_cast<int>(d.cls)]++;
  }
  // The classes partition the pattern space.
  CHECK(counts[static_cast<int>(FloatClass::Zero)] == 2);
  CHECK(counts[static_cast<int>(FloatClass::Subnormal)] == 2 * 1023);
  CHECK(counts[static_cast<int>(FloatClass::Normal)] == 2 * 30 * 1024);
  CHECK(counts[static_cast<int>(FloatClass::Infinity)] == 2);
  CHECK(counts[static_cast<int>(FloatClass::QuietNan)] == 2 * 512);
  CHECK(counts[static_cast<int>(FloatClass::SignalingNan)] == 2 * 511);
}

TEST_CASE("fp24 has no special encodings", "[format]") {
  FloatFormat f = fp24();
  FloatDatum top = decode(f, 0xFFFFFF);
  CHECK(top.cls == FloatClass::Normal);
  CHECK(top.sign == -1);
  CHECK(top.exponent == 64);
  CHECK(top.significand == 0x1FFFF);
  CHECK(top == max_finite(f, -1));

  CHECK_THROWS_AS(make_infinity(f), std::invalid_argument);
  CHECK_THROWS_AS(make_quiet_nan(f), std::invalid_argument);
  CHECK_THROWS_AS(encode(f, FloatDatum{FloatClass::Infinity, +1, 0, 0}),
                  std::invalid_argument);

  for (std::uint64_t bits : {0x000000ull, 0x7FFFFFull, 0x800001ull, 0xC00000ull})
    CHECK(encode(f, decode(f, bits)) == bits);
}

TEST_CASE("extremal values", "[format]") {
  CHECK(encode(fp32(), max_finite(fp32())) == 0x7F7FFFFF);
  CHECK(encode(fp32(), min_subnormal(fp32(), -1)) == 0x80000001);

  // Largest fp16 value is 65504.
  CHECK(exact_value(fp16(), max_finite(fp16())) == test::exact(65504));

  // Smallest positive fp32 subnormal is 2^-149.
  CHECK(exact_value(fp32(), min_subnormal(fp32())) ==
        ExactNumber(+1, 1, -149));

  // No finite fp16 pattern exceeds max_finite.
  FloatFormat f = fp16();
  ExactNumber top = exact_value(f, max_finite(f));
  for (std::uint64_t bits = 0; bits < 0x10000; ++bits) {
    FloatDatum d = decode(f, bits);
    if (!is_finite(d.cls)) continue;
    CHECK(exact_compare(exact_value(f, d), top) <= 0);
  }
}

TEST_CASE("NaN payloads survive the round trip verbatim", "[format]") {
  FloatFormat f = fp32();
  for (std::uint64_t payload : {0x412345ull, 0x400001ull, 0x7FFFFFull}) {
    FloatDatum d{FloatClass::QuietNan, -1, 0, payload};
    CHECK(decode(f, encode(f, d)) == d);
  }
  for (std::uint64_t payload : {0x000345ull, 0x000001ull, 0x3FFFFFull}) {
    FloatDatum d{FloatClass::SignalingNan, +1, 0, payload};
    CHECK(decode(f, encode(f, d)) == d);
  }

  FloatDatum s{FloatClass::SignalingNan, +1, 0, 0x000345};
  FloatDatum q = quieted(f, s);
  CHECK(q.cls == FloatClass::QuietNan);
  CHECK(q.significand == (0x000345 | f.quiet_bit()));
  CHECK(quieted(f, q) == q);
}

TEST_CASE("encode rejects malformed data", "[format]") {
  FloatFormat f = fp32();
  // Significand wider than fraction_bits + 1.
  CHECK_THROWS_AS(encode(f, FloatDatum{FloatClass::Normal, +1, 0, 1u << 24}),
                  std::invalid_argument);
  // Hidden bit missing on a normal.
  CHECK_THROWS_AS(encode(f, FloatDatum{FloatClass::Normal, +1, 0, 0x400000}),
                  std::invalid_argument);
  // Subnormal significand bounds.
  CHECK_THROWS_AS(encode(f, FloatDatum{FloatClass::Subnormal, +1, -126, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      encode(f, FloatDatum{FloatClass::Subnormal, +1, -126, 1u << 23}),
      std::invalid_argument);
  // Exponent out of range.
  CHECK_THROWS_AS(encode(f, FloatDatum{FloatClass::Normal, +1, 128, 1u << 23}),
                  std::invalid_argument);
  CHECK_THROWS_AS(encode(f, FloatDatum{FloatClass::Normal, +1, -127, 1u << 23}),
                  std::invalid_argument);
  // NaN payload constraints.
  CHECK_THROWS_AS(encode(f, FloatDatum{FloatClass::SignalingNan, +1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      encode(f, FloatDatum{FloatClass::QuietNan, +1, 0, 0x000001}),
      std::invalid_argument);
  // Pattern wider than the format.
  CHECK_THROWS_AS(decode(fp16(), 0x10000), std::invalid_argument);
}
