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

#include "fpchar/backend.hpp"

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

namespace {

using namespace fpchar;
using namespace fpchar::test;

std::uint64_t random_finite(Rng& rng, const FloatFormat& fmt) {
  for (;;) {
    std::uint64_t bits = rand_bits(rng, fmt.total_bits());
    if (is_finite(decode(fmt, bits).cls)) return bits;
  }
}

ChainStep step(StageOp op, std::vector<std::uint64_t> inputs) {
  return ChainStep{op, std::move(inputs)};
}

TEST_CASE("backend descriptors expose kind, formats, and capabilities",
          "[backend]") {
  auto ieee = make_backend("ieee");
  CHECK(ieee->descriptor().name == "ieee");
  CHECK(ieee->descriptor().kind == BackendKind::ReferenceIeee);
  CHECK(ieee->descriptor().formats.size() == 4);
  CHECK_FALSE(ieee->descriptor().capabilities.has_two_stage_pipeline);
  CHECK(ieee->descriptor().capabilities.has_mad);
  CHECK(ieee->descriptor().capabilities.has_fp16);
  CHECK(ieee->offers("fp24"));
  CHECK(ieee->format("fp64").fraction_bits == 52);

  auto nv = make_backend("nvidia7800-like");
  CHECK(nv->descriptor().kind == BackendKind::Simulated);
  CHECK(nv->descriptor().capabilities.has_two_stage_pipeline);
  CHECK(nv->offers("fp32"));
  CHECK(nv->offers("fp16"));
  CHECK_FALSE(nv->offers("fp64"));

  auto ati = make_backend("ati-rx1800-like");
  CHECK(ati->descriptor().name == "ati-rx1800-like");

  auto sim_ieee = make_backend("ieee-rne-fp32");
  CHECK(sim_ieee->descriptor().kind == BackendKind::Simulated);

  CHECK(to_string(BackendKind::Simulated) == "simulated");
  CHECK(to_string(BackendKind::ReferenceIeee) == "reference-ieee");
  CHECK(to_string(BackendKind::HostNative) == "host-native");

  CHECK(backend_choice_names().size() >= 5);
  CHECK_THROWS_AS(make_backend("voodoo2"), std::invalid_argument);
}

TEST_CASE("simulated backends are thin adapters over the pipeline",
          "[backend]") {
  Rng rng(0xada57e5u);
  const FloatFormat f32 = fp32();
  for (const char* name : {"nvidia7800-like", "ati-rx1800-like", "ieee-rne-fp32"}) {
    ShaderProfile profile = preset_profile(name);
    SimulatedBackend backend(profile);
    for (const FloatFormat& fmt : {f32, fp16()}) {
      for (int trial = 0; trial < 400; ++trial) {
        std::uint64_t a = random_finite(rng, fmt);
        std::uint64_t b = random_finite(rng, fmt);
        std::uint64_t c = random_finite(rng, fmt);
        CAPTURE(name, fmt.name, a, b, c);

        auto lone = [&](StageOp op, std::vector<std::uint64_t> in) {
          PipelineStep s;
          s.op = op;
          for (std::uint64_t v : in) s.operands.push_back(operand_bits(v));
          return pipeline_eval(profile, fmt, ShaderKind::Pixel, {s});
        };
        CHECK(backend.add(fmt, a, b) == lone(StageOp::Add, {a, b}));
        CHECK(backend.sub(fmt, a, b) == lone(StageOp::Sub, {a, b}));
        CHECK(backend.mul(fmt, a, b) == lone(StageOp::Mul, {a, b}));
        CHECK(backend.mad(fmt, a, b, c) == lone(StageOp::Mad, {a, b, c}));
        CHECK(backend.roundtrip(fmt, a) == pipeline_transfer(profile, fmt, a));

        PipelineStep s1, s2;
        s1.op = StageOp::Mul;
        s1.operands = {operand_bits(a), operand_bits(b)};
        s2.op = StageOp::Add;
        s2.operands = {operand_previous(), operand_bits(c)};
        std::uint64_t direct = pipeline_eval(profile, fmt, ShaderKind::Pixel, {s1, s2});
        CHECK(backend.chain2(fmt, step(StageOp::Mul, {a, b}),
                             step(StageOp::Add, {c})) == direct);
      }
    }
  }
}

TEST_CASE("reference unit rounds correctly and fuses mad", "[backend]") {
  ReferenceIeeeBackend ref;
  const FloatFormat f32 = fp32();

  SECTION("frozen binary32 results") {
    const std::uint64_t one_half_3 = 0x3FC00000;  // 1.5
    // 1.5 - 2^-25: the tail below the last significand bit rounds back up.
    CHECK(ref.add(f32, one_half_3, encode(f32, pow2(f32, -25, -1))) == one_half_3);
    CHECK(ref.sub(f32, one_half_3, encode(f32, pow2(f32, -25))) == one_half_3);
    // 1.5 - 2^-23 is exact.
    CHECK(ref.sub(f32, one_half_3, encode(f32, pow2(f32, -23))) == 0x3FBFFFFF);

    // Fused mad keeps the bit a separate multiply would round away:
    // (1+2^-23)^2 - (1+2^-22) = 2^-46.
    std::uint64_t x = 0x3F800001;
    std::uint64_t z = 0xBF800002;
    CHECK(ref.mad(f32, x, x, z) == encode(f32, pow2(f32, -46)));
    SimulatedBackend two_step(preset_profile("ieee-rne-fp32"));
    CHECK(two_step.mad(f32, x, x, z) == 0);  // product rounded first
  }

  SECTION("add and mul agree with the exact oracle") {
    Rng rng(0x5eedbacu);
    for (const FloatFormat& fmt : {fp16(), fp24(), f32, fp64()}) {
      for (int trial = 0; trial < 1500; ++trial) {
        std::uint64_t a = random_finite(rng, fmt);
        std::uint64_t b = random_finite(rng, fmt);
        CAPTURE(fmt.name, a, b);
        FloatDatum da = decode(fmt, a), db = decode(fmt, b);
        OverflowPolicy policy = fmt.supports_specials ? OverflowPolicy::Infinity
                                                      : OverflowPolicy::Saturate;
        CHECK(ref.add(fmt, a, b) ==
              encode(fmt, oracle_add(fmt, da, db, RoundingMode::NearestEven, policy)));
        CHECK(ref.mul(fmt, a, b) ==
              encode(fmt, oracle_mul(fmt, da, db, RoundingMode::NearestEven, policy)));
      }
    }
  }

  SECTION("mad result is the once-rounded exact product plus addend") {
    Rng rng(0xfadedu);
    for (int trial = 0; trial < 2000; ++trial) {
      FloatDatum x = random_normal(rng, f32, -60, 60);
      FloatDatum y = random_normal(rng, f32, -60, 60);
      FloatDatum r = round_exact(f32, exact_mul(exact_value(f32, x),
                                                exact_value(f32, y)),
                                 RoundingMode::NearestEven);
      if (!is_finite(r.cls)) continue;
      CAPTURE(encode(f32, x), encode(f32, y));
      ExactNumber rem = product_remainder(f32, x, y);
      std::uint64_t got = ref.mad(f32, encode(f32, x), encode(f32, y),
                                  encode(f32, negated(r)));
      std::uint64_t want = rem.is_zero()
                               ? 0
                               : encode(f32, round_exact(f32, rem,
                                                         RoundingMode::NearestEven));
      CHECK(got == want);
    }
  }

  SECTION("interpreted specials propagate") {
    std::uint64_t inf = 0x7F800000, ninf = 0xFF800000, qnan = 0x7FC00000;
    CHECK(ref.add(f32, inf, ninf) == qnan);
    CHECK(ref.sub(f32, inf, inf) == qnan);
    CHECK(ref.mul(f32, inf, 0) == qnan);
    CHECK(ref.mul(f32, ninf, 0xC0000000) == inf);
    CHECK(ref.mad(f32, inf, 0x3F800000, ninf) == qnan);
    CHECK(ref.add(f32, 0x7F800001, 0x3F800000) == 0x7FC00001);  // quiets sNaN
    CHECK(ref.roundtrip(f32, 0x7F800001) == 0x7F800001);
    CHECK(ref.roundtrip(f32, 0x00000001) == 0x00000001);
  }

  SECTION("formats without specials saturate") {
    const FloatFormat f24 = fp24();
    std::uint64_t big = encode(f24, max_finite(f24));
    CHECK(ref.add(f24, big, big) == big);
    CHECK(ref.mul(f24, big, big) == big);
  }

  SECTION("chain2 is two dependent correctly rounded operations") {
    // (1.5 - 2^-24) rounds up to 1.5, so the chained difference vanishes.
    std::uint64_t tiny = encode(f32, pow2(f32, -24));
    CHECK(ref.chain2(f32, step(StageOp::Sub, {0x3FC00000, tiny}),
                     step(StageOp::Sub, {0x3FC00000})) == 0);
    // An exact first step leaves the residual visible.
    std::uint64_t t23 = encode(f32, pow2(f32, -23));
    CHECK(ref.chain2(f32, step(StageOp::Sub, {0x3FC00000, t23}),
                     step(StageOp::Sub, {0x3FC00000})) ==
          encode(f32, pow2(f32, -23, -1)));
  }
}

TEST_CASE("reference and simulated ieee pipelines agree on single operations",
          "[backend]") {
  ReferenceIeeeBackend ref;
  SimulatedBackend sim(preset_profile("ieee-rne-fp32"));
  Rng rng(0x1ee7c0deu);
  const FloatFormat f32 = fp32();
  for (int trial = 0; trial < 4000; ++trial) {
    std::uint64_t a = random_finite(rng, f32);
    std::uint64_t b = random_finite(rng, f32);
    CAPTURE(a, b);
    CHECK(ref.add(f32, a, b) == sim.add(f32, a, b));
    CHECK(ref.sub(f32, a, b) == sim.sub(f32, a, b));
    CHECK(ref.mul(f32, a, b) == sim.mul(f32, a, b));
  }
}

TEST_CASE("host unit matches the reference when the host is ieee",
          "[backend]") {
  if (!HostNativeBackend::available()) {
    SUCCEED("host arithmetic is not ieee; nothing to cross-check");
    return;
  }
  HostNativeBackend host;
  ReferenceIeeeBackend ref;
  CHECK(host.descriptor().kind == BackendKind::HostNative);
  CHECK(host.offers("fp32"));
  CHECK(host.offers("fp64"));
  CHECK_FALSE(host.offers("fp16"));

  const FloatFormat f32 = fp32();
  Rng rng(0x05713377u);
  long mismatches = 0;
  for (int trial = 0; trial < 1000000; ++trial) {
    std::uint64_t a = random_finite(rng, f32);
    std::uint64_t b = random_finite(rng, f32);
    std::uint64_t ha = host.add(f32, a, b), ra = ref.add(f32, a, b);
    std::uint64_t hm = host.mul(f32, a, b), rm = ref.mul(f32, a, b);
    if (ha != ra || hm != rm) {
      ++mismatches;
      CAPTURE(a, b, ha, ra, hm, rm);
      REQUIRE(ha == ra);
      REQUIRE(hm == rm);
    }
  }
  CHECK(mismatches == 0);

  const FloatFormat f64 = fp64();
  for (int trial = 0; trial < 20000; ++trial) {
    std::uint64_t a = random_finite(rng, f64);
    std::uint64_t b = random_finite(rng, f64);
    CAPTURE(a, b);
    REQUIRE(host.add(f64, a, b) == ref.add(f64, a, b));
    REQUIRE(host.mul(f64, a, b) == ref.mul(f64, a, b));
    REQUIRE(host.sub(f64, a, b) == ref.sub(f64, a, b));
  }

  for (int trial = 0; trial < 20000; ++trial) {
    std::uint64_t x = random_finite(rng, f32);
    std::uint64_t y = random_finite(rng, f32);
    std::uint64_t z = random_finite(rng, f32);
    CAPTURE(x, y, z);
    REQUIRE(host.mad(f32, x, y, z) == ref.mad(f32, x, y, z));
  }
}

TEST_CASE("power-of-two multiplies are exact on every backend", "[backend]") {
  Rng rng(0x2b1d5eedu);
  std::vector<std::unique_ptr<Backend>> backends;
  backends.push_back(make_backend("ieee"));
  backends.push_back(make_backend("ieee-rne-fp32"));
  backends.push_back(make_backend("nvidia7800-like"));
  backends.push_back(make_backend("ati-rx1800-like"));
  const FloatFormat f32 = fp32();
  const std::uint64_t one = 0x3F800000, two = 0x40000000, half = 0x3F000000;
  for (const auto& backend : backends) {
    for (int trial = 0; trial < 600; ++trial) {
      FloatDatum x = random_normal(rng, f32, -100, 100);
      std::uint64_t bits = encode(f32, x);
      CAPTURE(backend->descriptor().name, bits);
      CHECK(backend->mul(f32, bits, one) == bits);
      FloatDatum doubled = x, halved = x;
      doubled.exponent += 1;
      halved.exponent -= 1;
      CHECK(backend->mul(f32, bits, two) == encode(f32, doubled));
      CHECK(backend->mul(f32, bits, half) == encode(f32, halved));
    }
  }
}

TEST_CASE("simulated pipelines surface transfer and staging", "[backend]") {
  SimulatedBackend nv(preset_profile("nvidia7800-like"));
  SimulatedBackend ati(preset_profile("ati-rx1800-like"));
  SimulatedBackend sim_ieee(preset_profile("ieee-rne-fp32"));
  const FloatFormat f32 = fp32();

  // Denormal storage flushes on transfer for the flush presets only.
  CHECK(nv.roundtrip(f32, 0x00000001) == 0);
  CHECK(ati.roundtrip(f32, 0x007FFFFF) == 0);
  CHECK(sim_ieee.roundtrip(f32, 0x00000001) == 0x00000001);
  // Half-precision denormals ride through untouched.
  CHECK(nv.roundtrip(fp16(), 0x0001) == 0x0001);

  // Chained subtraction exposes the narrow first-stage window: at 2^-25 the
  // one-guard-bit stage drops the operand outright while the two-guard-bit
  // stage still carries a chopped residue into stage two.
  std::uint64_t three_half = 0x3FC00000;
  std::uint64_t t24 = encode(f32, pow2(f32, -24));
  std::uint64_t t25 = encode(f32, pow2(f32, -25));
  std::uint64_t neg_ulp = encode(f32, pow2(f32, -23, -1));
  CHECK(ati.chain2(f32, step(StageOp::Sub, {three_half, t24}),
                   step(StageOp::Sub, {three_half})) == neg_ulp);
  CHECK(ati.chain2(f32, step(StageOp::Sub, {three_half, t25}),
                   step(StageOp::Sub, {three_half})) == 0);
  CHECK(nv.chain2(f32, step(StageOp::Sub, {three_half, t25}),
                  step(StageOp::Sub, {three_half})) == neg_ulp);
}

TEST_CASE("capability gates reject what a backend does not offer",
          "[backend]") {
  SimulatedBackend nv(preset_profile("nvidia7800-like"));
  ReferenceIeeeBackend ref;
  const FloatFormat f64 = fp64();

  CHECK_THROWS_AS(nv.format("fp64"), CapabilityError);
  CHECK_THROWS_AS(nv.add(f64, 0, 0), CapabilityError);
  CHECK_THROWS_AS(nv.roundtrip(f64, 0), CapabilityError);
  CHECK_NOTHROW(ref.format("fp24"));
  if (HostNativeBackend::available()) {
    HostNativeBackend host;
    CHECK_THROWS_AS(host.format("fp16"), CapabilityError);
    CHECK_THROWS_AS(host.mul(fp16(), 0x3C00, 0x3C00), CapabilityError);
  }

  // Malformed chains are rejected as bad requests, not missing capabilities.
  const FloatFormat f32 = fp32();
  CHECK_THROWS_AS(nv.chain2(f32, step(StageOp::Add, {1}), step(StageOp::Add, {2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(nv.chain2(f32, step(StageOp::Add, {1, 2}),
                            step(StageOp::Mad, {3})),
                  std::invalid_argument);
  CHECK_NOTHROW(nv.chain2(f32, step(StageOp::Mad, {0x3F800000, 0x3F800000, 0}),
                          step(StageOp::Mad, {0x3F800000, 0})));
}

TEST_CASE("file-selected backends load persisted profiles", "[backend]") {
  const std::string path = "test-backend-profile.json";
  save_profile_file(path, preset_profile("nvidia7800-like"));
  auto loaded = make_backend("file:" + path);
  auto preset = make_backend("nvidia7800-like");
  CHECK(loaded->descriptor().name == "nvidia7800-like");
  CHECK(loaded->descriptor().kind == BackendKind::Simulated);

  Rng rng(0xf11ebacu);
  const FloatFormat f32 = fp32();
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t a = random_finite(rng, f32);
    std::uint64_t b = random_finite(rng, f32);
    CAPTURE(a, b);
    CHECK(loaded->add(f32, a, b) == preset->add(f32, a, b));
    CHECK(loaded->mad(f32, a, b, a) == preset->mad(f32, a, b, a));
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(make_backend("file:no-such-profile.json"), std::runtime_error);
}

TEST_CASE("backends are deterministic across repeated calls", "[backend]") {
  Rng rng(0xdead5eedu);
  const FloatFormat f32 = fp32();
  for (const char* name : {"ieee", "nvidia7800-like", "ati-rx1800-like"}) {
    auto backend = make_backend(name);
    for (int trial = 0; trial < 50; ++trial) {
      std::uint64_t a = random_finite(rng, f32);
      std::uint64_t b = random_finite(rng, f32);
      std::uint64_t first = backend->mad(f32, a, b, a);
      CHECK(backend->mad(f32, a, b, a) == first);
      CHECK(backend->mad(f32, a, b, a) == first);
    }
  }
}

}  // namespace
