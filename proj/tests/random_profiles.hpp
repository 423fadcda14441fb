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
#include <string>

#include "fpchar/profile.hpp"
#include "test_util.hpp"

namespace fpchar::test {

/// Draws a pipeline from the identifiable configuration space: every field
/// sampled here is recoverable from black-box probing alone. The families
/// left out are unobservable through normal operands:
///  - flushed pipelines with truncation column 1: dropping only column 0 of
///    a full-significand product never changes the stored bits, so such a
///    unit is indistinguishable from an untruncated one;
///  - non-canonical bias constants on flushed pipelines: the constant is
///    confined to the killed columns there, so only its equivalence class
///    is visible, represented by the mean-centering value 2^(k-1);
///  - two's-complement truncation on flushed pipelines: flooring the signed
///    value perturbs it by less than the stored quantum, so the column and
///    constant have no deterministic read;
///  - truncation column 0 paired with the two's-complement flag: with no
///    columns dropped the representation never acts, so the flag reads as
///    sign-magnitude;
///  - nearest-rounding adders and multipliers: rounding direction is
///    recoverable, but guard-bit counts behind a nearest rounder are not.
inline ShaderProfile sample_profile(Rng& rng, int index) {
  ShaderProfile p;
  p.name = "random-" + std::to_string(index);
  p.storage_format = fp32();
  p.register_format = fp32();

  const bool flush = rng() & 1;
  p.transfer.denormal =
      flush ? DenormalPolicy::FlushToZero : DenormalPolicy::Preserve;
  p.transfer.nan =
      (rng() & 1) ? NanPolicy::Preserve : NanPolicy::QuietSignaling;
  p.transfer.infinity = InfinityPolicy::Preserve;

  MultiplierConfig mul;
  for (;;) {
    int k = static_cast<int>(rng() % 13);
    if (flush && k == 1) continue;
    mul.truncation_column = k;
    break;
  }
  const int k = mul.truncation_column;
  if (k == 0)
    mul.bias_constant = 0;
  else if (flush)
    mul.bias_constant = std::uint64_t{1} << (k - 1);
  else
    mul.bias_constant = rng() % (std::uint64_t{1} << k);
  mul.rounding = RoundingMode::TowardZero;
  mul.sign_magnitude = flush || k == 0 || (rng() & 1);

  const int kept =
      (rng() & 1) ? fp32().precision() : 2 * fp32().precision();
  AdderConfig adder1{static_cast<int>(rng() % 5), false,
                     RoundingMode::TowardZero};
  AdderConfig adder2{static_cast<int>(rng() % 5), false,
                     RoundingMode::TowardZero};
  p.pixel_stage1 = {mul, adder1, kept};
  p.pixel_stage2 = {mul, adder2, kept};
  p.vertex_mad = p.pixel_stage1;
  p.lone_add_routing = LoneRouting::Stage1;
  p.fp16_internal_bits = 11 + static_cast<int>(rng() % 22);

  validate(p);
  return p;
}

/// Field equality modulo the profile's display name.
inline bool same_configuration(const ShaderProfile& a, const ShaderProfile& b) {
  return a.storage_format.name == b.storage_format.name &&
         a.register_format.name == b.register_format.name &&
         a.pixel_stage1 == b.pixel_stage1 && a.pixel_stage2 == b.pixel_stage2 &&
         a.vertex_mad == b.vertex_mad && a.transfer == b.transfer &&
         a.lone_add_routing == b.lone_add_routing &&
         a.fp16_internal_bits == b.fp16_internal_bits;
}

}  // namespace fpchar::test
