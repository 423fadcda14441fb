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
//
// A shader arithmetic profile bundles every knob of the simulated pipeline:
// the per-stage multiply-add configurations, the storage transfer policies,
// and the internal precision of the half-float path. pipeline_eval runs a
// short program (at most the two cascaded pixel stages) against a profile,
// working on raw storage bit patterns at both ends so results are comparable
// with captures from real devices.

#ifndef FPCHAR_PROFILE_HPP_
#define FPCHAR_PROFILE_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fpchar/units.hpp"

namespace fpchar {

enum class ShaderKind { Pixel, Vertex };
enum class LoneRouting { Stage1, Stage2 };
enum class StageOp { Add, Sub, Mul, Mad };

[[nodiscard]] constexpr std::string_view to_string(StageOp op) {
  switch (op) {
    case StageOp::Add: return "add";
    case StageOp::Sub: return "sub";
    case StageOp::Mul: return "mul";
    case StageOp::Mad: return "mad";
  }
  return "?";
}

[[nodiscard]] inline StageOp stage_op_by_name(std::string_view s) {
  if (s == "add") return StageOp::Add;
  if (s == "sub") return StageOp::Sub;
  if (s == "mul") return StageOp::Mul;
  if (s == "mad") return StageOp::Mad;
  throw std::invalid_argument("unknown operation: " + std::string(s));
}

/// Full description of one simulated arithmetic pipeline.
struct ShaderProfile {
  std::string name;
  FloatFormat storage_format = fp32();
  FloatFormat register_format = fp32();
  MadConfig pixel_stage1;
  MadConfig pixel_stage2;
  MadConfig vertex_mad;
  TransferPolicy transfer;
  /// Which pixel stage executes a program consisting of a single operation.
  LoneRouting lone_add_routing = LoneRouting::Stage1;
  /// Significand width carried by half-precision operations before the one
  /// final rounding to 11 bits.
  int fp16_internal_bits = 26;
};

inline void validate(const ShaderProfile& p) {
  if (p.register_format.exponent_bits < p.storage_format.exponent_bits ||
      p.register_format.fraction_bits < p.storage_format.fraction_bits)
    throw std::invalid_argument("register format narrower than storage format");
  validate(p.pixel_stage1, p.register_format);
  validate(p.pixel_stage2, p.register_format);
  validate(p.vertex_mad, p.register_format);
  if (p.fp16_internal_bits < fp16().precision() || p.fp16_internal_bits > 32)
    throw std::invalid_argument("fp16_internal_bits out of range");
}

// --- Built-in profiles ------------------------------------------------------

/// Reference-style pipeline: sticky nearest-even adders with enough guard
/// bits for correct rounding, a full multiplier array, and every value class
/// preserved on transfer. The half path uses the narrowest window that still
/// rounds correctly (precision + 2 with a sticky bit).
[[nodiscard]] inline ShaderProfile ieee_rne_fp32_profile() {
  ShaderProfile p;
  p.name = "ieee-rne-fp32";
  AdderConfig add{3, true, RoundingMode::NearestEven};
  MultiplierConfig mul{0, 0, RoundingMode::NearestEven, true};
  p.pixel_stage1 = {mul, add, fp32().precision()};
  p.pixel_stage2 = p.pixel_stage1;
  p.vertex_mad = p.pixel_stage1;
  p.transfer = {};
  p.lone_add_routing = LoneRouting::Stage1;
  p.fp16_internal_bits = fp16().precision() + 2;
  return p;
}

/// Truncating pipeline in the style of a 2005 high-end part: two guard bits
/// on both pixel adders, a multiplier array dropping the six lowest columns
/// with a compensating bias, sign-magnitude datapath, denormals flushed on
/// transfer, and a 26-bit half-precision path.
[[nodiscard]] inline ShaderProfile nvidia7800_like_profile() {
  ShaderProfile p;
  p.name = "nvidia7800-like";
  AdderConfig add{2, false, RoundingMode::TowardZero};
  MultiplierConfig mul{6, 32, RoundingMode::TowardZero, true};
  p.pixel_stage1 = {mul, add, fp32().precision()};
  p.pixel_stage2 = p.pixel_stage1;
  p.vertex_mad = p.pixel_stage1;
  p.transfer = {DenormalPolicy::FlushToZero, NanPolicy::Preserve,
                InfinityPolicy::Preserve};
  p.lone_add_routing = LoneRouting::Stage1;
  p.fp16_internal_bits = 26;
  return p;
}

/// Truncating pipeline with asymmetric cascaded adders: one guard bit on
/// stage 1, two on stage 2, lone additions routed to stage 2, nine multiplier
/// columns dropped, denormals flushed and signaling NaNs quieted on transfer.
[[nodiscard]] inline ShaderProfile ati_rx1800_like_profile() {
  ShaderProfile p;
  p.name = "ati-rx1800-like";
  AdderConfig add1{1, false, RoundingMode::TowardZero};
  AdderConfig add2{2, false, RoundingMode::TowardZero};
  MultiplierConfig mul{9, 256, RoundingMode::TowardZero, true};
  p.pixel_stage1 = {mul, add1, fp32().precision()};
  p.pixel_stage2 = {mul, add2, fp32().precision()};
  p.vertex_mad = {mul, add2, fp32().precision()};
  p.transfer = {DenormalPolicy::FlushToZero, NanPolicy::QuietSignaling,
                InfinityPolicy::Preserve};
  p.lone_add_routing = LoneRouting::Stage2;
  p.fp16_internal_bits = 26;
  return p;
}

[[nodiscard]] inline std::vector<std::string> preset_profile_names() {
  return {"ieee-rne-fp32", "nvidia7800-like", "ati-rx1800-like"};
}

[[nodiscard]] inline ShaderProfile preset_profile(std::string_view name) {
  if (name == "ieee-rne-fp32") return ieee_rne_fp32_profile();
  if (name == "nvidia7800-like") return nvidia7800_like_profile();
  if (name == "ati-rx1800-like") return ati_rx1800_like_profile();
  throw std::invalid_argument("unknown profile preset: " + std::string(name));
}

// --- Pipeline programs ------------------------------------------------------

/// One operand of a pipeline step: either a storage bit pattern supplied with
/// the program, or the result register of the preceding step.
struct StepOperand {
  bool previous = false;
  std::uint64_t bits = 0;
};

[[nodiscard]] inline StepOperand operand_bits(std::uint64_t bits) {
  return {false, bits};
}
[[nodiscard]] inline StepOperand operand_previous() { return {true, 0}; }

struct PipelineStep {
  StageOp op = StageOp::Add;
  std::vector<StepOperand> operands;
};

namespace detail {

[[nodiscard]] inline FloatFormat storage_only_variant(const FloatFormat& fmt) {
  return {fmt.name + "-raw", fmt.exponent_bits, fmt.fraction_bits, false};
}

/// Interprets stored bits the way the arithmetic units see them. Patterns in
/// an unsupported class are plain numbers to such a unit: the exponent field
/// is ordinary, so a quiet-NaN pattern reads as a huge top-binade value.
[[nodiscard]] inline FloatDatum unit_read(const FloatFormat& fmt,
                                          std::uint64_t bits,
                                          const TransferPolicy& policy) {
  FloatDatum d = decode(fmt, bits);
  bool raw_nan = is_nan(d.cls) && policy.nan == NanPolicy::Unsupported;
  bool raw_inf =
      d.cls == FloatClass::Infinity && policy.infinity == InfinityPolicy::Unsupported;
  if (raw_nan || raw_inf) return decode(storage_only_variant(fmt), bits);
  return d;
}

/// IEEE-style special propagation for the value classes a unit interprets.
/// Returns the operation result when any operand is non-finite, nullopt when
/// all operands are finite and the arithmetic datapath decides.
[[nodiscard]] inline std::optional<FloatDatum> special_result(
    const FloatFormat& fmt, StageOp op, const std::vector<FloatDatum>& v) {
  for (const FloatDatum& d : v)
    if (is_nan(d.cls)) return quieted(fmt, d);

  auto is_inf = [](const FloatDatum& d) { return d.cls == FloatClass::Infinity; };
  switch (op) {
    case StageOp::Add:
    case StageOp::Sub: {
      // Sub is canonicalized to Add upstream; both operands carry final signs.
      if (is_inf(v[0]) && is_inf(v[1]))
        return v[0].sign == v[1].sign ? std::optional<FloatDatum>(v[0])
                                      : std::optional<FloatDatum>(make_quiet_nan(fmt));
      if (is_inf(v[0])) return v[0];
      if (is_inf(v[1])) return v[1];
      return std::nullopt;
    }
    case StageOp::Mul: {
      if (!is_inf(v[0]) && !is_inf(v[1])) return std::nullopt;
      if (v[0].cls == FloatClass::Zero || v[1].cls == FloatClass::Zero)
        return make_quiet_nan(fmt);
      return make_infinity(fmt, v[0].sign * v[1].sign);
    }
    case StageOp::Mad: {
      bool prod_inf = is_inf(v[0]) || is_inf(v[1]);
      if (prod_inf &&
          (v[0].cls == FloatClass::Zero || v[1].cls == FloatClass::Zero))
        return make_quiet_nan(fmt);
      if (prod_inf) {
        int tsign = v[0].sign * v[1].sign;
        if (is_inf(v[2]) && v[2].sign != tsign) return make_quiet_nan(fmt);
        return make_infinity(fmt, tsign);
      }
      if (is_inf(v[2])) return v[2];
      return std::nullopt;
    }
  }
  return std::nullopt;
}

[[nodiscard]] inline const MadConfig& stage_for(const ShaderProfile& p,
                                                ShaderKind kind, int step,
                                                int program_size) {
  if (kind == ShaderKind::Vertex) return p.vertex_mad;
  if (program_size == 1)
    return p.lone_add_routing == LoneRouting::Stage2 ? p.pixel_stage2
                                                     : p.pixel_stage1;
  return step == 0 ? p.pixel_stage1 : p.pixel_stage2;
}

[[nodiscard]] inline FloatDatum eval_stage(const FloatFormat& fmt, StageOp op,
                                           const std::vector<FloatDatum>& v,
                                           const MadConfig& cfg,
                                           OverflowPolicy policy) {
  switch (op) {
    case StageOp::Add:
    case StageOp::Sub:
      return sim_add(fmt, v[0], v[1], cfg.adder, policy);
    case StageOp::Mul:
      return sim_mul(fmt, v[0], v[1], cfg.multiplier, policy);
    case StageOp::Mad:
      return sim_mad(fmt, v[0], v[1], v[2], cfg, policy);
  }
  throw std::invalid_argument("unknown stage operation");
}

/// Half-precision stage body: operands re-expressed over the register
/// exponent range, the whole computation carried at `internal_bits` of
/// significand, one rounding to 11 bits at the end.
[[nodiscard]] inline FloatDatum eval_stage_half(const FloatFormat& compute,
                                                StageOp op,
                                                const std::vector<FloatDatum>& v,
                                                const MadConfig& cfg,
                                                int internal_bits,
                                                OverflowPolicy policy) {
  const AdderConfig& add = cfg.adder;
  if (op == StageOp::Add || op == StageOp::Sub)
    return sim_add_windowed(compute, v[0], v[1], internal_bits,
                            add.sticky_enabled, add.rounding, policy);

  // The half multiplier array is precision x precision; column and bias
  // parameters clamp to the narrower matrix.
  MultiplierConfig mul = cfg.multiplier;
  mul.truncation_column = std::min(mul.truncation_column, compute.precision());
  if (mul.truncation_column < 64) {
    std::uint64_t cap = (std::uint64_t{1} << mul.truncation_column) - 1;
    mul.bias_constant = std::min(mul.bias_constant, cap);
  }

  if (op == StageOp::Mul) return sim_mul(compute, v[0], v[1], mul, policy);

  FloatDatum t_zero = make_zero(v[0].sign * v[1].sign);
  Wide t{};
  if (v[0].cls != FloatClass::Zero && v[1].cls != FloatClass::Zero) {
    t = array_product(compute, v[0], v[1], mul);
    t = retain_bits(t, internal_bits, product_rounding(mul, t.sign));
  }
  if (t.mag == 0)
    return sim_add_windowed(compute, t_zero, v[2], internal_bits,
                            add.sticky_enabled, add.rounding, policy);
  if (v[2].cls == FloatClass::Zero)
    return pack(compute, t.sign, t.mag, t.scale, add.rounding, policy);
  WindowedSum s =
      windowed_sum(t, wide_value(compute, v[2]), internal_bits, add.sticky_enabled);
  if (s.mag == 0)
    return make_zero(add.rounding == RoundingMode::TowardNegative ? -1 : +1);
  return pack(compute, s.sign, s.mag, s.base, add.rounding, policy);
}

}  // namespace detail

/// Storage round trip with no arithmetic: models a plain register copy.
/// Half-precision denormals ride the half path, which keeps them.
[[nodiscard]] inline std::uint64_t pipeline_transfer(const ShaderProfile& profile,
                                                     const FloatFormat& fmt,
                                                     std::uint64_t bits) {
  TransferPolicy policy = profile.transfer;
  if (fmt.name == fp16().name) policy.denormal = DenormalPolicy::Preserve;
  return sim_transfer(fmt, bits, policy);
}

/// Evaluates a short shader program (at most the two cascaded pixel stages)
/// over storage bit patterns. Inputs pass the transfer policy on the way in;
/// each stage computes per its unit configuration at the register width;
/// subnormal stage results flush when the profile flushes denormals; the
/// final register value quantizes to the storage format on the way out.
[[nodiscard]] inline std::uint64_t pipeline_eval(
    const ShaderProfile& profile, const FloatFormat& fmt, ShaderKind kind,
    const std::vector<PipelineStep>& program) {
  validate(profile);
  if (program.empty() || program.size() > 2)
    throw std::invalid_argument("program must have one or two steps");

  const bool half = fmt.name == fp16().name &&
                    fmt.name != profile.storage_format.name;
  if (!half && fmt.name != profile.storage_format.name)
    throw std::invalid_argument("format " + fmt.name +
                                " not handled by profile " + profile.name);

  const TransferPolicy& tp = profile.transfer;
  const bool raw_specials = fmt.supports_specials &&
                            tp.nan == NanPolicy::Unsupported &&
                            tp.infinity == InfinityPolicy::Unsupported;
  // With no interpreted special class the unit sees one wide normal range.
  const FloatFormat store =
      raw_specials ? detail::storage_only_variant(fmt) : fmt;
  const OverflowPolicy overflow =
      store.supports_specials && tp.infinity == InfinityPolicy::Preserve
          ? OverflowPolicy::Infinity
          : OverflowPolicy::Saturate;
  // Registers at least as wide as storage carry intermediate results; the
  // half path instead runs over the register exponent range at half width.
  const bool wide_reg =
      !half && (profile.register_format.exponent_bits != store.exponent_bits ||
                profile.register_format.fraction_bits != store.fraction_bits);
  const FloatFormat compute =
      half ? FloatFormat{"fp16-internal", profile.register_format.exponent_bits,
                         fp16().fraction_bits, true}
      : wide_reg
          ? FloatFormat{store.name + "-reg", profile.register_format.exponent_bits,
                        profile.register_format.fraction_bits,
                        store.supports_specials}
          : store;

  FloatDatum reg{};  // previous stage's register value, register domain
  RoundingMode final_wb = RoundingMode::TowardZero;
  for (std::size_t step = 0; step < program.size(); ++step) {
    const PipelineStep& ps = program[step];
    const std::size_t arity = ps.op == StageOp::Mad ? 3 : 2;
    if (ps.operands.size() != arity)
      throw std::invalid_argument("operand count does not match operation");

    std::vector<FloatDatum> v;
    v.reserve(arity);
    for (const StepOperand& src : ps.operands) {
      if (src.previous) {
        if (step == 0)
          throw std::invalid_argument("first step cannot read a previous result");
        v.push_back(reg);
      } else {
        std::uint64_t in = pipeline_transfer(profile, fmt, src.bits);
        FloatDatum d = detail::unit_read(store, in, tp);
        if (wide_reg && is_finite(d.cls) && d.cls != FloatClass::Zero)
          d = round_exact(compute, exact_value(store, d),
                          RoundingMode::TowardZero);  // exact: compute >= store
        v.push_back(d);
      }
    }
    StageOp op = ps.op;
    if (op == StageOp::Sub) {
      v[1] = negated(v[1]);
      op = StageOp::Add;
    }

    const MadConfig& cfg = detail::stage_for(profile, kind, static_cast<int>(step),
                                             static_cast<int>(program.size()));
    RoundingMode wb = op == StageOp::Mul ? cfg.multiplier.rounding
                                         : cfg.adder.rounding;
    final_wb = wb;
    FloatDatum r;
    if (std::optional<FloatDatum> s = detail::special_result(store, op, v)) {
      r = *s;
    } else if (half) {
      std::vector<FloatDatum> wide(v.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        wide[i] = is_finite(v[i].cls) && v[i].cls != FloatClass::Zero
                      ? round_exact(compute, exact_value(store, v[i]),
                                    RoundingMode::TowardZero)
                      : v[i];
      FloatDatum c = detail::eval_stage_half(compute, op, wide, cfg,
                                             profile.fp16_internal_bits, overflow);
      // Register writeback quantizes to the storage format's range, rounding
      // the way the executing unit rounds.
      r = is_finite(c.cls) && c.cls != FloatClass::Zero
              ? round_unit(store, exact_value(compute, c), wb, overflow)
              : c;
    } else {
      r = detail::eval_stage(compute, op, v, cfg, overflow);
      if (r.cls == FloatClass::Subnormal &&
          tp.denormal == DenormalPolicy::FlushToZero)
        r = make_zero(r.sign);
    }
    reg = r;
  }
  if (wide_reg && is_finite(reg.cls) && reg.cls != FloatClass::Zero) {
    reg = round_unit(store, exact_value(compute, reg), final_wb, overflow);
    if (reg.cls == FloatClass::Subnormal &&
        tp.denormal == DenormalPolicy::FlushToZero)
      reg = make_zero(reg.sign);
  }
  return encode(store, reg);
}

// --- Profile files ----------------------------------------------------------

[[nodiscard]] constexpr std::string_view to_string(DenormalPolicy p) {
  return p == DenormalPolicy::FlushToZero ? "flush-to-zero" : "preserve";
}
[[nodiscard]] constexpr std::string_view to_string(NanPolicy p) {
  switch (p) {
    case NanPolicy::Preserve: return "preserve";
    case NanPolicy::QuietSignaling: return "quiet-signaling";
    case NanPolicy::Unsupported: return "unsupported";
  }
  return "?";
}
[[nodiscard]] constexpr std::string_view to_string(InfinityPolicy p) {
  return p == InfinityPolicy::Unsupported ? "unsupported" : "preserve";
}
[[nodiscard]] constexpr std::string_view to_string(LoneRouting r) {
  return r == LoneRouting::Stage2 ? "stage2" : "stage1";
}

namespace detail {

[[nodiscard]] inline DenormalPolicy denormal_policy_by_name(std::string_view s) {
  if (s == "preserve") return DenormalPolicy::Preserve;
  if (s == "flush-to-zero") return DenormalPolicy::FlushToZero;
  throw std::invalid_argument("unknown denormal policy: " + std::string(s));
}
[[nodiscard]] inline NanPolicy nan_policy_by_name(std::string_view s) {
  if (s == "preserve") return NanPolicy::Preserve;
  if (s == "quiet-signaling") return NanPolicy::QuietSignaling;
  if (s == "unsupported") return NanPolicy::Unsupported;
  throw std::invalid_argument("unknown nan policy: " + std::string(s));
}
[[nodiscard]] inline InfinityPolicy infinity_policy_by_name(std::string_view s) {
  if (s == "preserve") return InfinityPolicy::Preserve;
  if (s == "unsupported") return InfinityPolicy::Unsupported;
  throw std::invalid_argument("unknown infinity policy: " + std::string(s));
}
[[nodiscard]] inline LoneRouting lone_routing_by_name(std::string_view s) {
  if (s == "stage1") return LoneRouting::Stage1;
  if (s == "stage2") return LoneRouting::Stage2;
  throw std::invalid_argument("unknown routing: " + std::string(s));
}

[[nodiscard]] inline nlohmann::json stage_to_json(const MadConfig& cfg) {
  return {
      {"multiplier",
       {{"truncation_column", cfg.multiplier.truncation_column},
        {"bias_constant", cfg.multiplier.bias_constant},
        {"rounding", to_string(cfg.multiplier.rounding)},
        {"sign_magnitude", cfg.multiplier.sign_magnitude}}},
      {"adder",
       {{"guard_bits", cfg.adder.guard_bits},
        {"sticky", cfg.adder.sticky_enabled},
        {"rounding", to_string(cfg.adder.rounding)}}},
      {"product_kept_bits", cfg.product_kept_bits},
  };
}

[[nodiscard]] inline MadConfig stage_from_json(const nlohmann::json& j) {
  MadConfig cfg;
  const nlohmann::json& m = j.at("multiplier");
  cfg.multiplier.truncation_column = m.at("truncation_column").get<int>();
  cfg.multiplier.bias_constant = m.at("bias_constant").get<std::uint64_t>();
  cfg.multiplier.rounding =
      rounding_mode_by_name(m.at("rounding").get<std::string>());
  cfg.multiplier.sign_magnitude = m.at("sign_magnitude").get<bool>();
  const nlohmann::json& a = j.at("adder");
  cfg.adder.guard_bits = a.at("guard_bits").get<int>();
  cfg.adder.sticky_enabled = a.at("sticky").get<bool>();
  cfg.adder.rounding = rounding_mode_by_name(a.at("rounding").get<std::string>());
  cfg.product_kept_bits = j.at("product_kept_bits").get<int>();
  return cfg;
}

}  // namespace detail

[[nodiscard]] inline nlohmann::json profile_to_json(const ShaderProfile& p) {
  return {
      {"name", p.name},
      {"storage_format", p.storage_format.name},
      {"register_format", p.register_format.name},
      {"pixel_stage1", detail::stage_to_json(p.pixel_stage1)},
      {"pixel_stage2", detail::stage_to_json(p.pixel_stage2)},
      {"vertex_mad", detail::stage_to_json(p.vertex_mad)},
      {"transfer",
       {{"denormal", to_string(p.transfer.denormal)},
        {"nan", to_string(p.transfer.nan)},
        {"infinity", to_string(p.transfer.infinity)}}},
      {"lone_add_routing", to_string(p.lone_add_routing)},
      {"fp16_internal_bits", p.fp16_internal_bits},
  };
}

[[nodiscard]] inline ShaderProfile profile_from_json(const nlohmann::json& j) {
  ShaderProfile p;
  p.name = j.at("name").get<std::string>();
  p.storage_format = format_by_name(j.at("storage_format").get<std::string>());
  p.register_format = format_by_name(j.at("register_format").get<std::string>());
  p.pixel_stage1 = detail::stage_from_json(j.at("pixel_stage1"));
  p.pixel_stage2 = detail::stage_from_json(j.at("pixel_stage2"));
  p.vertex_mad = detail::stage_from_json(j.at("vertex_mad"));
  const nlohmann::json& t = j.at("transfer");
  p.transfer.denormal =
      detail::denormal_policy_by_name(t.at("denormal").get<std::string>());
  p.transfer.nan = detail::nan_policy_by_name(t.at("nan").get<std::string>());
  p.transfer.infinity =
      detail::infinity_policy_by_name(t.at("infinity").get<std::string>());
  p.lone_add_routing =
      detail::lone_routing_by_name(j.at("lone_add_routing").get<std::string>());
  p.fp16_internal_bits = j.at("fp16_internal_bits").get<int>();
  validate(p);
  return p;
}

[[nodiscard]] inline ShaderProfile load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  nlohmann::json j;
  in >> j;
  return profile_from_json(j);
}

inline void save_profile_file(const std::string& path, const ShaderProfile& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile file: " + path);
  out << profile_to_json(p).dump(2) << '\n';
}

}  // namespace fpchar

#endif  // FPCHAR_PROFILE_HPP_
