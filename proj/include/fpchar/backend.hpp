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
// The black-box arithmetic interface the characterization probes target.
// A backend exposes single operations, a two-step dependent chain, and a
// storage round trip, all over raw bit patterns, so a probe cannot tell a
// simulated pipeline from a reference unit except through the returned bits.

#ifndef FPCHAR_BACKEND_HPP_
#define FPCHAR_BACKEND_HPP_

#include <cmath>
#include <cstdint>
#include <bit>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpchar/profile.hpp"

namespace fpchar {

/// Thrown when an entry point is invoked that the backend does not offer
/// (an unsupported format or operation), as opposed to a malformed request.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BackendKind { Simulated, ReferenceIeee, HostNative };

[[nodiscard]] constexpr std::string_view to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Simulated: return "simulated";
    case BackendKind::ReferenceIeee: return "reference-ieee";
    case BackendKind::HostNative: return "host-native";
  }
  return "?";
}

struct BackendCapabilities {
  bool has_two_stage_pipeline = false;
  bool has_mad = false;
  bool has_fp16 = false;
};

struct BackendDescriptor {
  std::string name;
  BackendKind kind = BackendKind::Simulated;
  std::vector<FloatFormat> formats;
  BackendCapabilities capabilities;
};

/// One step of a dependent two-operation chain. The first step names all of
/// its operands in `inputs`; the second step receives the first step's result
/// as its leading operand and takes the remaining operands from `inputs`.
struct ChainStep {
  StageOp op = StageOp::Add;
  std::vector<std::uint64_t> inputs;
};

class Backend {
 public:
  virtual ~Backend() = default;

  [[nodiscard]] virtual const BackendDescriptor& descriptor() const = 0;

  [[nodiscard]] virtual std::uint64_t add(const FloatFormat& fmt, std::uint64_t a,
                                          std::uint64_t b) const = 0;
  [[nodiscard]] virtual std::uint64_t sub(const FloatFormat& fmt, std::uint64_t a,
                                          std::uint64_t b) const = 0;
  [[nodiscard]] virtual std::uint64_t mul(const FloatFormat& fmt, std::uint64_t a,
                                          std::uint64_t b) const = 0;
  [[nodiscard]] virtual std::uint64_t mad(const FloatFormat& fmt, std::uint64_t x,
                                          std::uint64_t y, std::uint64_t z) const = 0;
  [[nodiscard]] virtual std::uint64_t chain2(const FloatFormat& fmt,
                                             const ChainStep& first,
                                             const ChainStep& second) const = 0;
  [[nodiscard]] virtual std::uint64_t roundtrip(const FloatFormat& fmt,
                                                std::uint64_t bits) const = 0;

  /// Resolves a format this backend offers, by name.
  [[nodiscard]] FloatFormat format(std::string_view name) const {
    for (const FloatFormat& f : descriptor().formats)
      if (f.name == name) return f;
    throw CapabilityError(descriptor().name + " does not offer format " +
                          std::string(name));
  }

  [[nodiscard]] bool offers(std::string_view name) const {
    for (const FloatFormat& f : descriptor().formats)
      if (f.name == name) return true;
    return false;
  }

 protected:
  void require_format(const FloatFormat& fmt) const {
    if (!offers(fmt.name))
      throw CapabilityError(descriptor().name + " does not offer format " +
                            fmt.name);
  }
};

namespace detail {

[[nodiscard]] inline std::size_t chain_arity(StageOp op) {
  return op == StageOp::Mad ? 3 : 2;
}

inline void check_chain(const ChainStep& first, const ChainStep& second) {
  if (first.inputs.size() != chain_arity(first.op))
    throw std::invalid_argument("first chain step operand count mismatch");
  if (second.inputs.size() + 1 != chain_arity(second.op))
    throw std::invalid_argument("second chain step operand count mismatch");
}

}  // namespace detail

// --- Simulated pipeline -----------------------------------------------------

/// Thin adapter: every call is one pipeline program over the configured
/// profile, so backend outputs match direct unit evaluation bit for bit.
class SimulatedBackend final : public Backend {
 public:
  explicit SimulatedBackend(ShaderProfile profile) : profile_(std::move(profile)) {
    validate(profile_);
    desc_.name = profile_.name;
    desc_.kind = BackendKind::Simulated;
    desc_.formats.push_back(fp16());
    if (profile_.storage_format.name != fp16().name)
      desc_.formats.push_back(profile_.storage_format);
    desc_.capabilities = {true, true, true};
  }

  [[nodiscard]] const BackendDescriptor& descriptor() const override {
    return desc_;
  }
  [[nodiscard]] const ShaderProfile& profile() const { return profile_; }

  [[nodiscard]] std::uint64_t add(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    return lone(fmt, StageOp::Add, {a, b});
  }
  [[nodiscard]] std::uint64_t sub(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    return lone(fmt, StageOp::Sub, {a, b});
  }
  [[nodiscard]] std::uint64_t mul(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    return lone(fmt, StageOp::Mul, {a, b});
  }
  [[nodiscard]] std::uint64_t mad(const FloatFormat& fmt, std::uint64_t x,
                                  std::uint64_t y, std::uint64_t z) const override {
    return lone(fmt, StageOp::Mad, {x, y, z});
  }

  [[nodiscard]] std::uint64_t chain2(const FloatFormat& fmt, const ChainStep& first,
                                     const ChainStep& second) const override {
    require_format(fmt);
    detail::check_chain(first, second);
    std::vector<PipelineStep> program(2);
    program[0].op = first.op;
    for (std::uint64_t in : first.inputs)
      program[0].operands.push_back(operand_bits(in));
    program[1].op = second.op;
    program[1].operands.push_back(operand_previous());
    for (std::uint64_t in : second.inputs)
      program[1].operands.push_back(operand_bits(in));
    return pipeline_eval(profile_, fmt, ShaderKind::Pixel, program);
  }

  [[nodiscard]] std::uint64_t roundtrip(const FloatFormat& fmt,
                                        std::uint64_t bits) const override {
    require_format(fmt);
    return pipeline_transfer(profile_, fmt, bits);
  }

 private:
  [[nodiscard]] std::uint64_t lone(const FloatFormat& fmt, StageOp op,
                                   std::vector<std::uint64_t> in) const {
    require_format(fmt);
    PipelineStep step;
    step.op = op;
    for (std::uint64_t v : in) step.operands.push_back(operand_bits(v));
    return pipeline_eval(profile_, fmt, ShaderKind::Pixel, {step});
  }

  ShaderProfile profile_;
  BackendDescriptor desc_;
};

// --- Reference IEEE unit ----------------------------------------------------

/// Correctly rounded nearest-even arithmetic from the exact oracle, with a
/// fused multiply-add and value-preserving transfers. This is the behavior
/// yardstick, not a model of any device.
class ReferenceIeeeBackend final : public Backend {
 public:
  ReferenceIeeeBackend() {
    desc_.name = "ieee";
    desc_.kind = BackendKind::ReferenceIeee;
    desc_.formats = {fp16(), fp24(), fp32(), fp64()};
    desc_.capabilities = {false, true, true};
  }

  [[nodiscard]] const BackendDescriptor& descriptor() const override {
    return desc_;
  }

  [[nodiscard]] std::uint64_t add(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    require_format(fmt);
    return eval(fmt, StageOp::Add, {decode(fmt, a), decode(fmt, b)});
  }
  [[nodiscard]] std::uint64_t sub(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    require_format(fmt);
    return eval(fmt, StageOp::Add, {decode(fmt, a), negated(decode(fmt, b))});
  }
  [[nodiscard]] std::uint64_t mul(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    require_format(fmt);
    return eval(fmt, StageOp::Mul, {decode(fmt, a), decode(fmt, b)});
  }
  [[nodiscard]] std::uint64_t mad(const FloatFormat& fmt, std::uint64_t x,
                                  std::uint64_t y, std::uint64_t z) const override {
    require_format(fmt);
    return eval(fmt, StageOp::Mad,
                {decode(fmt, x), decode(fmt, y), decode(fmt, z)});
  }

  [[nodiscard]] std::uint64_t chain2(const FloatFormat& fmt, const ChainStep& first,
                                     const ChainStep& second) const override {
    require_format(fmt);
    detail::check_chain(first, second);
    std::vector<FloatDatum> v1;
    for (std::uint64_t in : first.inputs) v1.push_back(decode(fmt, in));
    std::uint64_t mid = eval(fmt, first.op, v1);
    std::vector<FloatDatum> v2{decode(fmt, mid)};
    for (std::uint64_t in : second.inputs) v2.push_back(decode(fmt, in));
    return eval(fmt, second.op, v2);
  }

  [[nodiscard]] std::uint64_t roundtrip(const FloatFormat& fmt,
                                        std::uint64_t bits) const override {
    require_format(fmt);
    return bits;
  }

 private:
  [[nodiscard]] std::uint64_t eval(const FloatFormat& fmt, StageOp op,
                                   std::vector<FloatDatum> v) const {
    StageOp effective = op;
    if (op == StageOp::Sub) {
      v[1] = negated(v[1]);
      effective = StageOp::Add;
    }
    if (std::optional<FloatDatum> s = detail::special_result(fmt, effective, v))
      return encode(fmt, *s);
    const RoundingMode rm = RoundingMode::NearestEven;
    switch (effective) {
      case StageOp::Add:
        return encode(fmt, oracle_add(fmt, v[0], v[1], rm));
      case StageOp::Mul:
        return encode(fmt, oracle_mul(fmt, v[0], v[1], rm));
      case StageOp::Mad: {
        // Fused: one rounding of the exact x*y + z.
        ExactNumber t = exact_mul(exact_value(fmt, v[0]), exact_value(fmt, v[1]));
        ExactNumber s = exact_add(t, exact_value(fmt, v[2]));
        if (s.is_zero()) {
          // Exact zero sum takes the product's sign when both terms vanish,
          // else positive, matching addition under nearest rounding.
          int sign = t.is_zero() && exact_value(fmt, v[2]).is_zero()
                         ? (v[0].sign * v[1].sign < 0 && v[2].sign < 0 ? -1 : +1)
                         : +1;
          return encode(fmt, make_zero(sign));
        }
        return encode(fmt, round_exact(fmt, s, rm));
      }
      default:
        throw std::invalid_argument("unknown backend operation");
    }
  }

  BackendDescriptor desc_;
};

// --- Host native unit -------------------------------------------------------

/// The machine's own float/double arithmetic, exposed for cross-checking the
/// reference implementation. Only constructible when the host reports IEEE
/// semantics; characterization results never depend on it.
class HostNativeBackend final : public Backend {
 public:
  [[nodiscard]] static bool available() {
    return std::numeric_limits<float>::is_iec559 &&
           std::numeric_limits<double>::is_iec559;
  }

  HostNativeBackend() {
    if (!available())
      throw CapabilityError("host arithmetic is not IEEE binary32/binary64");
    desc_.name = "host";
    desc_.kind = BackendKind::HostNative;
    desc_.formats = {fp32(), fp64()};
    desc_.capabilities = {false, true, false};
  }

  [[nodiscard]] const BackendDescriptor& descriptor() const override {
    return desc_;
  }

  [[nodiscard]] std::uint64_t add(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    return binary(fmt, a, b, [](auto x, auto y) { return x + y; });
  }
  [[nodiscard]] std::uint64_t sub(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    return binary(fmt, a, b, [](auto x, auto y) { return x - y; });
  }
  [[nodiscard]] std::uint64_t mul(const FloatFormat& fmt, std::uint64_t a,
                                  std::uint64_t b) const override {
    return binary(fmt, a, b, [](auto x, auto y) { return x * y; });
  }
  [[nodiscard]] std::uint64_t mad(const FloatFormat& fmt, std::uint64_t x,
                                  std::uint64_t y, std::uint64_t z) const override {
    require_format(fmt);
    if (fmt.name == "fp64") {
      double r = std::fma(from_bits64(x), from_bits64(y), from_bits64(z));
      return to_bits64(r);
    }
    float r = std::fma(from_bits32(x), from_bits32(y), from_bits32(z));
    return to_bits32(r);
  }

  [[nodiscard]] std::uint64_t chain2(const FloatFormat& fmt, const ChainStep& first,
                                     const ChainStep& second) const override {
    require_format(fmt);
    detail::check_chain(first, second);
    std::uint64_t mid = run_step(fmt, first.op, first.inputs);
    std::vector<std::uint64_t> in{mid};
    in.insert(in.end(), second.inputs.begin(), second.inputs.end());
    return run_step(fmt, second.op, in);
  }

  [[nodiscard]] std::uint64_t roundtrip(const FloatFormat& fmt,
                                        std::uint64_t bits) const override {
    require_format(fmt);
    return bits;
  }

 private:
  static float from_bits32(std::uint64_t b) {
    return std::bit_cast<float>(static_cast<std::uint32_t>(b));
  }
  static std::uint64_t to_bits32(float v) {
    return std::bit_cast<std::uint32_t>(v);
  }
  static double from_bits64(std::uint64_t b) { return std::bit_cast<double>(b); }
  static std::uint64_t to_bits64(double v) {
    return std::bit_cast<std::uint64_t>(v);
  }

  template <typename F>
  [[nodiscard]] std::uint64_t binary(const FloatFormat& fmt, std::uint64_t a,
                                     std::uint64_t b, F op) const {
    require_format(fmt);
    if (fmt.name == "fp64") return to_bits64(op(from_bits64(a), from_bits64(b)));
    return to_bits32(op(from_bits32(a), from_bits32(b)));
  }

  [[nodiscard]] std::uint64_t run_step(const FloatFormat& fmt, StageOp op,
                                       const std::vector<std::uint64_t>& in) const {
    switch (op) {
      case StageOp::Add: return add(fmt, in[0], in[1]);
      case StageOp::Sub: return sub(fmt, in[0], in[1]);
      case StageOp::Mul: return mul(fmt, in[0], in[1]);
      case StageOp::Mad: return mad(fmt, in[0], in[1], in[2]);
    }
    throw std::invalid_argument("unknown backend operation");
  }

  BackendDescriptor desc_;
};

// --- Selection --------------------------------------------------------------

[[nodiscard]] inline std::vector<std::string> backend_choice_names() {
  std::vector<std::string> names{"ieee"};
  for (const std::string& p : preset_profile_names()) names.push_back(p);
  names.push_back("host");
  names.push_back("file:<profile.json>");
  return names;
}

/// Resolves a CLI backend name: "ieee" is the reference unit, preset names
/// are simulated pipelines, "host" is native arithmetic, and "file:<path>"
/// simulates a profile loaded from disk.
[[nodiscard]] inline std::unique_ptr<Backend> make_backend(std::string_view name) {
  if (name == "ieee") return std::make_unique<ReferenceIeeeBackend>();
  if (name == "host") return std::make_unique<HostNativeBackend>();
  if (name.rfind("file:", 0) == 0) {
    std::string path(name.substr(5));
    return std::make_unique<SimulatedBackend>(load_profile_file(path));
  }
  for (const std::string& p : preset_profile_names())
    if (name == p)
      return std::make_unique<SimulatedBackend>(preset_profile(name));
  throw std::invalid_argument(
      "unknown backend '" + std::string(name) +
      "' (choices: ieee, nvidia7800-like, ati-rx1800-like, host, file:<profile.json>)");
}

}  // namespace fpchar

#endif  // FPCHAR_BACKEND_HPP_
