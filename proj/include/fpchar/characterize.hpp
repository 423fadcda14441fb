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

// Characterization sessions: running the probe registry against a backend,
// collecting the per-probe verdicts, and condensing them back into the unit
// configuration that explains every recorded interaction.

#ifndef FPCHAR_CHARACTERIZE_HPP_
#define FPCHAR_CHARACTERIZE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpchar/backend.hpp"
#include "fpchar/probes.hpp"

namespace fpchar {

/// Complete record of one characterization session. Everything needed to
/// reproduce or audit the session is inside: the backend identity, the
/// primary format, the master seed, and each probe's observations.
struct Characterization {
  std::string backend_name;
  BackendKind backend_kind = BackendKind::Simulated;
  std::string format;
  std::uint64_t seed = 0;
  ProbeOptions options;
  std::vector<ProbeResult> results;

  [[nodiscard]] const ProbeResult* find(std::string_view probe) const {
    for (const ProbeResult& r : results)
      if (r.name == probe) return &r;
    return nullptr;
  }
};

namespace detail {

[[nodiscard]] inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace detail

/// Runs the named probes in registry order. Each probe draws from its own
/// seed stream (master seed mixed with the probe name), so results do not
/// depend on which other probes were selected. A probe whose capability the
/// backend lacks is reported as not applicable rather than aborting the
/// session, and a probe that throws is reported as inconclusive.
[[nodiscard]] inline Characterization run_probes(
    const Backend& backend, const ProbeOptions& base,
    const std::vector<std::string>& names) {
  Characterization session;
  session.backend_name = backend.descriptor().name;
  session.backend_kind = backend.descriptor().kind;
  session.format = base.format.name;
  session.seed = base.seed;
  session.options = base;

  for (const ProbeInfo& info : probe_registry()) {
    bool requested = false;
    for (const std::string& n : names)
      if (n == info.name) requested = true;
    if (!requested) continue;

    if (!info.applicable(backend.descriptor())) {
      ProbeResult r(info.name);
      r.applicable = false;
      r.notes.push_back("backend does not expose the required capability");
      session.results.push_back(std::move(r));
      continue;
    }
    ProbeOptions opt = base;
    opt.seed = base.seed ^ detail::fnv1a(info.name);
    try {
      session.results.push_back(info.run(backend, opt));
    } catch (const CapabilityError& e) {
      ProbeResult r(info.name);
      r.applicable = false;
      r.notes.push_back(e.what());
      session.results.push_back(std::move(r));
    } catch (const std::exception& e) {
      ProbeResult r(info.name);
      r.notes.push_back(std::string("probe aborted: ") + e.what());
      session.results.push_back(std::move(r));
    }
  }

  for (const std::string& n : names) {
    bool known = false;
    for (const ProbeInfo& info : probe_registry())
      if (info.name == n) known = true;
    if (!known) throw std::invalid_argument("unknown probe '" + n + "'");
  }
  return session;
}

[[nodiscard]] inline Characterization run_all(const Backend& backend,
                                              const ProbeOptions& base) {
  return run_probes(backend, base, probe_names());
}

/// A unit configuration fitted to a characterization, plus the replay audit:
/// every recorded interaction in a format the fitted pipeline carries is
/// re-executed against it and compared bit for bit.
struct ProfileFit {
  ShaderProfile profile;
  long replay_checked = 0;
  long replay_mismatches = 0;
  long replay_skipped = 0;
  std::vector<std::string> notes;
};

namespace detail {

[[nodiscard]] inline std::optional<std::string> fit_param(
    const Characterization& chr, std::string_view probe,
    const std::string& key) {
  const ProbeResult* r = chr.find(probe);
  if (!r || !r->applicable) return std::nullopt;
  auto it = r->params.find(key);
  if (it == r->params.end()) return std::nullopt;
  return it->second;
}

}  // namespace detail

/// Condenses probe verdicts into the pipeline they describe. Parameters the
/// session could not measure fall back to neutral defaults and are listed in
/// the notes. The returned profile is validated and then audited by replay.
[[nodiscard]] inline ProfileFit fit_profile(const Characterization& chr) {
  const FloatFormat fmt = format_by_name(chr.format);
  ProfileFit fit;
  ShaderProfile& p = fit.profile;
  p.name = chr.backend_name + "-fit";
  p.storage_format = fmt;
  p.register_format = fmt;

  auto note_default = [&](const std::string& what) {
    fit.notes.push_back(what + " not measured; default assumed");
  };

  // Transfer behavior.
  if (auto v = detail::fit_param(chr, "transfer", "denormal"))
    p.transfer.denormal = *v == "flush-to-zero" ? DenormalPolicy::FlushToZero
                                                : DenormalPolicy::Preserve;
  else
    note_default("denormal transfer");
  if (auto v = detail::fit_param(chr, "transfer", "nan"))
    p.transfer.nan = *v == "quiet-signaling" ? NanPolicy::QuietSignaling
                     : *v == "unsupported"   ? NanPolicy::Unsupported
                                             : NanPolicy::Preserve;
  else
    note_default("nan transfer");
  if (auto v = detail::fit_param(chr, "transfer", "infinity"))
    p.transfer.infinity = *v == "unsupported" ? InfinityPolicy::Unsupported
                                              : InfinityPolicy::Preserve;
  else
    note_default("infinity transfer");

  // Lone-multiply datapath.
  MultiplierConfig mul;
  if (auto v = detail::fit_param(chr, "mul-truncation-column",
                                 "truncation_column"))
    mul.truncation_column = std::stoi(*v);
  else
    note_default("multiplier truncation column");
  if (auto v = detail::fit_param(chr, "mul-truncation-column", "model"))
    mul.rounding = v->find("+nearest") != std::string::npos
                       ? RoundingMode::NearestEven
                       : RoundingMode::TowardZero;
  if (auto v = detail::fit_param(chr, "mul-bias", "bias_constant"))
    mul.bias_constant = std::stoull(*v);
  else
    note_default("multiplier bias constant");
  if (auto v = detail::fit_param(chr, "mul-sign", "sign_magnitude"))
    mul.sign_magnitude = *v == "true";
  else
    note_default("multiplier sign handling");

  // Adders. A stage that exposes a guard-bit count truncates at the end of
  // its window; a stage without one rounds to nearest, which a wide sticky
  // window reproduces exactly.
  auto fit_adder = [&](const char* probe,
                       const std::string& guard_key) -> AdderConfig {
    if (auto v = detail::fit_param(chr, probe, guard_key))
      return {std::stoi(*v), false, RoundingMode::TowardZero};
    return {3, true, RoundingMode::NearestEven};
  };
  AdderConfig adder1, adder2;
  bool chained = chr.find("guard-bits-chained") != nullptr &&
                 chr.find("guard-bits-chained")->applicable;
  if (chained) {
    adder1 = fit_adder("guard-bits-chained", "stage1_guard_bits");
    adder2 = fit_adder("guard-bits-chained", "stage2_guard_bits");
  } else {
    adder1 = fit_adder("guard-bits-single", "lone_guard_bits");
    adder2 = adder1;
  }

  int kept = fmt.precision();
  if (auto v = detail::fit_param(chr, "mad-extended", "extended_product"))
    kept = *v == "true" ? 2 * fmt.precision() : fmt.precision();
  else
    note_default("multiply-add product retention");

  p.pixel_stage1 = {mul, adder1, kept};
  p.pixel_stage2 = {mul, adder2, kept};
  // The vertex unit is not reachable through the backend entry points, which
  // drive the pixel pipeline; its configuration is assumed to match stage 1.
  p.vertex_mad = p.pixel_stage1;

  if (auto v = detail::fit_param(chr, "guard-bits-chained", "lone_routing"))
    p.lone_add_routing =
        *v == "stage2" ? LoneRouting::Stage2 : LoneRouting::Stage1;

  // The half-precision internal width is only readable when the half path
  // truncates. Behind a nearest-rounding half adder every sufficiently wide
  // sticky window computes identical results, so the narrowest correctly
  // rounding width stands in for the class.
  if (auto v = detail::fit_param(chr, "fp16-internal", "internal_width")) {
    p.fp16_internal_bits = std::stoi(*v);
  } else {
    p.fp16_internal_bits = fp16().precision() + 2;
    fit.notes.push_back(
        "half internal width not readable; narrowest correctly rounding "
        "window assumed");
  }

  validate(p);

  // Replay audit: the fitted pipeline must reproduce the session bit for
  // bit. Observations in formats it does not carry are counted as skipped.
  SimulatedBackend sim(p);
  for (const ProbeResult& r : chr.results) {
    for (const RawObservation& o : r.observations) {
      if (!sim.offers(o.format)) {
        ++fit.replay_skipped;
        continue;
      }
      ++fit.replay_checked;
      if (replay_observation(sim, o) != o.output) ++fit.replay_mismatches;
    }
  }
  if (fit.replay_mismatches > 0)
    fit.notes.push_back(
        std::to_string(fit.replay_mismatches) + " of " +
        std::to_string(fit.replay_checked) +
        " replayed interactions differ from the fitted pipeline");
  return fit;
}

}  // namespace fpchar

#endif  // FPCHAR_CHARACTERIZE_HPP_
