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

// Acceptance harness: end-to-end checks that the toolkit characterizes the
// shipped pipelines correctly and within its time budgets. Prints one
// PASS/FAIL line per criterion and exits nonzero if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fpchar/characterize.hpp"

#include "bit_oracle.hpp"
#include "random_profiles.hpp"

namespace {

using namespace fpchar;

struct Check {
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  }
  void expect_eq(const std::string& got, const std::string& want,
                 const std::string& what) {
    if (got != want) failures.push_back(what + ": got " + got + ", want " + want);
  }
};

std::string param(const Characterization& chr, std::string_view probe,
                  const std::string& key) {
  const ProbeResult* r = chr.find(probe);
  if (!r) return "<probe missing>";
  if (!r->applicable) return "<probe not applicable>";
  auto it = r->params.find(key);
  return it == r->params.end() ? "<param missing>" : it->second;
}

Characterization characterize(const std::string& backend_name,
                              std::uint64_t seed) {
  std::unique_ptr<Backend> backend = make_backend(backend_name);
  ProbeOptions opt;
  opt.seed = seed;
  return run_all(*backend, opt);
}

// --- Criteria -------------------------------------------------------------

void nvidia_like_characteristics(Check& c) {
  Characterization chr = characterize("nvidia7800-like", 2026);
  c.expect_eq(param(chr, "transfer", "denormal"), "flush-to-zero", "denormal transfer");
  c.expect_eq(param(chr, "transfer", "nan"), "preserve", "nan transfer");
  c.expect_eq(param(chr, "transfer", "infinity"), "preserve", "infinity transfer");
  c.expect_eq(param(chr, "mul-truncation-column", "truncation_column"), "6",
              "multiplier truncation column");
  c.expect_eq(param(chr, "mul-bias", "bias_constant"), "32", "multiplier bias constant");
  c.expect(chr.find("mul-bias")->confidence != Confidence::Inconclusive,
           "bias constant read out as inconclusive");
  c.expect_eq(param(chr, "guard-bits-single", "single_sub_threshold"), "26",
              "lone-add collapse threshold");
  c.expect_eq(param(chr, "guard-bits-chained", "stage1_threshold"), "26",
              "stage-1 collapse threshold");
  c.expect_eq(param(chr, "guard-bits-chained", "stage2_threshold"), "26",
              "stage-2 collapse threshold");
  c.expect_eq(param(chr, "mul-sign", "sign_magnitude"), "true",
              "multiplier sign handling");
  c.expect_eq(param(chr, "fp16-internal", "internal_width"), "26",
              "half-precision internal width");
  c.expect_eq(param(chr, "mad-extended", "extended_product"), "false",
              "multiply-add product retention");
  c.expect_eq(param(chr, "exponent-gap", "property_holds"), "false",
              "large-gap absorption property");
}

void ati_like_characteristics(Check& c) {
  Characterization chr = characterize("ati-rx1800-like", 2026);
  c.expect_eq(param(chr, "transfer", "denormal"), "flush-to-zero", "denormal transfer");
  c.expect_eq(param(chr, "transfer", "nan"), "quiet-signaling", "nan transfer");
  c.expect_eq(param(chr, "mul-truncation-column", "truncation_column"), "9",
              "multiplier truncation column");
  c.expect_eq(param(chr, "mul-bias", "bias_constant"), "256", "multiplier bias constant");
  c.expect_eq(param(chr, "guard-bits-single", "single_sub_threshold"), "26",
              "lone-add collapse threshold");
  c.expect_eq(param(chr, "guard-bits-chained", "lone_routing"), "stage2",
              "lone-add routing");
  c.expect_eq(param(chr, "guard-bits-chained", "stage1_guard_bits"), "1",
              "stage-1 guard bits");
  c.expect_eq(param(chr, "guard-bits-chained", "stage1_threshold"), "25",
              "stage-1 collapse threshold");
  c.expect_eq(param(chr, "guard-bits-chained", "stage2_threshold"), "26",
              "stage-2 collapse threshold");
  c.expect_eq(param(chr, "fp16-internal", "internal_width"), "26",
              "half-precision internal width");
}

void reference_unit_characteristics(Check& c) {
  Characterization chr = characterize("ieee", 2026);
  c.expect_eq(param(chr, "mantissa-width", "mantissa_width"), "24",
              "stored significand width");
  c.expect_eq(param(chr, "mul-truncation-column", "truncation_column"), "0",
              "multiplier truncation column");
  c.expect_eq(param(chr, "mul-bias", "bias_constant"), "0", "multiplier bias constant");
  c.expect(chr.find("mul-bias")->confidence == Confidence::Exact,
           "zero bias not pinned exactly");
  c.expect_eq(param(chr, "exponent-range", "extended_exponent"), "false",
              "intermediate exponent range");
  c.expect_eq(param(chr, "exponent-gap", "property_holds"), "true",
              "large-gap absorption property");
  c.expect_eq(param(chr, "mad-extended", "extended_product"), "true",
              "multiply-add product retention");
  c.expect_eq(param(chr, "mad-extended", "remainders_lost"), "0",
              "multiply-add remainder loss");
  c.expect_eq(param(chr, "transfer", "denormal"), "preserve", "denormal transfer");
}

void random_profiles_recovered(Check& c) {
  test::Rng rng(0x5eed2026u);
  for (int i = 0; i < 100; ++i) {
    ShaderProfile truth = test::sample_profile(rng, i);
    SimulatedBackend backend(truth);
    ProbeOptions opt;
    opt.seed = 0xA11CE000u + static_cast<std::uint64_t>(i);
    opt.sign_trials = 6000;
    opt.mad_trials = 400;
    ProfileFit fit = fit_profile(run_all(backend, opt));
    if (!test::same_configuration(truth, fit.profile)) {
      nlohmann::json diff = nlohmann::json::diff(profile_to_json(truth),
                                                 profile_to_json(fit.profile));
      std::string paths;
      for (const nlohmann::json& op : diff) {
        std::string path = op.at("path").get<std::string>();
        if (path == "/name") continue;
        paths += ' ' + path;
      }
      c.expect(false, "profile " + std::to_string(i) + " misread at:" + paths);
    }
    c.expect(fit.replay_mismatches == 0,
             "profile " + std::to_string(i) + " fit fails replay on " +
                 std::to_string(fit.replay_mismatches) + " rows");
  }
}

void tiny_format_exhaustive(Check& c) {
  const FloatFormat tiny{"tiny", 4, 3, true};
  std::vector<FloatDatum> values;
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    FloatDatum d = decode(tiny, bits);
    if (is_finite(d.cls)) values.push_back(d);
  }
  c.expect(values.size() == 240, "finite value count is " +
                                     std::to_string(values.size()) + ", want 240");

  const AdderConfig add_cfg{5, true, RoundingMode::NearestEven};
  const MultiplierConfig rne{0, 0, RoundingMode::NearestEven, true};
  const MultiplierConfig chop{0, 0, RoundingMode::TowardZero, true};
  const MultiplierConfig killed{2, 2, RoundingMode::TowardZero, true};
  long mismatches = 0;
  for (const FloatDatum& a : values) {
    for (const FloatDatum& b : values) {
      if (sim_add(tiny, a, b, add_cfg) !=
          oracle_add(tiny, a, b, RoundingMode::NearestEven))
        ++mismatches;
      if (sim_mul(tiny, a, b, rne) !=
          oracle_mul(tiny, a, b, RoundingMode::NearestEven))
        ++mismatches;
      if (sim_mul(tiny, a, b, chop, OverflowPolicy::Saturate) !=
          oracle_mul(tiny, a, b, RoundingMode::TowardZero,
                     OverflowPolicy::Saturate))
        ++mismatches;
      if (sim_mul(tiny, a, b, killed) !=
          testing::matrix_oracle_mul(tiny, a, b, killed))
        ++mismatches;
    }
  }
  c.expect(mismatches == 0, std::to_string(mismatches) +
                                " unit results disagree with the oracle");
}

void fp16_round_trip(Check& c) {
  const FloatFormat half = fp16();
  long mismatches = 0;
  for (std::uint64_t bits = 0; bits <= 0xFFFF; ++bits)
    if (encode(half, decode(half, bits)) != bits) ++mismatches;
  c.expect(mismatches == 0,
           std::to_string(mismatches) + " encodings fail the round trip");
}

void full_sweep_pins_bias(Check& c) {
  ShaderProfile p = nvidia7800_like_profile();
  p.name = "preserve-k9";
  p.transfer.denormal = DenormalPolicy::Preserve;
  for (MadConfig* stage : {&p.pixel_stage1, &p.pixel_stage2, &p.vertex_mad}) {
    stage->multiplier.truncation_column = 9;
    stage->multiplier.bias_constant = 137;
  }
  validate(p);

  SimulatedBackend backend(p);
  ProbeOptions opt;
  opt.seed = 7;
  opt.full_sweep = true;
  Characterization chr = run_probes(backend, opt, {"mul-bias"});
  c.expect_eq(param(chr, "mul-bias", "bias_constant"), "137", "bias constant");
  c.expect(chr.find("mul-bias")->confidence == Confidence::Exact,
           "bias constant not pinned exactly");
  long swept = std::stol(param(chr, "mul-bias", "sweep_products"));
  c.expect(swept > 4'000'000,
           "sweep covered only " + std::to_string(swept) + " products");
}

void sign_identity_holds(Check& c) {
  for (const char* name :
       {"ieee-rne-fp32", "nvidia7800-like", "ati-rx1800-like"}) {
    std::unique_ptr<Backend> backend = make_backend(name);
    ProbeOptions opt;
    opt.seed = 0x516e;
    opt.sign_trials = 1'000'000;
    Characterization chr = run_probes(*backend, opt, {"mul-sign"});
    std::string prefix = std::string(name) + ": ";
    c.expect_eq(param(chr, "mul-sign", "trials"), "1000000", prefix + "trial count");
    c.expect_eq(param(chr, "mul-sign", "violations"), "0", prefix + "violations");
    c.expect_eq(param(chr, "mul-sign", "sign_magnitude"), "true",
                prefix + "sign handling");
  }
}

void gap_witness_replays(Check& c) {
  std::unique_ptr<Backend> backend = make_backend("nvidia7800-like");
  ProbeOptions opt;
  opt.seed = 1234;
  Characterization first = run_probes(*backend, opt, {"exponent-gap"});
  Characterization second = run_probes(*backend, opt, {"exponent-gap"});

  const ProbeResult* a = first.find("exponent-gap");
  const ProbeResult* b = second.find("exponent-gap");
  c.expect(a && b, "probe did not run");
  if (!a || !b) return;
  c.expect(a->params == b->params && a->notes == b->notes,
           "repeated runs disagree on the verdict");
  bool same_rows = a->observations.size() == b->observations.size();
  for (std::size_t i = 0; same_rows && i < a->observations.size(); ++i) {
    const RawObservation &x = a->observations[i], &y = b->observations[i];
    same_rows = x.op == y.op && x.inputs == y.inputs && x.output == y.output &&
                x.tag == y.tag;
  }
  c.expect(same_rows, "repeated runs record different interactions");

  c.expect_eq(param(first, "exponent-gap", "property_holds"), "false",
              "large-gap absorption property");
  c.expect(!a->notes.empty(), "no witness recorded");

  // Every recorded row must agree with the windowed-adder reference model
  // for this pipeline: 24 significand bits plus 2 guard bits, no sticky.
  const FloatFormat fmt = fp32();
  long disagreements = 0;
  for (const RawObservation& o : a->observations) {
    FloatDatum x = decode(fmt, o.inputs.at(0));
    FloatDatum y = decode(fmt, o.inputs.at(1));
    FloatDatum want = testing::window_oracle_add(fmt, x, y, 26, false,
                                                 RoundingMode::TowardZero);
    if (encode(fmt, want) != o.output) ++disagreements;
  }
  c.expect(disagreements == 0, std::to_string(disagreements) +
                                   " witnesses disagree with the reference model");
}

// --- Harness ---------------------------------------------------------------

struct Criterion {
  const char* what;
  double limit_seconds;  // 0 = untimed
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"nvidia7800-like preset reads back its documented arithmetic", 10,
       nvidia_like_characteristics},
      {"ati-rx1800-like preset reads back its documented arithmetic", 10,
       ati_like_characteristics},
      {"reference unit reads as full-width correctly rounded arithmetic", 10,
       reference_unit_characteristics},
      {"100 randomly drawn pipelines are recovered field for field", 300,
       random_profiles_recovered},
      {"simulated units match the exact oracle exhaustively on an 8-bit format",
       60, tiny_format_exhaustive},
      {"every fp16 encoding survives a decode/encode round trip", 5,
       fp16_round_trip},
      {"full multiplier sweep pins a preserved pipeline's bias constant", 60,
       full_sweep_pins_bias},
      {"one million sign-identity trials per preset show no violations", 30,
       sign_identity_holds},
      {"exponent-gap witnesses replay deterministically and match the oracle",
       0, gap_witness_replays},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& cr = criteria[i];
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("threw: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (cr.limit_seconds > 0 && seconds > cr.limit_seconds)
      check.expect(false, "took " + std::to_string(seconds) + "s, budget " +
                              std::to_string(cr.limit_seconds) + "s");

    bool pass = check.failures.empty();
    failed += pass ? 0 : 1;
    std::printf("%s  %zu. %s  [%.2fs%s]\n", pass ? "PASS" : "FAIL", i + 1,
                cr.what, seconds,
                cr.limit_seconds > 0
                    ? (", limit " + std::to_string(static_cast<int>(cr.limit_seconds)) + "s").c_str()
                    : "");
    for (const std::string& f : check.failures)
      std::printf("        - %s\n", f.c_str());
  }

  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
