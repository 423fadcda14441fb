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

// Report documents: the on-disk form of a characterization session. The
// encoding is canonical so that equal sessions produce byte-identical files:
// object keys are sorted, bit patterns are fixed-width hex strings, and the
// only free field is the generation timestamp, which comparisons ignore.

#ifndef FPCHAR_REPORT_HPP_
#define FPCHAR_REPORT_HPP_

#include <cstdint>
#include <ctime>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fpchar/characterize.hpp"

namespace fpchar {

inline constexpr int kReportSchemaVersion = 1;

struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  std::string generated;  // ISO 8601 UTC; informational, ignored by compare
  Characterization session;
  std::optional<ProfileFit> fit;
};

[[nodiscard]] inline Confidence confidence_by_name(std::string_view s) {
  if (s == "exact") return Confidence::Exact;
  if (s == "inferred") return Confidence::Inferred;
  if (s == "inconclusive") return Confidence::Inconclusive;
  throw std::invalid_argument("unknown confidence: " + std::string(s));
}

namespace detail {

[[nodiscard]] inline std::string hex_bits(const FloatFormat& fmt,
                                          std::uint64_t bits) {
  int nibbles = (fmt.total_bits() + 3) / 4;
  std::string out(static_cast<std::size_t>(nibbles) + 2, '0');
  out[0] = '0';
  out[1] = 'x';
  for (int i = 0; i < nibbles; ++i) {
    int shift = 4 * (nibbles - 1 - i);
    out[static_cast<std::size_t>(i) + 2] = "0123456789abcdef"[(bits >> shift) & 0xF];
  }
  return out;
}

[[nodiscard]] inline std::uint64_t bits_from_hex(const std::string& s) {
  if (s.size() < 3 || s[0] != '0' || s[1] != 'x')
    throw std::invalid_argument("bit pattern must look like 0x3f800000: " + s);
  return std::stoull(s.substr(2), nullptr, 16);
}

[[nodiscard]] inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

[[nodiscard]] inline ReportDocument make_report(
    Characterization session, std::optional<ProfileFit> fit = std::nullopt) {
  ReportDocument doc;
  doc.generated = detail::utc_timestamp();
  doc.session = std::move(session);
  doc.fit = std::move(fit);
  return doc;
}

[[nodiscard]] inline nlohmann::json report_to_json(const ReportDocument& doc) {
  nlohmann::json probes = nlohmann::json::array();
  for (const ProbeResult& r : doc.session.results) {
    nlohmann::json obs = nlohmann::json::array();
    for (const RawObservation& o : r.observations) {
      const FloatFormat fmt = format_by_name(o.format);
      nlohmann::json inputs = nlohmann::json::array();
      for (std::uint64_t v : o.inputs) inputs.push_back(detail::hex_bits(fmt, v));
      obs.push_back({{"op", o.op},
                     {"format", o.format},
                     {"inputs", inputs},
                     {"output", detail::hex_bits(fmt, o.output)},
                     {"tag", o.tag}});
    }
    probes.push_back({{"name", r.name},
                      {"applicable", r.applicable},
                      {"confidence", to_string(r.confidence)},
                      {"params", r.params},
                      {"notes", r.notes},
                      {"observations", obs}});
  }

  nlohmann::json j{
      {"schema_version", doc.schema_version},
      {"tool", "fpchar"},
      {"generated", doc.generated},
      {"backend",
       {{"name", doc.session.backend_name},
        {"kind", to_string(doc.session.backend_kind)}}},
      {"format", doc.session.format},
      {"seed", doc.session.seed},
      {"options",
       {{"sign_trials", doc.session.options.sign_trials},
        {"mad_trials", doc.session.options.mad_trials},
        {"bias_sweep", doc.session.options.bias_sweep},
        {"full_sweep", doc.session.options.full_sweep}}},
      {"probes", probes},
  };
  if (doc.fit) {
    j["fit"] = {{"profile", profile_to_json(doc.fit->profile)},
                {"replay",
                 {{"checked", doc.fit->replay_checked},
                  {"mismatches", doc.fit->replay_mismatches},
                  {"skipped", doc.fit->replay_skipped}}},
                {"notes", doc.fit->notes}};
  }
  return j;
}

[[nodiscard]] inline BackendKind backend_kind_by_name(std::string_view s) {
  if (s == "simulated") return BackendKind::Simulated;
  if (s == "reference-ieee") return BackendKind::ReferenceIeee;
  if (s == "host-native") return BackendKind::HostNative;
  throw std::invalid_argument("unknown backend kind: " + std::string(s));
}

[[nodiscard]] inline ReportDocument report_from_json(const nlohmann::json& j) {
  ReportDocument doc;
  doc.schema_version = j.at("schema_version").get<int>();
  if (doc.schema_version != kReportSchemaVersion)
    throw std::runtime_error("unsupported report schema version " +
                             std::to_string(doc.schema_version));
  doc.generated = j.at("generated").get<std::string>();
  doc.session.backend_name = j.at("backend").at("name").get<std::string>();
  doc.session.backend_kind =
      backend_kind_by_name(j.at("backend").at("kind").get<std::string>());
  doc.session.format = j.at("format").get<std::string>();
  doc.session.seed = j.at("seed").get<std::uint64_t>();
  const nlohmann::json& opt = j.at("options");
  doc.session.options.format = format_by_name(doc.session.format);
  doc.session.options.seed = doc.session.seed;
  doc.session.options.sign_trials = opt.at("sign_trials").get<long>();
  doc.session.options.mad_trials = opt.at("mad_trials").get<long>();
  doc.session.options.bias_sweep = opt.at("bias_sweep").get<long>();
  doc.session.options.full_sweep = opt.at("full_sweep").get<bool>();

  for (const nlohmann::json& pr : j.at("probes")) {
    ProbeResult r(pr.at("name").get<std::string>());
    r.applicable = pr.at("applicable").get<bool>();
    r.confidence = confidence_by_name(pr.at("confidence").get<std::string>());
    r.params = pr.at("params").get<std::map<std::string, std::string>>();
    r.notes = pr.at("notes").get<std::vector<std::string>>();
    for (const nlohmann::json& ob : pr.at("observations")) {
      RawObservation o;
      o.op = ob.at("op").get<std::string>();
      o.format = ob.at("format").get<std::string>();
      for (const nlohmann::json& in : ob.at("inputs"))
        o.inputs.push_back(detail::bits_from_hex(in.get<std::string>()));
      o.output = detail::bits_from_hex(ob.at("output").get<std::string>());
      o.tag = ob.at("tag").get<std::string>();
      r.observations.push_back(std::move(o));
    }
    doc.session.results.push_back(std::move(r));
  }

  if (j.contains("fit")) {
    const nlohmann::json& f = j.at("fit");
    ProfileFit fit;
    fit.profile = profile_from_json(f.at("profile"));
    fit.replay_checked = f.at("replay").at("checked").get<long>();
    fit.replay_mismatches = f.at("replay").at("mismatches").get<long>();
    fit.replay_skipped = f.at("replay").at("skipped").get<long>();
    fit.notes = f.at("notes").get<std::vector<std::string>>();
    doc.fit = std::move(fit);
  }
  return doc;
}

/// Reports describe the same session when everything but the generation
/// timestamp agrees.
[[nodiscard]] inline bool reports_equal(const ReportDocument& a,
                                        const ReportDocument& b) {
  nlohmann::json ja = report_to_json(a), jb = report_to_json(b);
  ja.erase("generated");
  jb.erase("generated");
  return ja == jb;
}

inline void save_report(const std::string& path, const ReportDocument& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << report_to_json(doc).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing report file: " + path);
}

[[nodiscard]] inline ReportDocument load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report file: " + path);
  nlohmann::json j;
  in >> j;
  return report_from_json(j);
}

}  // namespace fpchar

#endif  // FPCHAR_REPORT_HPP_
