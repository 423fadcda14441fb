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

// fpchar: characterize the floating-point arithmetic of a backend.
//
//   fpchar run --backend nvidia7800-like -o report.json
//   fpchar run --backend ieee --probes mul-bias,mul-sign --seed 42
//   fpchar compare a.json b.json
//   fpchar list

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fpchar/backend.hpp"
#include "fpchar/characterize.hpp"
#include "fpchar/report.hpp"

namespace {

void print_session(const fpchar::ReportDocument& doc, std::ostream& out) {
  const fpchar::Characterization& s = doc.session;
  out << "backend " << s.backend_name << " ("
      << fpchar::to_string(s.backend_kind) << "), format " << s.format
      << ", seed " << s.seed << '\n';
  for (const fpchar::ProbeResult& r : s.results) {
    out << "  " << r.name;
    for (std::size_t i = r.name.size(); i < 24; ++i) out << ' ';
    if (!r.applicable) {
      out << "not applicable\n";
      continue;
    }
    out << fpchar::to_string(r.confidence);
    for (const auto& [key, value] : r.params)
      out << "  " << key << '=' << value;
    out << '\n';
  }
  if (doc.fit) {
    out << "fit: replay " << doc.fit->replay_checked << " checked, "
        << doc.fit->replay_mismatches << " mismatches, "
        << doc.fit->replay_skipped << " skipped\n";
    for (const std::string& n : doc.fit->notes) out << "  note: " << n << '\n';
  }
}

int do_run(const std::string& backend_name, const std::string& format_name,
           std::uint64_t seed, long trials, bool full_sweep, bool no_fit,
           const std::vector<std::string>& probes, const std::string& output) {
  std::unique_ptr<fpchar::Backend> backend = fpchar::make_backend(backend_name);

  fpchar::ProbeOptions opt;
  opt.format = backend->format(format_name);
  opt.seed = seed;
  opt.full_sweep = full_sweep;
  if (trials > 0) {
    opt.sign_trials = trials;
    opt.mad_trials = std::max(100L, trials / 20);
  }

  const std::vector<std::string>& names =
      probes.empty() ? fpchar::probe_names() : probes;
  fpchar::Characterization session = fpchar::run_probes(*backend, opt, names);

  std::optional<fpchar::ProfileFit> fit;
  if (!no_fit) {
    try {
      fit = fpchar::fit_profile(session);
    } catch (const std::exception& e) {
      std::cerr << "warning: no unit configuration fits this session: "
                << e.what() << '\n';
    }
  }

  fpchar::ReportDocument doc = fpchar::make_report(std::move(session), std::move(fit));
  if (output.empty()) {
    std::cout << fpchar::report_to_json(doc).dump(2) << '\n';
  } else {
    fpchar::save_report(output, doc);
    print_session(doc, std::cout);
    std::cout << "wrote " << output << '\n';
  }
  return 0;
}

int do_compare(const std::string& path_a, const std::string& path_b) {
  fpchar::ReportDocument a = fpchar::load_report(path_a);
  fpchar::ReportDocument b = fpchar::load_report(path_b);
  if (fpchar::reports_equal(a, b)) {
    std::cout << "reports are equivalent (generation timestamps ignored)\n";
    return 0;
  }
  nlohmann::json ja = fpchar::report_to_json(a), jb = fpchar::report_to_json(b);
  ja.erase("generated");
  jb.erase("generated");
  nlohmann::json patch = nlohmann::json::diff(ja, jb);
  std::cout << "reports differ in " << patch.size() << " place"
            << (patch.size() == 1 ? "" : "s") << ":\n";
  std::size_t shown = 0;
  for (const nlohmann::json& op : patch) {
    if (shown++ == 8) {
      std::cout << "  ...\n";
      break;
    }
    std::cout << "  " << op.at("op").get<std::string>() << " "
              << op.at("path").get<std::string>() << '\n';
  }
  return 2;
}

int do_list() {
  std::cout << "backends:\n";
  for (const std::string& n : fpchar::backend_choice_names())
    std::cout << "  " << n << '\n';
  std::cout << "probes:\n";
  for (const std::string& n : fpchar::probe_names())
    std::cout << "  " << n << '\n';
  std::cout << "formats:\n";
  for (const char* n : {"fp16", "fp24", "fp32", "fp64"})
    std::cout << "  " << n << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"floating-point arithmetic characterization toolkit"};
  app.require_subcommand(1);

  std::string backend_name;
  std::string format_name = "fp32";
  std::uint64_t seed = 0;
  if (const char* env = std::getenv("FPCHAR_SEED"))
    seed = std::strtoull(env, nullptr, 0);
  long trials = 0;
  bool full_sweep = false;
  bool no_fit = false;
  std::vector<std::string> probes;
  std::string output;

  CLI::App* run = app.add_subcommand("run", "characterize a backend and emit a report");
  run->add_option("--backend", backend_name, "backend to probe (see `fpchar list`)")
      ->required();
  run->add_option("--format", format_name, "storage format to probe")
      ->capture_default_str();
  run->add_option("--seed", seed, "seed for randomized probes (default: $FPCHAR_SEED or 0)");
  run->add_option("--trials", trials, "randomized trial count override");
  run->add_flag("--full-sweep", full_sweep,
                "sweep every odd multiplier when measuring rounding bias");
  run->add_flag("--no-fit", no_fit, "skip fitting a unit configuration");
  run->add_option("--probes", probes, "comma-separated probe names (default: all)")
      ->delimiter(',');
  run->add_option("-o,--output", output, "write the report here instead of stdout");

  std::string path_a, path_b;
  CLI::App* cmp = app.add_subcommand("compare", "compare two reports, ignoring timestamps");
  cmp->add_option("first", path_a, "report file")->required();
  cmp->add_option("second", path_b, "report file")->required();

  CLI::App* list = app.add_subcommand("list", "list backends, probes, and formats");

  int rc = 0;
  run->callback([&] {
    rc = do_run(backend_name, format_name, seed, trials, full_sweep, no_fit,
                probes, output);
  });
  cmp->callback([&] { rc = do_compare(path_a, path_b); });
  list->callback([&] { rc = do_list(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
