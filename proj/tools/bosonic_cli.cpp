// Copyright 2026 The bosonic-degeneracy Authors
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

// bosonic: analyze channel specs, build decomposition plans, run the
// verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 invalid channel, 4 construction not applicable.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bosonic.hpp"
#include "bosonic/suites.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kInvalidChannel = 3;
constexpr int kInapplicable = 4;

using bosonic::Index;

std::vector<double> parse_split(const std::string& text) {
  std::vector<double> cuts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw bosonic::InvalidArgument("--split: '" + item + "' is not a number");
    cuts.push_back(v);
  }
  return cuts;
}

// Validity failures carry the minimum eigenvalue of the validity matrix.
int invalid_channel(const bosonic::GaussianChannelSpec& spec) {
  const auto v = bosonic::validate_gaussian(spec);
  std::cerr << "error: channel is not completely positive (min eigenvalue of "
               "alpha + (i/2)(Delta_B - K^T Delta_A K) is "
            << v.min_eigenvalue << ")\n";
  return kInvalidChannel;
}

int cmd_analyze(const std::string& path, bool json) {
  const auto spec = bosonic::load_channel_spec(path);
  if (!bosonic::validate_gaussian(spec).valid) return invalid_channel(spec);
  const auto report = bosonic::analyze(spec);
  if (json)
    std::cout << bosonic::to_json(report).dump(2) << "\n";
  else
    std::cout << bosonic::render_text(report);
  return kOk;
}

int cmd_plan(const std::string& path, bool prop1, bool cq, const std::string& split,
             const std::string& basis, const std::string& out) {
  if (prop1 == cq) throw bosonic::InvalidArgument("plan: pass exactly one of --prop1 and --cq");
  const auto spec = bosonic::load_channel_spec(path);
  if (!bosonic::validate_gaussian(spec).valid) return invalid_channel(spec);
  const auto cuts = parse_split(split);
  bosonic::Json doc;
  std::ostringstream status;
  if (prop1) {
    const auto rep = bosonic::classify(spec);
    const Index d = std::max<Index>(rep.zf_isotropic_part.rank(), 1);
    const auto cyl = bosonic::CylinderDecomposition::split_first_axis(d, cuts);
    const auto p = bosonic::build_prop1_plan(spec, cyl);
    status << "direct-sum plan: " << p.region_count() << " regions, d = " << p.d
           << ", aligned: " << (p.aligned ? "yes" : "no")
           << ", grid verification: " << (p.grid_realizable() ? "available" : "unavailable") << "\n";
    doc = bosonic::to_json(p);
  } else {
    const auto z0 = bosonic::default_cq_subspace(spec);
    const auto cyl = bosonic::CylinderDecomposition::split_first_axis(std::max<Index>(z0.rank(), 1), cuts);
    const auto p = bosonic::build_cq_plan(spec, z0, cyl, bosonic::basis_choice_from_string(basis));
    status << "c-q plan: " << p.region_count() << " regions, d = " << p.d
           << ", grid verification: " << (p.grid_realizable() ? "available" : "unavailable") << "\n";
    doc = bosonic::to_json(p);
  }
  // with the plan on standard output the status goes to standard error
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
    std::cerr << status.str();
  } else {
    std::ofstream f(out);
    if (!f) throw bosonic::InvalidArgument("cannot write '" + out + "'");
    f << doc.dump(2) << "\n";
    std::cout << status.str() << "wrote " << out << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const bosonic::suites::Options& opt) {
  const auto report = bosonic::suites::run(suite, opt);
  std::cout << report.render();
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degeneracy analysis and decompositions for bosonic linear channels"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Classify a Gaussian channel spec");
  std::string analyze_path;
  bool analyze_json = false;
  analyze->add_option("file", analyze_path, "channel-spec JSON file")->required();
  analyze->add_flag("--json", analyze_json, "machine-readable output");

  auto* plan = app.add_subcommand("plan", "Build a decomposition plan");
  std::string plan_path, split, out, basis = "indicator-localized";
  bool prop1 = false, cq = false;
  plan->add_option("file", plan_path, "channel-spec JSON file")->required();
  plan->add_flag("--prop1", prop1, "direct-sum plan from the noise-free isotropic directions");
  plan->add_flag("--cq", cq, "discrete classical-quantum plan from the kernel of K");
  plan->add_option("--split", split, "cut points x1,x2,... giving (-inf,x1), [x1,x2), ..., [xk,inf)");
  plan->add_option("--basis", basis, "c-q basis: indicator-localized or windowed-Hermite");
  plan->add_option("--out", out, "write the plan here instead of standard output");

  auto* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  std::string suite;
  bosonic::suites::Options opt;
  double tol = 0.0;
  verify->add_option("--suite", suite, "symplectic, gaussian, familyA or familyB")->required();
  verify->add_option("--grid-n", opt.grid_n, "grid points (power of two >= 8)");
  verify->add_option("--grid-length", opt.grid_length, "grid box length");
  auto* tol_opt = verify->add_option("--tol", tol, "replace every tolerance bound");
  verify->add_option("--seed", opt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_path, analyze_json);
    if (*plan) return cmd_plan(plan_path, prop1, cq, split, basis, out);
    if (*tol_opt) opt.tol = tol;
    return cmd_verify(suite, opt);
  } catch (const bosonic::NoDegeneracy& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kInapplicable;
  } catch (const bosonic::PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidChannel;
  } catch (const bosonic::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
}
