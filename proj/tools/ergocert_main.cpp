// Copyright 2026 The ergocert Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// ergocert command-line tool. Every subcommand except `gen` builds a pipeline
// config and runs it; --print-config shows that config instead of running it.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ergocert/ergocert.hpp"

namespace {

using ergocert::Json;

struct Common {
  std::string scenario;
  std::vector<std::string> params;
  long long seed = -1;
  std::string inputs;
  std::string measure;
  std::string aux_mu;
  double aux_alpha = 1.0;
  std::string report;
  std::string csv_dir;
  bool no_timing = false;
  bool print_config = false;
};

// key=value; the value is read as JSON when it parses, else as a string.
Json ParseAssignments(const std::vector<std::string>& items) {
  Json out = Json::object();
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ergocert::Error("expected key=value, got \"" + item + "\"");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    Json parsed = Json::parse(value, nullptr, false);
    out[key] = parsed.is_discarded() ? Json(value) : parsed;
  }
  return out;
}

// A JSON literal or @path.
Json JsonArgument(const std::string& text) {
  if (!text.empty() && text.front() == '@') return ergocert::ReadJsonFile(text.substr(1));
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ergocert::Error("not valid JSON: " + text);
  return j;
}

void AddCommon(CLI::App* app, Common& c) {
  auto* sc = app->add_option("--scenario", c.scenario, "Bundled scenario id");
  app->add_option("--param", c.params, "Scenario parameter key=value (repeatable)");
  app->add_option("--seed", c.seed, "Scenario seed");
  auto* in = app->add_option("--inputs", c.inputs, "Bundle JSON file (as written by gen)");
  sc->excludes(in);
  app->add_option("--measure", c.measure, "Named bundle measure, JSON literal, or @file");
  app->add_option("--aux", c.aux_mu,
                  "Replace the measure by mu R_alpha; mu is a named measure, JSON, or @file");
  app->add_option("--alpha", c.aux_alpha, "Resolvent parameter for --aux");
  app->add_option("--report", c.report, "Write the report here instead of stdout");
  app->add_option("--csv-dir", c.csv_dir, "Directory for CSV series");
  app->add_flag("--no-timing", c.no_timing, "Omit timing fields from the report");
  app->add_flag("--print-config", c.print_config, "Print the equivalent pipeline config and exit");
}

Json MeasureSelector(const std::string& text) {
  if (text.empty()) return nullptr;
  if (text.front() == '@' || text.front() == '{' || text.front() == '[') return JsonArgument(text);
  return text;
}

Json ScenarioJson(const Common& c) {
  Json sc{{"id", c.scenario}};
  const Json params = ParseAssignments(c.params);
  if (!params.empty()) sc["params"] = params;
  if (c.seed >= 0) sc["seed"] = c.seed;
  return sc;
}

Json BaseConfig(const Common& c) {
  Json config;
  if (!c.inputs.empty()) {
    config["inputs"] = ergocert::ReadJsonFile(c.inputs);
    if (!c.measure.empty()) config["inputs"]["measure"] = MeasureSelector(c.measure);
  } else if (!c.scenario.empty()) {
    config["scenario"] = ScenarioJson(c);
    if (!c.measure.empty()) config["scenario"]["measure"] = MeasureSelector(c.measure);
  } else {
    throw ergocert::Error("give --scenario or --inputs");
  }
  Json steps = Json::array();
  if (!c.aux_mu.empty()) {
    steps.push_back(Json{{"op", "auxiliary_measure"}, {"mu", MeasureSelector(c.aux_mu)},
                         {"alpha", c.aux_alpha}});
  }
  config["steps"] = steps;
  Json output = Json::object();
  if (!c.report.empty()) output["report"] = c.report;
  if (!c.csv_dir.empty()) output["csv_dir"] = c.csv_dir;
  output["timing"] = !c.no_timing;
  config["output"] = output;
  return config;
}

int Run(const Json& config, const Common& c) {
  if (c.print_config) {
    std::cout << config.dump(2) << '\n';
    return 0;
  }
  const ergocert::Report report = ergocert::RunPipeline(config, ".");
  ergocert::WriteOutputs(report, config, ".");
  if (!config.contains("output") || !config["output"].contains("report")) {
    const bool timing = config.contains("output") ? config["output"].value("timing", true) : true;
    std::cout << ergocert::ToJson(report, timing).dump(2) << '\n';
  }
  for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
  return report.ExitCode();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergocert: invariant-measure certificates for finite Markov chains"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a scenario bundle as JSON");
  std::string gen_id, gen_out;
  std::vector<std::string> gen_params;
  long long gen_seed = -1;
  gen->add_option("--scenario", gen_id, "Scenario id")->required();
  gen->add_option("--param", gen_params, "key=value (repeatable)");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  Common certify_c, invariant_c, index_c, resolvent_c, harnack_c, perturb_c, convergence_c;

  auto* certify = app.add_subcommand("certify", "Run one condition checker");
  AddCommon(certify, certify_c);
  std::string condition, cert_params;
  certify->add_option("--condition", condition, "Condition id, e.g. AssumpA")->required();
  certify->add_option("--params", cert_params, "Checker parameters: JSON literal or @file");

  auto* invariant = app.add_subcommand("invariant", "Solve for invariant measures");
  AddCommon(invariant, invariant_c);

  auto* index = app.add_subcommand("index-profile", "Index profile of a measure");
  AddCommon(index, index_c);
  unsigned long index_horizon = 256;
  index->add_option("--horizon", index_horizon, "Largest Cesaro time");

  auto* resolvent = app.add_subcommand("resolvent", "Resolvent almost-invariance check");
  AddCommon(resolvent, resolvent_c);
  std::vector<double> alphas;
  std::string resolvent_params;
  resolvent->add_option("--alphas", alphas, "Resolvent parameters");
  resolvent->add_option("--params", resolvent_params, "phi/delta: JSON literal or @file");

  auto* harnack = app.add_subcommand("harnack", "Harnack constants and Harnack pipeline");
  AddCommon(harnack, harnack_c);
  std::string harnack_params;
  harnack->add_option("--params", harnack_params, "gamma, c, exponent, z0: JSON or @file");

  auto* perturb = app.add_subcommand("perturb", "Lazy perturbation certificate");
  AddCommon(perturb, perturb_c);
  std::string perturb_params;
  perturb->add_option("--params", perturb_params, "rho, q, gamma, c, l, eta, r: JSON or @file");

  auto* convergence = app.add_subcommand("convergence", "Weighted gap-norm decay");
  AddCommon(convergence, convergence_c);
  std::vector<unsigned long> grid;
  convergence->add_option("--grid", grid, "Times n at which to measure the gap")->delimiter(',');

  auto* pipeline = app.add_subcommand("pipeline", "Run a pipeline config file");
  std::string config_path;
  bool pipeline_no_timing = false;
  pipeline->add_option("config", config_path, "Config JSON")->required();
  pipeline->add_flag("--no-timing", pipeline_no_timing, "Omit timing fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      Json sc{{"id", gen_id}};
      const Json params = ParseAssignments(gen_params);
      if (!params.empty()) sc["params"] = params;
      if (gen_seed >= 0) sc["seed"] = gen_seed;
      const Json out = ergocert::ToJson(ergocert::Generate(sc));
      if (gen_out.empty()) {
        std::cout << out.dump(2) << '\n';
      } else {
        ergocert::WriteJsonFile(gen_out, out);
      }
      return 0;
    }
    if (*certify) {
      Json config = BaseConfig(certify_c);
      Json step{{"op", "certify"}, {"condition", condition}};
      if (!cert_params.empty()) step["params"] = JsonArgument(cert_params);
      config["steps"].push_back(step);
      return Run(config, certify_c);
    }
    if (*invariant) {
      Json config = BaseConfig(invariant_c);
      config["steps"].push_back(Json{{"op", "solve"}});
      return Run(config, invariant_c);
    }
    if (*index) {
      Json config = BaseConfig(index_c);
      config["steps"].push_back(Json{{"op", "index_profile"}, {"horizon", index_horizon}});
      return Run(config, index_c);
    }
    if (*resolvent) {
      Json config = BaseConfig(resolvent_c);
      Json step = resolvent_params.empty() ? Json::object() : JsonArgument(resolvent_params);
      step["op"] = "resolvent";
      if (!alphas.empty()) step["alphas"] = alphas;
      config["steps"].push_back(step);
      return Run(config, resolvent_c);
    }
    if (*harnack) {
      Json config = BaseConfig(harnack_c);
      Json step{{"op", "harnack"}};
      if (!harnack_params.empty()) step["params"] = JsonArgument(harnack_params);
      config["steps"].push_back(step);
      return Run(config, harnack_c);
    }
    if (*perturb) {
      Json config = BaseConfig(perturb_c);
      Json step{{"op", "perturb"}};
      if (!perturb_params.empty()) step["params"] = JsonArgument(perturb_params);
      config["steps"].push_back(step);
      return Run(config, perturb_c);
    }
    if (*convergence) {
      Json config = BaseConfig(convergence_c);
      Json step{{"op", "convergence"}};
      if (!grid.empty()) step["grid"] = grid;
      config["steps"].push_back(step);
      return Run(config, convergence_c);
    }
    if (*pipeline) {
      Json config = ergocert::ReadJsonFile(config_path);
      const std::string base = std::filesystem::path(config_path).parent_path().string();
      const ergocert::Report report = ergocert::RunPipeline(config, base.empty() ? "." : base);
      ergocert::WriteOutputs(report, config, base.empty() ? "." : base);
      if (!config.contains("output") || !config["output"].contains("report")) {
        std::cout << ergocert::ToJson(report, !pipeline_no_timing).dump(2) << '\n';
      }
      for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
      return report.ExitCode();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
