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


// Batch runs driven by a JSON config:
//
//   {"scenario": {"id": ..., "params": {...}, "seed": n}
//      | "inputs": {"kernel": ..., "generator": ..., "measure": ...,
//                   "lyapunov": ..., "set": ..., "b_fn": ...},
//    "steps": [{"op": "auxiliary_measure", ...}, {"op": "check_a2"}, ...],
//    "output": {"report": "path.json", "csv_dir": "dir"}}
//
// Input entries are either inline objects or file paths. Steps run in order;
// a failing step records its error and later independent steps still run.

#ifndef ERGOCERT_PIPELINE_HPP_
#define ERGOCERT_PIPELINE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergocert/io.hpp"
#include "ergocert/scenario.hpp"

namespace ergocert {

// Everything a condition check may draw on. Missing pieces are reported as
// errors by Certify when the condition needs them.
struct CertifyInputs {
  std::optional<Kernel> kernel;
  std::optional<Generator> generator;
  std::optional<Measure> measure;
  std::optional<StateFn> lyapunov;
  std::optional<StateFn> b_fn;
  std::optional<StateSet> set;
  std::optional<StateIndex> z0;
  // Unperturbed kernel for the perturbation check; defaults to `kernel`.
  std::optional<Kernel> base_kernel;
  std::map<std::string, StateFn> functions;
  std::map<std::string, double> constants;  // defaults for gamma, b, c, ...

  static CertifyInputs FromBundle(const Bundle& b);
  const StateSpace& space() const;
  Semigroup semigroup() const;
};

// Runs the checker for `id` with JSON parameters; see the README for the
// keys each condition reads.
Certificate Certify(ConditionId id, const CertifyInputs& in, const Json& params = Json::object());

struct CsvSeries {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  Json scenario;
  std::vector<Certificate> certificates;
  Json invariants_found = Json::array();
  Json profiles = Json::array();
  Json harnack = Json::array();
  Json agreement;  // four-way existence verdicts, when computed
  std::vector<std::string> errors;
  std::map<std::string, double> timing;  // seconds per step
  std::vector<CsvSeries> series;

  // 0 when every certificate holds and no error occurred, 2 when some
  // certificate fails, 1 on errors.
  int ExitCode() const;
};

Report RunPipeline(const Json& config, const std::string& base_dir = ".");
// Report as JSON; timing is omitted when include_timing is false, which
// makes reports byte-identical across runs with the same config.
Json ToJson(const Report& report, bool include_timing = true);
void WriteCsv(const CsvSeries& series, const std::string& path);
// Writes the report file and CSV series named in config["output"].
void WriteOutputs(const Report& report, const Json& config, const std::string& base_dir = ".");

// Four verdicts on the existence of a nonzero invariant measure below m:
// almost invariance at optimal constants, mean almost invariance, the
// index, and the adjoint solver.
struct ExistenceVerdicts {
  bool almost_invariant = false;
  bool mean_almost_invariant = false;
  bool index = false;
  bool solver_nonzero = false;
  bool agree() const;
};
ExistenceVerdicts EvaluateExistence(const Kernel& p, const Measure& m,
                                    unsigned long horizon = 256);
Json ToJson(const ExistenceVerdicts& v);

}  // namespace ergocert

#endif  // ERGOCERT_PIPELINE_HPP_
