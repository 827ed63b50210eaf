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


// JSON encodings of every public value type.
//
//   Kernel     {"states": [...], "kind": "markovian", "rows": [[...], ...]}
//   Generator  {"states": [...], "rates": [[...], ...], "lambda": x?}
//   Measure    {"states": [...], "values": [...]}
//   StateFn    {"states": [...], "values": [...]}   null stands for +inf
//   StateSet   {"states": [...], "members": ["label", ...]}
//   Phi        {"family": "linear", "c": x} | {"family": "power", "b", "M",
//              "a", "p"} | {"family": "table", "knots": [[t, y], ...]}
//
// When a target space is passed, labels are matched by name and values are
// reordered to the space's order.

#ifndef ERGOCERT_IO_HPP_
#define ERGOCERT_IO_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "ergocert/almost_invariance.hpp"
#include "ergocert/certificate.hpp"
#include "ergocert/convergence.hpp"
#include "ergocert/harnack.hpp"
#include "ergocert/index_profile.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/phi.hpp"
#include "ergocert/semigroup.hpp"
#include "ergocert/solver.hpp"

namespace ergocert {

using Json = nlohmann::ordered_json;

Json ReadJsonFile(const std::string& path);
// Pretty-printed with a trailing newline.
void WriteJsonFile(const std::string& path, const Json& j);
// Numbers that are not finite are written as null.
Json NumberToJson(double v);

Json ToJson(const StateSpace& space);
Json ToJson(const Kernel& k);
Json ToJson(const Generator& g);
Json ToJson(const Measure& m);
Json ToJson(const StateFn& f);
Json ToJson(const StateSet& s);
Json ToJson(const Phi& phi);
Json ToJson(const AlmostInvarianceParams& params);
Json ToJson(const Certificate& c);
Json ToJson(const IndexProfile& profile);
Json ToJson(const DecayReport& report);
Json ToJson(const InvariantResult& result);
Json ToJson(const HarnackConstant& h, const StateSpace& space);
Json ToJson(const LazyAtomsReport& report);

StateSpace StateSpaceFromJson(const Json& j);
Kernel KernelFromJson(const Json& j, RowSumPolicy policy = RowSumPolicy::kReject);
Generator GeneratorFromJson(const Json& j);
// Against a given space a measure may list only some states; the rest get 0.
Measure MeasureFromJson(const Json& j, const StateSpace* space = nullptr);
StateFn StateFnFromJson(const Json& j, const StateSpace* space = nullptr, bool extended = true);
StateSet StateSetFromJson(const Json& j, const StateSpace* space = nullptr);
Phi PhiFromJson(const Json& j);
// {"phi": {...}, "delta": x, "horizon": n, "n0": n, "include_limit": b};
// absent keys keep their defaults.
AlmostInvarianceParams ParamsFromJson(const Json& j);
Certificate CertificateFromJson(const Json& j);

}  // namespace ergocert

#endif  // ERGOCERT_IO_HPP_
