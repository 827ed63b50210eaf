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


#include "ergocert/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace ergocert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Json& Require(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(std::string(what) + " JSON needs the key \"" + key + "\"");
  }
  return j.at(key);
}

double NumberFromJson(const Json& j, bool allow_inf) {
  if (j.is_number()) return j.get<double>();
  if (allow_inf) {
    if (j.is_null()) return kInf;
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "inf" || s == "Infinity" || s == "+inf") return kInf;
    }
  }
  throw Error("expected a number, got " + j.dump());
}

Json Numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(NumberToJson(x));
  return a;
}

Json Numbers(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(NumberToJson(v(i)));
  return a;
}

Json Rows(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix RowsFromJson(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw Error(std::string(what) + " must be a nonempty array");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& r = j.at(static_cast<std::size_t>(i));
    if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != n) {
      throw Error(std::string(what) + " must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = NumberFromJson(r.at(static_cast<std::size_t>(k)), false);
  }
  return m;
}

std::optional<StateSpace> OptionalSpace(const Json& j) {
  if (j.is_object() && j.contains("states")) return StateSpaceFromJson(j.at("states"));
  return std::nullopt;
}

// Values in the order of `target`, matched by label when the JSON names its
// states.
Vector Reordered(const Json& j, const StateSpace* target, bool allow_inf, const char* what,
                 std::optional<StateSpace>* chosen, bool sparse = false) {
  const Json& values = Require(j, "values", what);
  if (!values.is_array()) throw Error(std::string(what) + " values must be an array");
  Vector raw(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    raw(static_cast<Eigen::Index>(i)) = NumberFromJson(values[i], allow_inf);
  }
  const auto own = OptionalSpace(j);
  if (own && own->size() != values.size()) {
    throw Error(std::string(what) + ": states and values differ in length");
  }
  if (!target) {
    *chosen = own ? *own : StateSpace::Indexed(values.size(), "");
    return raw;
  }
  *chosen = *target;
  if (!own) {
    if (values.size() != target->size()) {
      throw Error(std::string(what) + " has " + std::to_string(values.size()) +
                  " values for a space of " + std::to_string(target->size()) + " states");
    }
    return raw;
  }
  if (own->size() != target->size() && !(sparse && own->size() < target->size())) {
    throw Error(std::string(what) + " is defined on a different state space");
  }
  Vector out = Vector::Zero(static_cast<Eigen::Index>(target->size()));
  for (StateIndex i = 0; i < own->size(); ++i) {
    out(static_cast<Eigen::Index>(target->index_of(own->label(i)))) = raw(static_cast<Eigen::Index>(i));
  }
  return out;
}

}  // namespace

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid JSON in " + path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path);
}

Json NumberToJson(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json ToJson(const StateSpace& space) { return Json(space.labels()); }

Json ToJson(const Kernel& k) {
  Json j;
  j["states"] = ToJson(k.space());
  j["kind"] = std::string(ToString(k.kind()));
  j["rows"] = Rows(k.matrix());
  return j;
}

Json ToJson(const Generator& g) {
  Json j;
  j["states"] = ToJson(g.space());
  j["rates"] = Rows(g.rates());
  j["lambda"] = g.lambda();
  return j;
}

Json ToJson(const Measure& m) {
  Json j;
  j["states"] = ToJson(m.space());
  j["values"] = Numbers(m.weights());
  return j;
}

Json ToJson(const StateFn& f) {
  Json j;
  j["states"] = ToJson(f.space());
  j["values"] = Numbers(f.values());
  return j;
}

Json ToJson(const StateSet& s) {
  Json j;
  j["states"] = ToJson(s.space());
  Json members = Json::array();
  for (StateIndex i : s.members()) members.push_back(s.space().label(i));
  j["members"] = std::move(members);
  return j;
}

Json ToJson(const Phi& phi) {
  Json j;
  switch (phi.family()) {
    case Phi::Family::kLinear:
      j["family"] = "linear";
      break;
    case Phi::Family::kPower:
      j["family"] = "power";
      break;
    case Phi::Family::kTable: {
      j["family"] = "table";
      Json knots = Json::array();
      for (const auto& [t, y] : phi.knots()) knots.push_back(Json::array({t, y}));
      j["knots"] = std::move(knots);
      return j;
    }
  }
  for (const auto& [name, value] : phi.Parameters()) j[name] = NumberToJson(value);
  return j;
}

Json ToJson(const AlmostInvarianceParams& params) {
  Json j;
  j["phi"] = ToJson(params.phi);
  j["delta"] = params.delta;
  j["horizon"] = params.horizon;
  j["n0"] = params.n0;
  j["include_limit"] = params.include_limit;
  return j;
}

Json ToJson(const Certificate& c) {
  Json j;
  j["condition"] = std::string(ToString(c.condition));
  j["verdict"] = std::string(ToString(c.verdict));
  Json constants = Json::object();
  for (const auto& [k, v] : c.constants) constants[k] = NumberToJson(v);
  j["constants"] = std::move(constants);
  Json series = Json::object();
  for (const auto& [k, v] : c.series) series[k] = Numbers(v);
  j["series"] = std::move(series);
  if (c.witness) {
    Json w;
    w["state"] = c.witness->state ? Json(*c.witness->state) : Json(nullptr);
    w["set"] = c.witness->set;
    w["n"] = c.witness->n ? Json(*c.witness->n) : Json(nullptr);
    w["description"] = c.witness->description;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = c.notes;
  Json attached = Json::array();
  for (const auto& a : c.attached) attached.push_back(ToJson(a));
  j["attached"] = std::move(attached);
  return j;
}

Json ToJson(const IndexProfile& profile) {
  Json j;
  j["epsilons"] = Numbers(profile.epsilons);
  j["crisp"] = Numbers(profile.crisp);
  j["fractional"] = Numbers(profile.fractional);
  j["crisp_n"] = profile.crisp_n;
  j["horizon"] = profile.horizon;
  j["total_mass"] = profile.total_mass;
  j["verdict"] = profile.verdict;
  j["exact"] = profile.exact;
  return j;
}

Json ToJson(const DecayReport& report) {
  Json j;
  j["ns"] = report.ns;
  j["norms"] = Numbers(report.norms);
  j["fitted_gamma"] = NumberToJson(report.fitted_gamma);
  j["fitted_c"] = NumberToJson(report.fitted_c);
  j["envelope_c"] = NumberToJson(report.envelope_c);
  j["r2"] = NumberToJson(report.r2);
  j["fit_points"] = report.fit_points;
  j["geometric"] = report.geometric;
  j["exact_convergence"] = report.exact_convergence;
  j["notes"] = report.notes;
  return j;
}

Json ToJson(const InvariantResult& r) {
  Json j;
  j["method"] = std::string(ToString(r.method));
  j["nu"] = ToJson(r.nu);
  j["rho"] = Numbers(r.rho.values());
  j["mass"] = r.nu.mass();
  j["is_zero"] = r.is_zero();
  j["residual"] = NumberToJson(r.residual);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["subinvariance_gap"] = NumberToJson(r.subinvariance_gap);
  j["mass_gap"] = NumberToJson(r.mass_gap);
  j["trajectory"] = Numbers(r.trajectory);
  j["norms"] = Numbers(r.norms);
  j["notes"] = r.notes;
  return j;
}

Json ToJson(const HarnackConstant& h, const StateSpace& space) {
  Json j;
  j["p"] = h.p;
  j["x"] = space.label(h.x);
  j["y"] = space.label(h.y);
  j["M"] = NumberToJson(h.value);
  j["finite"] = h.finite();
  return j;
}

Json ToJson(const LazyAtomsReport& r) {
  Json j;
  j["max_power"] = r.max_power;
  j["closed_form_error"] = NumberToJson(r.closed_form_error);
  j["exact_atoms"] = r.exact_atoms;
  j["diagonal_slack"] = NumberToJson(r.diagonal_slack);
  j["tail_sups"] = Numbers(r.tail_sups);
  j["one_minus_b"] = r.one_minus_b;
  j["max_atom"] = r.max_atom;
  j["notes"] = r.notes;
  return j;
}

StateSpace StateSpaceFromJson(const Json& j) {
  if (!j.is_array()) throw Error("states must be an array of labels");
  std::vector<std::string> labels;
  for (const Json& s : j) {
    if (s.is_string()) {
      labels.push_back(s.get<std::string>());
    } else if (s.is_number_integer()) {
      labels.push_back(std::to_string(s.get<long long>()));
    } else {
      throw Error("state labels must be strings or integers");
    }
  }
  return StateSpace(std::move(labels));
}

Kernel KernelFromJson(const Json& j, RowSumPolicy policy) {
  Matrix rows = RowsFromJson(Require(j, "rows", "kernel"), "kernel rows");
  const auto own = OptionalSpace(j);
  StateSpace space = own ? *own : StateSpace::Indexed(static_cast<std::size_t>(rows.rows()), "");
  if (space.size() != static_cast<std::size_t>(rows.rows())) {
    throw Error("kernel states and rows differ in size");
  }
  const KernelKind kind = j.contains("kind") ? KernelKindFromString(j.at("kind").get<std::string>())
                                             : KernelKind::kMarkovian;
  return Kernel(std::move(space), std::move(rows), kind, policy);
}

Generator GeneratorFromJson(const Json& j) {
  Matrix rates = RowsFromJson(Require(j, "rates", "generator"), "generator rates");
  const auto own = OptionalSpace(j);
  StateSpace space = own ? *own : StateSpace::Indexed(static_cast<std::size_t>(rates.rows()), "");
  if (space.size() != static_cast<std::size_t>(rates.rows())) {
    throw Error("generator states and rates differ in size");
  }
  std::optional<double> lambda;
  if (j.contains("lambda") && !j.at("lambda").is_null()) lambda = NumberFromJson(j.at("lambda"), false);
  return Generator(std::move(space), std::move(rates), lambda);
}

Measure MeasureFromJson(const Json& j, const StateSpace* space) {
  std::optional<StateSpace> chosen;
  Vector v = Reordered(j, space, false, "measure", &chosen, true);
  return Measure(std::move(*chosen), std::move(v));
}

StateFn StateFnFromJson(const Json& j, const StateSpace* space, bool extended) {
  std::optional<StateSpace> chosen;
  Vector v = Reordered(j, space, extended, "function", &chosen);
  return StateFn(std::move(*chosen), std::move(v), extended);
}

StateSet StateSetFromJson(const Json& j, const StateSpace* space) {
  const Json& members = Require(j, "members", "set");
  if (!members.is_array()) throw Error("set members must be an array");
  const auto own = OptionalSpace(j);
  if (!space && !own) throw Error("set JSON needs \"states\" when no space is given");
  const StateSpace target = space ? *space : *own;
  std::vector<StateIndex> idx;
  for (const Json& m : members) {
    if (m.is_string()) {
      idx.push_back(target.index_of(m.get<std::string>()));
    } else if (m.is_number_integer()) {
      const auto k = m.get<long long>();
      if (k < 0 || static_cast<std::size_t>(k) >= target.size()) {
        throw Error("set member index " + std::to_string(k) + " out of range");
      }
      idx.push_back(static_cast<StateIndex>(k));
    } else {
      throw Error("set members must be labels or indices");
    }
  }
  return StateSet(target, std::move(idx));
}

Phi PhiFromJson(const Json& j) {
  const std::string family = Require(j, "family", "phi").get<std::string>();
  if (family == "linear") return Phi::Linear(NumberFromJson(Require(j, "c", "phi"), false));
  if (family == "power") {
    auto get = [&](const char* k, double def) {
      return j.contains(k) ? NumberFromJson(j.at(k), false) : def;
    };
    return Phi::Power(get("b", 1.0), get("M", 1.0), get("a", 1.0), get("p", 1.0));
  }
  if (family == "table") {
    std::vector<std::pair<double, double>> knots;
    for (const Json& k : Require(j, "knots", "phi")) {
      if (!k.is_array() || k.size() != 2) throw Error("table knots are [t, y] pairs");
      knots.emplace_back(NumberFromJson(k[0], false), NumberFromJson(k[1], false));
    }
    return Phi::Table(std::move(knots));
  }
  throw Error("unknown phi family \"" + family + "\"");
}

AlmostInvarianceParams ParamsFromJson(const Json& j) {
  AlmostInvarianceParams p;
  if (!j.is_object()) throw Error("params must be an object");
  if (j.contains("phi")) p.phi = PhiFromJson(j.at("phi"));
  if (j.contains("delta")) p.delta = NumberFromJson(j.at("delta"), false);
  if (j.contains("horizon")) p.horizon = j.at("horizon").get<unsigned long>();
  if (j.contains("n0")) p.n0 = j.at("n0").get<unsigned long>();
  if (j.contains("include_limit")) p.include_limit = j.at("include_limit").get<bool>();
  return p;
}

Certificate CertificateFromJson(const Json& j) {
  Certificate c = MakeCertificate(ConditionFromString(Require(j, "condition", "certificate").get<std::string>()));
  c.verdict = VerdictFromString(Require(j, "verdict", "certificate").get<std::string>());
  if (j.contains("constants")) {
    for (const auto& [k, v] : j.at("constants").items()) c.constants[k] = NumberFromJson(v, true);
  }
  if (j.contains("series")) {
    for (const auto& [k, v] : j.at("series").items()) {
      std::vector<double> s;
      for (const Json& x : v) s.push_back(NumberFromJson(x, true));
      c.series[k] = std::move(s);
    }
  }
  if (j.contains("witness") && !j.at("witness").is_null()) {
    const Json& w = j.at("witness");
    Witness wit;
    if (w.contains("state") && !w.at("state").is_null()) wit.state = w.at("state").get<std::string>();
    if (w.contains("set")) wit.set = w.at("set").get<std::vector<std::string>>();
    if (w.contains("n") && !w.at("n").is_null()) wit.n = w.at("n").get<long long>();
    if (w.contains("description")) wit.description = w.at("description").get<std::string>();
    c.witness = wit;
  }
  if (j.contains("notes")) c.notes = j.at("notes").get<std::string>();
  if (j.contains("attached")) {
    for (const Json& a : j.at("attached")) c.attached.push_back(CertificateFromJson(a));
  }
  return c;
}

}  // namespace ergocert
