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


#include "ergocert/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ergocert/almost_invariance.hpp"
#include "ergocert/convergence.hpp"
#include "ergocert/drift.hpp"
#include "ergocert/ergodic.hpp"
#include "ergocert/harnack.hpp"
#include "ergocert/harris.hpp"
#include "ergocert/index_profile.hpp"
#include "ergocert/solver.hpp"

namespace ergocert {

namespace {

namespace fs = std::filesystem;

template <typename T>
const T& Need(const std::optional<T>& v, const char* what, ConditionId id) {
  if (!v) throw Error(std::string(ToString(id)) + " needs " + what);
  return *v;
}

double Num(const Json& params, const CertifyInputs& in, const char* key,
           std::optional<double> fallback = std::nullopt) {
  if (params.contains(key) && !params.at(key).is_null()) {
    if (!params.at(key).is_number()) throw Error(std::string("parameter ") + key + " must be a number");
    return params.at(key).get<double>();
  }
  auto it = in.constants.find(key);
  if (it != in.constants.end()) return it->second;
  if (fallback) return *fallback;
  throw Error(std::string("missing parameter ") + key);
}

unsigned long Count(const Json& params, const char* key, unsigned long def) {
  if (!params.contains(key)) return def;
  const Json& v = params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(std::string("parameter ") + key + " must be a nonnegative integer");
  }
  return static_cast<unsigned long>(v.get<long long>());
}

std::vector<double> Grid(const Json& params, const char* key, std::vector<double> def) {
  if (!params.contains(key)) return def;
  std::vector<double> out;
  for (const Json& x : params.at(key)) out.push_back(x.get<double>());
  if (out.empty()) throw Error(std::string("parameter ") + key + " is empty");
  return out;
}

std::vector<double> DefaultAlphas() { return {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}; }

std::vector<double> DefaultTimes() {
  std::vector<double> t;
  for (double x = 1.0; x <= 256.0; x *= 2.0) t.push_back(x);
  return t;
}

// A function parameter: a number (constant), a JSON function, or the name of
// a bundled function.
StateFn FunctionParam(const Json& params, const CertifyInputs& in, const char* key,
                      std::optional<StateFn> fallback) {
  if (params.contains(key)) {
    const Json& v = params.at(key);
    if (v.is_number()) return StateFn::Constant(in.space(), v.get<double>());
    if (v.is_string()) {
      auto it = in.functions.find(v.get<std::string>());
      if (it == in.functions.end()) throw Error("unknown function \"" + v.get<std::string>() + "\"");
      return it->second;
    }
    return StateFnFromJson(v, &in.space());
  }
  auto it = in.functions.find(key);
  if (it != in.functions.end()) return it->second;
  if (fallback) return *fallback;
  throw Error(std::string("missing function parameter ") + key);
}

StateSet SetParam(const Json& params, const CertifyInputs& in, const char* key, ConditionId id) {
  if (params.contains(key)) return StateSetFromJson(params.at(key), &in.space());
  return Need(in.set, "a set", id);
}

Measure MeasureParam(const Json& params, const CertifyInputs& in, const char* key,
                     ConditionId id) {
  if (params.contains(key)) return MeasureFromJson(params.at(key), &in.space());
  return Need(in.measure, "a measure", id);
}

StateIndex StateParam(const Json& params, const CertifyInputs& in, const char* key,
                      std::optional<StateIndex> fallback) {
  if (params.contains(key)) {
    const Json& v = params.at(key);
    if (v.is_string()) return in.space().index_of(v.get<std::string>());
    const auto k = v.get<long long>();
    if (k < 0 || static_cast<std::size_t>(k) >= in.space().size()) throw Error("state out of range");
    return static_cast<StateIndex>(k);
  }
  if (fallback) return *fallback;
  throw Error(std::string("missing state parameter ") + key);
}

}  // namespace

CertifyInputs CertifyInputs::FromBundle(const Bundle& b) {
  CertifyInputs in;
  in.kernel = b.kernel;
  in.generator = b.generator;
  in.lyapunov = b.lyapunov;
  in.b_fn = b.b_fn;
  in.set = b.set;
  in.z0 = b.z0;
  in.functions = b.functions;
  if (auto it = b.extra_kernels.find("base"); it != b.extra_kernels.end()) in.base_kernel = it->second;
  in.constants = b.constants;
  return in;
}

const StateSpace& CertifyInputs::space() const {
  if (kernel) return kernel->space();
  if (generator) return generator->space();
  throw Error("no kernel or generator given");
}

Semigroup CertifyInputs::semigroup() const {
  if (kernel) return Semigroup::Discrete(*kernel);
  if (generator) return Semigroup::Continuous(*generator);
  throw Error("no kernel or generator given");
}

Certificate Certify(ConditionId id, const CertifyInputs& in, const Json& params) {
  if (!params.is_object()) throw Error("certify params must be an object");
  const Semigroup s = in.semigroup();
  // Discrete checks on a continuous semigroup run on its uniformized kernel.
  const Kernel p = s.Skeleton();
  switch (id) {
    case ConditionId::kAuxSupport:
      return CheckAuxSupport(s, MeasureParam(params, in, "measure", id));
    case ConditionId::kAlmostInv:
    case ConditionId::kMeanAlmostInv: {
      const Measure m = MeasureParam(params, in, "measure", id);
      const bool optimal = params.value("optimal", !params.contains("phi"));
      const AlmostInvarianceParams ap = ParamsFromJson(params);
      if (id == ConditionId::kAlmostInv) {
        return optimal ? OptimalAlmostInvariance(p, m, ap.horizon) : CheckAlmostInvariant(p, m, ap);
      }
      return optimal ? OptimalMeanAlmostInvariance(p, m, ap.horizon, ap.n0)
                     : CheckMeanAlmostInvariant(p, m, ap);
    }
    case ConditionId::kResolventAlmostInv:
      return CheckResolventAlmostInvariant(s, MeasureParam(params, in, "measure", id),
                                           ParamsFromJson(params),
                                           Grid(params, "alphas", DefaultAlphas()));
    case ConditionId::kIndexC: {
      const Measure m = MeasureParam(params, in, "measure", id);
      const unsigned long horizon = Count(params, "horizon", 256);
      const IndexProfile prof =
          s.is_discrete()
              ? ComputeIndexProfile(p, m, DefaultEpsilonGrid(m), horizon)
              : ComputeIndexProfile(s, m, DefaultEpsilonGrid(m), horizon, IndexMethod::kBoth,
                                    static_cast<int>(Count(params, "quad_steps", 64)));
      return IndexCertificate(prof);
    }
    case ConditionId::kAssumpA: {
      const StateFn& v = Need(in.lyapunov, "a Lyapunov function", id);
      const double gamma = Num(params, in, "gamma");
      const double b = Num(params, in, "b", DriftOffset(p, v, gamma));
      const double r = Num(params, in, "r", 2.0 * b / (1.0 - gamma) * (1.0 + 1e-6) + 1e-12);
      return CheckAssumptionA(p, v, gamma, b, r);
    }
    case ConditionId::kAssumpAPrime: {
      const StateFn& v = Need(in.lyapunov, "a Lyapunov function", id);
      return CheckAssumptionAPrime(p, v, Num(params, in, "gamma"), Num(params, in, "b"),
                                   SetParam(params, in, "set", id));
    }
    case ConditionId::kAssumpB: {
      const StateFn& v = Need(in.lyapunov, "a Lyapunov function", id);
      std::vector<StateSet> tails;
      if (params.contains("tail_sets")) {
        for (const Json& t : params.at("tail_sets")) tails.push_back(StateSetFromJson(t, &p.space()));
      }
      return CheckAssumptionB(p, v, Num(params, in, "b"), SetParam(params, in, "set", id), tails);
    }
    case ConditionId::kAssumpC: {
      const StateFn gamma = FunctionParam(params, in, "gamma_fn", std::nullopt);
      return CheckAssumptionC(p, MeasureParam(params, in, "measure", id), Num(params, in, "L"),
                              gamma, SetParam(params, in, "set", id), Count(params, "n0", 1),
                              Count(params, "horizon", 256));
    }
    case ConditionId::kAssumpCPrime:
      return CheckAssumptionCPrime(p, MeasureParam(params, in, "measure", id),
                                   ParamsFromJson(params), SetParam(params, in, "set", id),
                                   static_cast<int>(Count(params, "f_grid", 0)));
    case ConditionId::kGenDrift:
      return CheckGeneralizedDrift(p, Need(in.lyapunov, "a Lyapunov function", id),
                                   FunctionParam(params, in, "b_fn", in.b_fn),
                                   SetParam(params, in, "set", id));
    case ConditionId::kCondD:
      return CheckConditionD(p, MeasureParam(params, in, "measure", id),
                             Need(in.lyapunov, "a Lyapunov function", id),
                             FunctionParam(params, in, "b_fn", in.b_fn), Num(params, in, "r"),
                             Count(params, "N0", 1), Count(params, "N", 256));
    case ConditionId::kCondE: {
      ConditionEParams ep;
      ep.cprime = ParamsFromJson(params);
      ep.r = Num(params, in, "r", 0.0);
      ep.n0 = Count(params, "N0", 1);
      ep.horizon = Count(params, "horizon", 256);
      return CheckConditionE(p, MeasureParam(params, in, "measure", id),
                             Need(in.lyapunov, "a Lyapunov function", id),
                             FunctionParam(params, in, "b_fn", in.b_fn),
                             SetParam(params, in, "set", id), ep);
    }
    case ConditionId::kSmallness:
      return CheckSmallness(p, SetParam(params, in, "set", id));
    case ConditionId::kPartialSubInv:
      return CheckPartialSubinvariance(p, MeasureParam(params, in, "measure", id),
                                       Count(params, "horizon", 64));
    case ConditionId::kLasotaSzarekHalf:
      return CheckLasotaSzarekHalf(s, MeasureParam(params, in, "nu", id),
                                   SetParam(params, in, "set", id),
                                   Grid(params, "t_grid", DefaultTimes()),
                                   Num(params, in, "alpha", 1.0),
                                   static_cast<int>(Count(params, "quad_steps", 64)));
    case ConditionId::kUniformBoundLp:
      return CheckUniformBoundLp(s, MeasureParam(params, in, "measure", id),
                                 Num(params, in, "p", 2.0), Grid(params, "alphas", DefaultAlphas()));
    case ConditionId::kAuxIndexTransfer:
      return CheckAuxIndexTransfer(s, MeasureParam(params, in, "mu", id), Num(params, in, "alpha", 1.0),
                                   Grid(params, "t_grid", DefaultTimes()),
                                   static_cast<int>(Count(params, "quad_steps", 64)));
    case ConditionId::kHarnackLyapunov:
    case ConditionId::kHarnackPipeline: {
      const StateFn& v = Need(in.lyapunov, "a Lyapunov function", id);
      const StateSet set = SetParam(params, in, "set", id);
      const StateIndex z0 = StateParam(params, in, "z0", in.z0 ? in.z0 : DefaultReference(v, set));
      const double gamma = Num(params, in, "gamma");
      const double c = Num(params, in, "c", DriftOffset(p, v, gamma));
      const double exponent = Num(params, in, "exponent", 2.0);
      return id == ConditionId::kHarnackLyapunov
                 ? CheckHarnackLyapunov(p, v, gamma, c, set, z0, exponent)
                 : CertifyHarnackPipeline(p, v, gamma, c, set, z0, exponent);
    }
    case ConditionId::kPerturbedHarnackLyapunov: {
      const StateFn& v = Need(in.lyapunov, "a Lyapunov function", id);
      // An explicit base kernel replaces the bundled one.
      const Kernel base = params.contains("base") ? KernelFromJson(params.at("base"))
                                                  : in.base_kernel.value_or(p);
      PerturbationSpec spec{FunctionParam(params, in, "rho", std::nullopt),
                            params.contains("q") ? KernelFromJson(params.at("q"))
                                                 : Kernel::Identity(base.space())};
      PerturbedHarnackParams hp;
      hp.gamma = Num(params, in, "gamma");
      hp.c = Num(params, in, "c", DriftOffset(base, v, hp.gamma));
      hp.l = Num(params, in, "l", 1.0);
      hp.eta = Num(params, in, "eta", 0.0);
      hp.exponent = Num(params, in, "exponent", 2.0);
      if (params.contains("r")) {
        hp.r = Num(params, in, "r");
      } else if (in.set) {
        hp.r = 0.0;
        for (StateIndex x : in.set->members()) hp.r = std::max(hp.r, v(x));
      } else {
        throw Error("PerturbedHarnackLyapunov needs r or a set");
      }
      if (params.contains("z0") || in.z0) hp.z0 = StateParam(params, in, "z0", in.z0);
      return CertifyPerturbedHarnack(base, v, spec, hp);
    }
    case ConditionId::kClassCountBound: {
      const AlmostInvarianceParams ap = ParamsFromJson(params);
      return VerifyCountBound(p, MeasureParam(params, in, "measure", id), ap.phi, ap.delta);
    }
  }
  throw Error("unsupported condition");
}

bool ExistenceVerdicts::agree() const {
  return almost_invariant == mean_almost_invariant && almost_invariant == index &&
         almost_invariant == solver_nonzero;
}

ExistenceVerdicts EvaluateExistence(const Kernel& p, const Measure& m, unsigned long horizon) {
  ExistenceVerdicts v;
  v.almost_invariant = OptimalAlmostInvariance(p, m, horizon).holds();
  v.mean_almost_invariant = OptimalMeanAlmostInvariance(p, m, horizon).holds();
  v.index = ComputeIndexProfile(p, m, DefaultEpsilonGrid(m), horizon, IndexMethod::kExact).verdict;
  v.solver_nonzero = !SolveCesaroAdjoint(p, m).is_zero();
  return v;
}

Json ToJson(const ExistenceVerdicts& v) {
  Json j;
  j["almost_invariant"] = v.almost_invariant;
  j["mean_almost_invariant"] = v.mean_almost_invariant;
  j["index"] = v.index;
  j["solver_nonzero"] = v.solver_nonzero;
  j["agree"] = v.agree();
  return j;
}

int Report::ExitCode() const {
  if (!errors.empty()) return 1;
  for (const auto& c : certificates) {
    if (c.fails()) return 2;
  }
  return 0;
}

namespace {

struct State {
  CertifyInputs in;
  std::optional<Bundle> bundle;
};

Json LoadEntry(const Json& entry, const std::string& base_dir) {
  if (entry.is_string()) {
    const fs::path path = fs::path(base_dir) / entry.get<std::string>();
    return ReadJsonFile(path.string());
  }
  return entry;
}

// "measure" selects a named bundle measure or gives one inline.
State LoadInputs(const Json& config, const std::string& base_dir, Json* scenario_echo) {
  State st;
  Json selector;
  if (config.contains("scenario")) {
    const Json sc = LoadEntry(config.at("scenario"), base_dir);
    st.bundle = Generate(sc);
    *scenario_echo = sc;
    if (sc.contains("measure")) selector = sc.at("measure");
  } else if (config.contains("inputs")) {
    const Json inputs = LoadEntry(config.at("inputs"), base_dir);
    Json resolved = Json::object();
    for (const auto& [k, v] : inputs.items()) {
      resolved[k] = (k == "measure" || k == "id") ? v : LoadEntry(v, base_dir);
    }
    st.bundle = BundleFromJson(resolved);
    *scenario_echo = Json{{"id", st.bundle->id}};
    if (inputs.contains("measure")) {
      // A string names a bundle measure when one exists, else it is a file.
      const Json& m = inputs.at("measure");
      selector = (m.is_string() && !st.bundle->measures.contains(m.get<std::string>()))
                     ? LoadEntry(m, base_dir)
                     : m;
    }
  } else {
    throw Error("config needs \"scenario\" or \"inputs\"");
  }
  st.in = CertifyInputs::FromBundle(*st.bundle);
  if (selector.is_string()) {
    st.in.measure = st.bundle->measure(selector.get<std::string>());
  } else if (!selector.is_null()) {
    st.in.measure = MeasureFromJson(selector, &st.in.space());
  }
  return st;
}

Json DefaultSteps() {
  return Json::array({Json{{"op", "auxiliary_measure"}}, Json{{"op", "check_a2"}},
                      Json{{"op", "index_profile"}}, Json{{"op", "solve"}},
                      Json{{"op", "existence"}}});
}

CsvSeries ProfileSeries(const IndexProfile& p) {
  CsvSeries s{"index_profile", {"eps", "crisp", "fractional", "crisp_n"}, {}};
  for (std::size_t i = 0; i < p.epsilons.size(); ++i) {
    s.rows.push_back({p.epsilons[i], p.crisp[i], i < p.fractional.size() ? p.fractional[i] : NAN,
                      static_cast<double>(p.crisp_n[i])});
  }
  return s;
}

void RunStep(const Json& step, State& st, Report& report) {
  const std::string op = step.at("op").get<std::string>();
  const Semigroup s = st.in.semigroup();
  const Kernel p = s.Skeleton();
  if (op == "auxiliary_measure") {
    Measure mu = Measure::Dirac(s.space(), st.in.z0.value_or(0));
    if (step.contains("mu")) {
      const Json& j = step.at("mu");
      if (j.is_string()) {
        if (!st.bundle) throw Error("named measures need a scenario");
        mu = st.bundle->measure(j.get<std::string>());
      } else {
        mu = MeasureFromJson(j, &s.space());
      }
    }
    const double alpha = step.value("alpha", 1.0);
    st.in.measure = AuxiliaryMeasure(s, mu.normalized(), alpha, step.value("normalize", false));
    Json info;
    info["op"] = op;
    info["measure"] = ToJson(*st.in.measure);
    report.profiles.push_back(info);
  } else if (op == "use_measure") {
    if (!st.bundle) throw Error("use_measure needs a scenario");
    st.in.measure = st.bundle->measure(step.at("name").get<std::string>());
  } else if (op == "check_a2") {
    if (!st.in.measure) throw Error("check_a2 needs a measure");
    report.certificates.push_back(CheckAuxSupport(s, *st.in.measure));
  } else if (op == "index_profile") {
    if (!st.in.measure) throw Error("index_profile needs a measure");
    const Measure& m = *st.in.measure;
    const unsigned long horizon = step.value("horizon", 256UL);
    const IndexProfile prof = s.is_discrete()
                                  ? ComputeIndexProfile(p, m, DefaultEpsilonGrid(m), horizon)
                                  : ComputeIndexProfile(s, m, DefaultEpsilonGrid(m), horizon);
    Json info = ToJson(prof);
    info["op"] = op;
    report.profiles.push_back(info);
    report.certificates.push_back(IndexCertificate(prof));
    report.series.push_back(ProfileSeries(prof));
  } else if (op == "certify") {
    const ConditionId id = ConditionFromString(step.at("condition").get<std::string>());
    report.certificates.push_back(Certify(id, st.in, step.value("params", Json::object())));
  } else if (op == "resolvent") {
    if (!st.in.measure) throw Error("resolvent needs a measure");
    std::vector<double> alphas = DefaultAlphas();
    if (step.contains("alphas")) alphas = step.at("alphas").get<std::vector<double>>();
    report.certificates.push_back(
        CheckResolventAlmostInvariant(s, *st.in.measure, ParamsFromJson(step), alphas));
  } else if (op == "solve") {
    if (s.is_discrete()) {
      if (st.in.measure) {
        const InvariantResult r = SolveCesaroAdjoint(p, *st.in.measure);
        Json j = ToJson(r);
        if (r.is_zero()) j["flag"] = "no invariant measure below m";
        report.invariants_found.push_back(j);
        CsvSeries traj{"solver_trajectory", {"step", "l1_change"}, {}};
        for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
          traj.rows.push_back({static_cast<double>(i + 1), r.trajectory[i]});
        }
        report.series.push_back(std::move(traj));
      }
      if (p.is_markovian()) {
        for (const auto& r : SolveEigen(p)) report.invariants_found.push_back(ToJson(r));
      }
    } else {
      for (const auto& r : SolveContinuous(s)) report.invariants_found.push_back(ToJson(r));
    }
  } else if (op == "existence") {
    if (!st.in.measure) throw Error("existence needs a measure");
    report.agreement = ToJson(EvaluateExistence(p, *st.in.measure, step.value("horizon", 256UL)));
  } else if (op == "convergence") {
    const auto eig = SolveEigen(p);
    if (eig.size() != 1) throw Error("convergence needs a single closed class");
    const StateFn v = st.in.lyapunov && st.in.lyapunov->values().allFinite()
                          ? *st.in.lyapunov
                          : StateFn::Constant(p.space(), 0.0);
    std::vector<unsigned long> ns = DefaultDecayGrid();
    if (step.contains("grid")) ns = step.at("grid").get<std::vector<unsigned long>>();
    const DecayReport d = ComputeDecayReport(p, eig.front().nu, v, ns);
    Json info = ToJson(d);
    info["op"] = op;
    report.profiles.push_back(info);
    CsvSeries cs{"decay", {"n", "beta"}, {}};
    for (std::size_t i = 0; i < d.ns.size(); ++i) {
      cs.rows.push_back({static_cast<double>(d.ns[i]), d.norms[i]});
    }
    report.series.push_back(std::move(cs));
  } else if (op == "harnack") {
    Json params = step.value("params", Json::object());
    Certificate c = Certify(ConditionId::kHarnackPipeline, st.in, params);
    const StateFn& v = *st.in.lyapunov;
    const StateSet set = st.in.set ? *st.in.set : v.sublevel_set(0.0);
    const StateIndex z0 = st.in.z0.value_or(DefaultReference(v, set));
    const double exponent = params.value("exponent", 2.0);
    for (StateIndex x : set.members()) {
      report.harnack.push_back(ToJson(ComputeHarnackConstant(p, z0, x, exponent), p.space()));
    }
    report.certificates.push_back(std::move(c));
  } else if (op == "perturb") {
    report.certificates.push_back(
        Certify(ConditionId::kPerturbedHarnackLyapunov, st.in, step.value("params", Json::object())));
  } else if (op == "lazy_atoms") {
    const StateFn rho = FunctionParam(step, st.in, "rho", std::nullopt);
    const Kernel base = st.in.base_kernel.value_or(p);
    Json info = ToJson(DiagnoseLazyAtoms(base, rho, Need(st.in.set, "a set", ConditionId::kHarnackPipeline),
                                         Need(st.in.lyapunov, "a Lyapunov function",
                                              ConditionId::kHarnackPipeline),
                                         step.value("max_power", 64UL)));
    info["op"] = op;
    report.profiles.push_back(info);
  } else {
    throw Error("unknown step \"" + op + "\"");
  }
}

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Report RunPipeline(const Json& config, const std::string& base_dir) {
  Report report;
  State st;
  try {
    st = LoadInputs(config, base_dir, &report.scenario);
  } catch (const std::exception& e) {
    report.errors.push_back(std::string("inputs: ") + e.what());
    return report;
  }
  const Json steps = config.contains("steps") ? config.at("steps") : DefaultSteps();
  std::size_t i = 0;
  for (const Json& step : steps) {
    ++i;
    const std::string op = step.value("op", std::string("?"));
    const std::string key = std::to_string(i) + ":" + op;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      RunStep(step, st, report);
    } catch (const std::exception& e) {
      report.errors.push_back("step " + key + ": " + e.what());
    }
    report.timing[key] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return report;
}

Json ToJson(const Report& report, bool include_timing) {
  Json j;
  j["scenario"] = report.scenario;
  Json certs = Json::array();
  for (const auto& c : report.certificates) certs.push_back(ToJson(c));
  j["certificates"] = std::move(certs);
  j["invariants_found"] = report.invariants_found;
  j["profiles"] = report.profiles;
  j["harnack"] = report.harnack;
  j["agreement"] = report.agreement.is_null() ? Json(nullptr) : report.agreement;
  j["errors"] = report.errors;
  j["exit_code"] = report.ExitCode();
  if (include_timing) {
    Json t = Json::object();
    for (const auto& [k, v] : report.timing) t[k] = v;
    j["timing"] = std::move(t);
  }
  return j;
}

void WriteCsv(const CsvSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (std::size_t i = 0; i < series.columns.size(); ++i) {
    out << (i ? "," : "") << series.columns[i];
  }
  out << '\n';
  for (const auto& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << FormatNumber(row[i]);
    out << '\n';
  }
}

void WriteOutputs(const Report& report, const Json& config, const std::string& base_dir) {
  if (!config.contains("output")) return;
  const Json& o = config.at("output");
  if (o.contains("report")) {
    const fs::path path = fs::path(base_dir) / o.at("report").get<std::string>();
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    WriteJsonFile(path.string(), ToJson(report, o.value("timing", true)));
  }
  if (o.contains("csv_dir")) {
    const fs::path dir = fs::path(base_dir) / o.at("csv_dir").get<std::string>();
    fs::create_directories(dir);
    for (const auto& s : report.series) WriteCsv(s, (dir / (s.name + ".csv")).string());
  }
}

}  // namespace ergocert
