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


#include "ergocert/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ergocert/drift.hpp"
#include "ergocert/harnack.hpp"

namespace ergocert {

const StateSpace& Bundle::space() const {
  if (kernel) return kernel->space();
  if (generator) return generator->space();
  throw Error("bundle " + id + " holds neither a kernel nor a generator");
}

Semigroup Bundle::semigroup() const {
  if (kernel) return Semigroup::Discrete(*kernel);
  if (generator) return Semigroup::Continuous(*generator);
  throw Error("bundle " + id + " holds neither a kernel nor a generator");
}

const Measure& Bundle::measure(const std::string& name) const {
  auto it = measures.find(name);
  if (it == measures.end()) throw Error("bundle " + id + " has no measure \"" + name + "\"");
  return it->second;
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::Below(std::size_t n) {
  if (n == 0) throw Error("Below(0) is empty");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<std::size_t>(r % bound);
}

namespace {

void RequireOpenUnit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw Error(std::string(name) + " must lie in (0, 1)");
}

Kernel WalkKernel(const StateSpace& space, std::size_t n, double p_down, bool reflect) {
  const auto d = static_cast<Eigen::Index>(n + 1);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index x = 0; x < d; ++x) {
    const double down = p_down;
    const double up = 1.0 - p_down;
    if (x > 0) {
      m(x, x - 1) += down;
    } else {
      m(x, reflect ? x : x + 1) += down;
    }
    if (x < d - 1) {
      m(x, x + 1) += up;
    } else {
      m(x, reflect ? x : x - 1) += up;
    }
  }
  return Kernel(space, std::move(m));
}

void AddStandardMeasures(Bundle& b, const Kernel& p) {
  b.measures.emplace("aux", AuxiliaryMeasure(p, Measure::Dirac(p.space(), 0)));
  b.measures.emplace("uniform", Measure::Uniform(p.space()));
}

// Standard normal mass of (lo, hi).
double NormalMass(double lo, double hi) {
  return 0.5 * (std::erfc(lo / std::sqrt(2.0)) - std::erfc(hi / std::sqrt(2.0)));
}

Matrix OuRows(std::size_t n, double dt, double theta, double sigma, double half_width,
              std::vector<double>* centers) {
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  centers->resize(n);
  for (std::size_t i = 0; i < n; ++i) (*centers)[i] = -half_width + h * static_cast<double>(i);
  const double lo_edge = -half_width - 0.5 * h;
  const double hi_edge = half_width + 0.5 * h;
  const double s = sigma * std::sqrt(dt);
  const auto d = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = (*centers)[i] * (1.0 - theta * dt);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = (*centers)[j] - 0.5 * h;
      const double b = (*centers)[j] + 0.5 * h;
      double mass = NormalMass((a - mean) / s, (b - mean) / s);
      // One mirror image across each outer edge.
      mass += NormalMass((2.0 * hi_edge - b - mean) / s, (2.0 * hi_edge - a - mean) / s);
      mass += NormalMass((2.0 * lo_edge - b - mean) / s, (2.0 * lo_edge - a - mean) / s);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mass;
    }
    const auto row = static_cast<Eigen::Index>(i);
    m.row(row) /= m.row(row).sum();
  }
  return m;
}

double GetNumber(const Json& params, const char* key, double def) {
  if (!params.contains(key)) return def;
  if (!params.at(key).is_number()) throw Error(std::string("parameter ") + key + " must be a number");
  return params.at(key).get<double>();
}

std::size_t GetCount(const Json& params, const char* key, std::size_t def) {
  if (!params.contains(key)) return def;
  const Json& v = params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(std::string("parameter ") + key + " must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

void RejectUnknown(const Json& params, std::initializer_list<const char*> known,
                   const std::string& id) {
  std::set<std::string> ok(known.begin(), known.end());
  for (const auto& [k, v] : params.items()) {
    (void)v;
    if (!ok.count(k)) throw Error("scenario " + id + " has no parameter \"" + k + "\"");
  }
}

}  // namespace

Bundle BirthDeath(std::size_t n, double p_down, bool reflect) {
  if (n < 1) throw Error("birth-death chain needs n >= 1");
  RequireOpenUnit(p_down, "p_down");
  Bundle b;
  b.id = "birth_death";
  const StateSpace space = StateSpace::Indexed(n + 1, "");
  Kernel p = WalkKernel(space, n, p_down, reflect);
  const StateSet c(space, {0});
  b.set = c;
  b.z0 = 0;
  if (p_down > 0.5) {
    Vector v(static_cast<Eigen::Index>(n + 1));
    for (std::size_t x = 0; x <= n; ++x) v(static_cast<Eigen::Index>(x)) = static_cast<double>(x) / (2.0 * p_down - 1.0);
    StateFn lyap(space, v);
    const StateFn pv = Apply(p, lyap);
    const double b0 = 1.0 + pv(0) - lyap(0);
    Vector bf = Vector::Zero(static_cast<Eigen::Index>(n + 1));
    bf(0) = b0;
    b.lyapunov = lyap;
    b.b_fn = StateFn(space, bf);
    b.constants["b"] = b0;
  } else {
    Vector v(static_cast<Eigen::Index>(n + 1));
    for (std::size_t x = 0; x <= n; ++x) v(static_cast<Eigen::Index>(x)) = static_cast<double>(x);
    b.lyapunov = StateFn(space, v);
  }
  b.constants["p_down"] = p_down;
  AddStandardMeasures(b, p);
  b.kernel = std::move(p);
  return b;
}

Bundle OutwardWalk(std::size_t n, double p_out) {
  RequireOpenUnit(p_out, "p_out");
  if (!(p_out > 0.5)) throw Error("outward walk needs p_out > 1/2");
  Bundle b = BirthDeath(n, 1.0 - p_out, true);
  b.id = "outward_walk";
  b.constants.clear();
  b.constants["p_out"] = p_out;
  return b;
}

Bundle AbsorbingPair() {
  Bundle b;
  b.id = "absorbing_pair";
  const StateSpace space = StateSpace::Indexed(2, "");
  Matrix m(2, 2);
  m << 0.0, 1.0, 0.0, 1.0;
  b.kernel = Kernel(space, std::move(m));
  b.measures.emplace("half", Measure(space, Vector::Constant(2, 0.5)));
  b.measures.emplace("dirac0", Measure::Dirac(space, 0));
  return b;
}

Bundle TwoState(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0) || !(p + q > 0.0)) {
    throw Error("two-state chain needs p, q in [0, 1] with p + q > 0");
  }
  Bundle b;
  b.id = "two_state";
  const StateSpace space = StateSpace::Indexed(2, "");
  Matrix m(2, 2);
  m << 1.0 - p, p, q, 1.0 - q;
  b.kernel = Kernel(space, std::move(m));
  Vector inv(2);
  inv << q / (p + q), p / (p + q);
  b.measures.emplace("invariant", Measure(space, inv));
  return b;
}

Bundle OuGrid(std::size_t n, double dt, double theta, double sigma, double half_width) {
  if (n < 3) throw Error("OU grid needs at least 3 cells");
  if (!(dt > 0.0 && theta > 0.0 && sigma > 0.0 && half_width > 0.0)) {
    throw Error("OU grid parameters must be positive");
  }
  if (!(theta * dt < 2.0)) throw Error("theta dt must be below 2 for a contracting step");
  Bundle b;
  b.id = "ou_grid";
  const StateSpace space = StateSpace::Indexed(n, "");
  std::vector<double> centers;
  Kernel p(space, OuRows(n, dt, theta, sigma, half_width, &centers));
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = centers[i] * centers[i];
  StateFn lyap(space, v);
  const StateSet c = lyap.sublevel_set(0.25 * half_width * half_width);
  StateIndex z0 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(centers[i]) < std::abs(centers[z0])) z0 = i;
  }
  const double gamma = (1.0 - theta * dt) * (1.0 - theta * dt);
  b.constants["gamma"] = gamma;
  b.constants["c"] = DriftOffset(p, lyap, gamma);
  b.constants["dt"] = dt;
  b.constants["theta"] = theta;
  b.constants["sigma"] = sigma;
  b.constants["L"] = half_width;
  b.lyapunov = lyap;
  b.set = c;
  b.z0 = z0;
  b.measures.emplace("reference", Push(Measure::Dirac(space, z0), p));
  b.measures.emplace("uniform", Measure::Uniform(space));
  b.kernel = std::move(p);
  return b;
}

Bundle BlockChain(std::size_t k, std::size_t block_size) {
  if (k < 1 || block_size < 1) throw Error("block chain needs k >= 1 and block_size >= 1");
  Bundle b;
  b.id = "block_chain";
  const std::size_t n = k * block_size;
  const StateSpace space = StateSpace::Indexed(n, "");
  const auto d = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(d, d);
  const auto s = static_cast<Eigen::Index>(block_size);
  for (Eigen::Index blk = 0; blk < static_cast<Eigen::Index>(k); ++blk) {
    m.block(blk * s, blk * s, s, s).setConstant(1.0 / static_cast<double>(block_size));
  }
  b.kernel = Kernel(space, std::move(m));
  b.measures.emplace("uniform", Measure::Uniform(space));
  // P(x, A) <= k m(A) for the uniform m, with equality on blocks.
  b.constants["phi_c"] = static_cast<double>(k);
  b.constants["k"] = static_cast<double>(k);
  return b;
}

Bundle LazyOu(std::size_t n, double a, double b_max) {
  if (!(a > 0.0 && a <= b_max && b_max <= 1.0)) throw Error("lazy ramp needs 0 < a <= b <= 1");
  Bundle b = OuGrid(n);
  b.id = "lazy";
  const Kernel base = *b.kernel;
  Vector rho(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    rho(static_cast<Eigen::Index>(i)) =
        a + (b_max - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  StateFn ramp(base.space(), rho);
  b.kernel = Perturb(base, PerturbationSpec{ramp, Kernel::Identity(base.space())});
  b.extra_kernels.emplace("base", base);
  b.functions.emplace("rho", ramp);
  b.constants["a"] = a;
  b.constants["b"] = b_max;
  b.measures.erase("reference");
  b.measures.emplace("reference", Push(Measure::Dirac(base.space(), *b.z0), *b.kernel));
  return b;
}

Bundle CtmcSymmetric(double rate) {
  if (!(rate > 0.0)) throw Error("rate must be positive");
  Bundle b;
  b.id = "ctmc_symmetric";
  const StateSpace space = StateSpace::Indexed(2, "");
  Matrix q(2, 2);
  q << -rate, rate, rate, -rate;
  b.generator = Generator(space, std::move(q));
  b.measures.emplace("invariant", Measure(space, Vector::Constant(2, 0.5)));
  b.measures.emplace("dirac0", Measure::Dirac(space, 0));
  b.set = StateSet(space, {0});
  return b;
}

Bundle RandomChain(std::size_t n, double density, std::uint64_t seed) {
  if (n < 1) throw Error("random chain needs n >= 1");
  if (!(density > 0.0 && density <= 1.0)) throw Error("density must lie in (0, 1]");
  Bundle b;
  b.id = "random_chain";
  const StateSpace space = StateSpace::Indexed(n, "");
  Rng rng(seed);
  const auto d = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(d, d);
  const std::size_t per_row =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(density * static_cast<double>(n))));
  for (Eigen::Index x = 0; x < d; ++x) {
    m(x, x) = 0.05 + rng.Uniform();
    for (std::size_t k = 0; k < per_row; ++k) {
      m(x, static_cast<Eigen::Index>(rng.Below(n))) += 0.05 + rng.Uniform();
    }
    m.row(x) /= m.row(x).sum();
  }
  b.kernel = Kernel(space, std::move(m));
  b.measures.emplace("uniform", Measure::Uniform(space));
  b.constants["seed"] = static_cast<double>(seed);
  return b;
}

std::vector<std::string> ScenarioIds() {
  return {"birth_death", "outward_walk", "absorbing_pair", "two_state", "ou_grid",
          "block_chain", "lazy",         "ctmc_symmetric", "random_chain"};
}

Bundle Generate(const Json& scenario) {
  if (!scenario.is_object() || !scenario.contains("id")) throw Error("scenario needs an \"id\"");
  const std::string id = scenario.at("id").get<std::string>();
  const Json params = scenario.value("params", Json::object());
  if (!params.is_object()) throw Error("scenario params must be an object");
  const std::uint64_t seed = scenario.value("seed", std::uint64_t{0});
  if (id == "birth_death") {
    RejectUnknown(params, {"n", "p_down", "reflect"}, id);
    return BirthDeath(GetCount(params, "n", 100), GetNumber(params, "p_down", 0.7),
                      params.value("reflect", true));
  }
  if (id == "outward_walk") {
    RejectUnknown(params, {"n", "p_out"}, id);
    return OutwardWalk(GetCount(params, "n", 100), GetNumber(params, "p_out", 0.7));
  }
  if (id == "absorbing_pair") {
    RejectUnknown(params, {}, id);
    return AbsorbingPair();
  }
  if (id == "two_state") {
    RejectUnknown(params, {"p", "q"}, id);
    return TwoState(GetNumber(params, "p", 0.1), GetNumber(params, "q", 0.2));
  }
  if (id == "ou_grid") {
    RejectUnknown(params, {"n", "dt", "theta", "sigma", "L"}, id);
    return OuGrid(GetCount(params, "n", 41), GetNumber(params, "dt", 0.5),
                  GetNumber(params, "theta", 1.0), GetNumber(params, "sigma", 1.0),
                  GetNumber(params, "L", 4.0));
  }
  if (id == "block_chain") {
    RejectUnknown(params, {"k", "block_size"}, id);
    return BlockChain(GetCount(params, "k", 2), GetCount(params, "block_size", 3));
  }
  if (id == "lazy") {
    RejectUnknown(params, {"n", "a", "b"}, id);
    return LazyOu(GetCount(params, "n", 41), GetNumber(params, "a", 0.4),
                  GetNumber(params, "b", 0.6));
  }
  if (id == "ctmc_symmetric") {
    RejectUnknown(params, {"rate"}, id);
    return CtmcSymmetric(GetNumber(params, "rate", 1.0));
  }
  if (id == "random_chain") {
    RejectUnknown(params, {"n", "density"}, id);
    return RandomChain(GetCount(params, "n", 20), GetNumber(params, "density", 0.2), seed);
  }
  throw Error("unknown scenario \"" + id + "\"");
}

Json ToJson(const Bundle& bundle) {
  Json j;
  j["id"] = bundle.id;
  if (bundle.kernel) j["kernel"] = ToJson(*bundle.kernel);
  if (bundle.generator) j["generator"] = ToJson(*bundle.generator);
  if (bundle.lyapunov) j["lyapunov"] = ToJson(*bundle.lyapunov);
  if (bundle.b_fn) j["b_fn"] = ToJson(*bundle.b_fn);
  if (bundle.set) j["set"] = ToJson(*bundle.set);
  if (bundle.z0) j["z0"] = bundle.space().label(*bundle.z0);
  Json measures = Json::object();
  for (const auto& [k, m] : bundle.measures) measures[k] = ToJson(m);
  j["measures"] = std::move(measures);
  Json kernels = Json::object();
  for (const auto& [k, m] : bundle.extra_kernels) kernels[k] = ToJson(m);
  if (!kernels.empty()) j["extra_kernels"] = std::move(kernels);
  Json fns = Json::object();
  for (const auto& [k, f] : bundle.functions) fns[k] = ToJson(f);
  if (!fns.empty()) j["functions"] = std::move(fns);
  Json consts = Json::object();
  for (const auto& [k, v] : bundle.constants) consts[k] = NumberToJson(v);
  j["constants"] = std::move(consts);
  return j;
}

Bundle BundleFromJson(const Json& j) {
  Bundle b;
  b.id = j.value("id", std::string("inputs"));
  if (j.contains("kernel")) b.kernel = KernelFromJson(j.at("kernel"));
  if (j.contains("generator")) b.generator = GeneratorFromJson(j.at("generator"));
  if (!b.kernel && !b.generator) throw Error("bundle needs a kernel or a generator");
  const StateSpace space = b.space();
  if (j.contains("lyapunov")) b.lyapunov = StateFnFromJson(j.at("lyapunov"), &space);
  if (j.contains("b_fn")) b.b_fn = StateFnFromJson(j.at("b_fn"), &space, false);
  if (j.contains("set")) b.set = StateSetFromJson(j.at("set"), &space);
  if (j.contains("z0")) {
    const Json& z = j.at("z0");
    b.z0 = z.is_string() ? space.index_of(z.get<std::string>()) : z.get<StateIndex>();
    if (*b.z0 >= space.size()) throw Error("z0 out of range");
  }
  if (j.contains("measures")) {
    for (const auto& [k, v] : j.at("measures").items()) b.measures.emplace(k, MeasureFromJson(v, &space));
  }
  if (j.contains("extra_kernels")) {
    for (const auto& [k, v] : j.at("extra_kernels").items()) b.extra_kernels.emplace(k, KernelFromJson(v));
  }
  if (j.contains("functions")) {
    for (const auto& [k, v] : j.at("functions").items()) b.functions.emplace(k, StateFnFromJson(v, &space));
  }
  if (j.contains("constants")) {
    for (const auto& [k, v] : j.at("constants").items()) {
      b.constants[k] = v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
    }
  }
  return b;
}

}  // namespace ergocert
