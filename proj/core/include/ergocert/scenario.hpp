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


// Deterministic generators for the bundled model families. Each returns the
// kernel (or generator) together with its natural companions.

#ifndef ERGOCERT_SCENARIO_HPP_
#define ERGOCERT_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ergocert/io.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/semigroup.hpp"

namespace ergocert {

struct Bundle {
  std::string id;
  std::optional<Kernel> kernel;
  std::optional<Generator> generator;
  std::optional<StateFn> lyapunov;
  std::optional<StateFn> b_fn;
  std::optional<StateSet> set;
  std::optional<StateIndex> z0;
  std::map<std::string, Measure> measures;
  std::map<std::string, Kernel> extra_kernels;
  std::map<std::string, StateFn> functions;
  std::map<std::string, double> constants;

  const StateSpace& space() const;
  Semigroup semigroup() const;
  // Throws when the named measure is absent.
  const Measure& measure(const std::string& name) const;
};

// States 0..n. Interior states step down with probability p_down and up
// otherwise. At the ends the blocked move stays put (reflect) or is sent the
// other way. V(x) = x / (2 p_down - 1), C = {0}, b_fn = 1_C (1 + PV(0) -
// V(0)) when p_down > 1/2. Measures: "aux" = delta_0 R, "uniform".
Bundle BirthDeath(std::size_t n, double p_down, bool reflect = true);
// Same chain with the up probability p_out > 1/2; V(x) = x.
Bundle OutwardWalk(std::size_t n, double p_out);
// P = [[0,1],[0,1]]; measures "half" = (1/2,1/2) and "dirac0".
Bundle AbsorbingPair();
// [[1-p, p], [q, 1-q]]; measure "invariant".
Bundle TwoState(double p, double q);
// Euler-Maruyama step x -> x - theta x dt + sigma sqrt(dt) xi projected on n
// cells of [-L, L], one reflection at each end, rows renormalized.
// V(x) = x^2, C = [V <= (L/2)^2], z0 = the center cell; constants "gamma" =
// (1 - theta dt)^2 and "c" = the smallest additive constant making the drift
// hold on the grid. Measure "reference" = delta_{z0} P.
Bundle OuGrid(std::size_t n, double dt = 0.5, double theta = 1.0, double sigma = 1.0,
              double half_width = 4.0);
// k disjoint blocks with uniform rows inside each block; measure "uniform"
// gives each block mass 1/k.
Bundle BlockChain(std::size_t k, std::size_t block_size);
// rho P + (1 - rho) I on the OU grid with rho ramping from a to b across the
// states; "base" is the unperturbed kernel and functions["rho"] the ramp.
Bundle LazyOu(std::size_t n, double a, double b);
// Q = rate [[-1, 1], [1, -1]].
Bundle CtmcSymmetric(double rate = 1.0);
// Random markovian kernel with about density * n nonzeros per row plus a
// self loop; deterministic in seed. Measure "uniform".
Bundle RandomChain(std::size_t n, double density, std::uint64_t seed);

// {"id": "...", "params": {...}, "seed": n}
Bundle Generate(const Json& scenario);
std::vector<std::string> ScenarioIds();

// Every component of the bundle, absent ones omitted.
Json ToJson(const Bundle& bundle);
// Inverse of ToJson(Bundle). Needs "kernel" or "generator"; every other key
// is optional.
Bundle BundleFromJson(const Json& j);

// mt19937_64 with fixed conversions to doubles and bounded integers, so that
// streams do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double Uniform();  // [0, 1)
  std::size_t Below(std::size_t n);  // [0, n)

 private:
  std::mt19937_64 engine_;
};

}  // namespace ergocert

#endif  // ERGOCERT_SCENARIO_HPP_
