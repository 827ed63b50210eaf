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


// Umbrella header.

#ifndef ERGOCERT_ERGOCERT_HPP_
#define ERGOCERT_ERGOCERT_HPP_

#include "ergocert/almost_invariance.hpp"
#include "ergocert/certificate.hpp"
#include "ergocert/convergence.hpp"
#include "ergocert/drift.hpp"
#include "ergocert/ergodic.hpp"
#include "ergocert/harnack.hpp"
#include "ergocert/harris.hpp"
#include "ergocert/index_profile.hpp"
#include "ergocert/io.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/parallel.hpp"
#include "ergocert/phi.hpp"
#include "ergocert/pipeline.hpp"
#include "ergocert/scenario.hpp"
#include "ergocert/semigroup.hpp"
#include "ergocert/solver.hpp"
#include "ergocert/worst_set.hpp"

#endif  // ERGOCERT_ERGOCERT_HPP_
