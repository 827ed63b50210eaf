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


// Minimal fork-join helper. The thread count comes from ERGOCERT_THREADS when
// set, otherwise from std::thread::hardware_concurrency().

#ifndef ERGOCERT_PARALLEL_HPP_
#define ERGOCERT_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace ergocert {

int ThreadCount();

// Runs body(i) for i in [0, n). The first exception thrown by any worker is
// rethrown on the calling thread after all workers finish.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ergocert

#endif  // ERGOCERT_PARALLEL_HPP_
