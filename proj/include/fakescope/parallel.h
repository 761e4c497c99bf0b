/*
 * Copyright 2026 The fakescope Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FAKESCOPE_PARALLEL_H_
#define FAKESCOPE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace fakescope {

// Runs fn(0..n-1) on up to `jobs` threads (jobs <= 1 runs inline). Tasks
// must write only to their own output slot. If tasks throw, the exception of
// the lowest failing index is rethrown after all workers stop.
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace fakescope

#endif  // FAKESCOPE_PARALLEL_H_
