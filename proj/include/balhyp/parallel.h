// Copyright 2026 The balhyp Authors
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

#ifndef BALHYP_PARALLEL_H_
#define BALHYP_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace balhyp {

// Worker count: BALHYP_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int WorkerCount();

// Calls body(i) for i in [0, count) on up to WorkerCount() threads. Callers
// write results into slot i, so the outcome does not depend on scheduling.
// Every index runs; the exception from the lowest failing index is rethrown.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace balhyp

#endif  // BALHYP_PARALLEL_H_
