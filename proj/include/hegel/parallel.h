// Copyright 2026 The hegel Authors.
//
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

#ifndef HEGEL_PARALLEL_H_
#define HEGEL_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace hegel {

// HEGEL_THREADS if set to a positive integer, else hardware concurrency.
std::size_t default_threads();

// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = default).
// Indices are claimed dynamically; fn must only write state owned by i.
// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace hegel

#endif  // HEGEL_PARALLEL_H_
