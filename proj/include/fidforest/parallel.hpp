/*
 * Copyright 2026 The fidforest Authors.
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

#ifndef FIDFOREST_PARALLEL_HPP
#define FIDFOREST_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace fidforest {

/// Run fn(0..count-1) on up to n_threads workers.  Each index must write
/// only its own output slot; results are then independent of scheduling,
/// which keeps every caller bit-reproducible across worker counts.
/// The first exception thrown by any index is rethrown after all workers
/// finish.
void parallel_for(std::size_t count, unsigned n_threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fidforest

#endif  // FIDFOREST_PARALLEL_HPP
