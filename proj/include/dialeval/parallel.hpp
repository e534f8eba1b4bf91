/*
 * Copyright (c) 2026, the dialeval authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace dialeval {

// threads == 1 runs the plain serial loop (the reference path the tests
// compare against); any other value runs the OpenMP kernel, 0 meaning the
// runtime default thread count. Callers produce identical results on both
// paths because each index writes its own output slot.
struct ExecPolicy {
  int threads = 0;
};

// Runs fn(i) for i in [0, n). fn must be safe to call concurrently for
// distinct i. The first exception thrown by any iteration is rethrown on
// the calling thread after the loop finishes.
void for_each_index(std::size_t n, const ExecPolicy& exec,
                    const std::function<void(std::size_t)>& fn);

}  // namespace dialeval
