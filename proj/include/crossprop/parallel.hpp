// Copyright 2026 The crossprop Authors
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

#ifndef CROSSPROP_PARALLEL_HPP_
#define CROSSPROP_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace crossprop {

/// Number of worker threads: the CROSSPROP_WORKERS environment variable when
/// set (clamped to >= 1), otherwise the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, count). Iterations must write to disjoint state;
/// scheduling order is unspecified but results must not depend on it. The
/// first exception thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace crossprop

#endif  // CROSSPROP_PARALLEL_HPP_
