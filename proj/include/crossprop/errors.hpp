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

#ifndef CROSSPROP_ERRORS_HPP_
#define CROSSPROP_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crossprop {

/// A violated precondition or malformed argument.
class InvalidInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A problem with a run configuration (missing key, bad value, missing file).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The linear program has no feasible point (phase-1 optimum stayed positive).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// AP is undefined because the query has no relevant gallery items.
class UndefinedApError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative scheme hit its iteration cap. Carries the residual trail so
/// callers can report how far the run got.
class NoConvergenceError : public std::runtime_error {
 public:
  NoConvergenceError(const std::string& what, double last_residual,
                     std::vector<double> history = {})
      : std::runtime_error(what),
        last_residual_(last_residual),
        history_(std::move(history)) {}

  double last_residual() const { return last_residual_; }
  const std::vector<double>& residual_history() const { return history_; }

 private:
  double last_residual_;
  std::vector<double> history_;
};

}  // namespace crossprop

#endif  // CROSSPROP_ERRORS_HPP_
