// Copyright 2026 The Unimotion Authors
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

#ifndef UNIMOTION_ERROR_H_
#define UNIMOTION_ERROR_H_

#include <stdexcept>
#include <string>

namespace unimotion {

// A call violated a modelling hypothesis (e.g. diamond prediction with
// kv > kw). The message names the hypothesis.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input data (scenario files, paths, worlds) failed validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The adaptive integrator could not take a step above the underflow limit.
class StepUnderflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unimotion

#endif  // UNIMOTION_ERROR_H_
