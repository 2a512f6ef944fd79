//
// Copyright 2026 The betalike Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef BETALIKE_ERRORS_H_
#define BETALIKE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace betalike {

// Bad argument to a library call (precondition violated by the caller).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or out-of-domain input data; messages carry file/row context.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that has no valid result for the given input, e.g. a
// perturbation model whose retention probabilities come out non-positive.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal guarantee was broken (a freshly generated release failed its
// own privacy audit). Never expected in a correct build.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace betalike

#endif  // BETALIKE_ERRORS_H_
