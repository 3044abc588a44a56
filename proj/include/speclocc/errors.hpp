// Copyright 2026 The speclocc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace speclocc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Invalid argument or configuration value. Messages name the offending
/// field or parameter.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Non-finite input, loss of precision, or other numeric trouble.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Parameter on the boundary of the simplex where the model's Fisher
/// information diverges.
class SingularModelError : public Error {
  public:
    using Error::Error;
};

/// State indistinguishable from the maximally mixed one; the spectral gap
/// machinery is undefined there.
class DegenerateModelError : public Error {
  public:
    using Error::Error;
};

/// Inputs violate the hypothesis of the statement under test, so the check
/// cannot be evaluated (distinct from a violation of the statement itself).
class HypothesisError : public Error {
  public:
    using Error::Error;
};

} // namespace speclocc
