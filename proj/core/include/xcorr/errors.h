// Copyright 2026 The xcorr Authors
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

#ifndef XCORR_ERRORS_H_
#define XCORR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace xcorr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Truth table is not monotone or not input-sensitive.
class AxiomViolation : public Error {
 public:
  using Error::Error;
};

// Invalid TargetingSpec.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Invalid algorithm or scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class OverlapError : public Error {
 public:
  using Error::Error;
};

class EmptyFamily : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Predictions and ground truth do not refer to the same outputs.
class MismatchedUniverse : public Error {
 public:
  using Error::Error;
};

}  // namespace xcorr

#endif  // XCORR_ERRORS_H_
