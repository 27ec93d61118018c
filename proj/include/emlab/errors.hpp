// Copyright 2026 The emlab developers
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

#pragma once

#include <stdexcept>
#include <string>

namespace emlab {

/// Base class for all emlab errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a documented invariant (bad dimensions, non-Hermitian
/// matrix, unknown factor label, parameter out of range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to meet its contract (non-convergence under
/// strict mode, failed decomposition construction).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File or stream problem.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace emlab
