// Copyright 2026 The conjbar Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace conjbar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad descriptor parameters, power weights, tolerances or configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A point whose block layout does not match its cone descriptor.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An oracle was asked to evaluate outside the open cone (primal or dual).
class NotInteriorError : public Error {
 public:
  using Error::Error;
};

/// A Cholesky pivot was not positive. Inside the Newton solver this means the
/// iterate has numerically left the interior.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// A scalar function was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace conjbar
