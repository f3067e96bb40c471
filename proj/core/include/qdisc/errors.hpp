// Copyright 2026 The qdisc Authors
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

namespace qdisc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Geometry that has no well-defined answer, e.g. coincident Bloch vectors.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

/// The constructive solver does not cover this ensemble.
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

/// An iterative or search procedure ran out of options.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace qdisc
