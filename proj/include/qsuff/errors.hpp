// Copyright 2026 The qsuff Authors.
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

#ifndef QSUFF_ERRORS_HPP_
#define QSUFF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qsuff {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch, non-square input, or a malformed object.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (p < 1, alpha = 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operator does not live inside the required support.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Input too close to zero to normalize.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A state or channel failed its validation thresholds.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Block decomposition could not find a nondegenerate splitting within the retry budget.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsuff

#endif  // QSUFF_ERRORS_HPP_
