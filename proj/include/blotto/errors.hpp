// Copyright 2026 The Blotto Lab Authors.
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

#ifndef BLOTTO_ERRORS_HPP_
#define BLOTTO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace blotto {

// Base of every error raised by the library. Errors derived from
// PreconditionError describe bad input; anything else is an internal failure.
class BlottoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public BlottoError {
 public:
  using BlottoError::BlottoError;
};

class InvalidSpecError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InvalidAllocationError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class EnumerationTooLargeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A pure strategy bids more than 2m somewhere, so the swap witness cannot
// cover it.
class NotCoverableError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class WrongRegimeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InvalidComparisonError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ParseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The uniform-marginal solver exhausted its caps without a feasible support.
class SolverFailureError : public BlottoError {
 public:
  using BlottoError::BlottoError;
};

class OverflowError : public BlottoError {
 public:
  using BlottoError::BlottoError;
};

}  // namespace blotto

#endif  // BLOTTO_ERRORS_HPP_
