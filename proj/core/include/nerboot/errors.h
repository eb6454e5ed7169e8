// Copyright 2026 The nerboot Authors.
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

#ifndef NERBOOT_ERRORS_H_
#define NERBOOT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nerboot {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `position` is a 1-based line number for files and a
// 0-based character offset for inline pattern text.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, size_t position)
      : Error(message), position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Well-formed input that violates a data-model invariant (BIO sequence,
// reserved values, duplicate ids).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input that does not fit the selected language profile.
class ProfileError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A score formula was asked for a value it does not define (zero count in a
// logarithm). Callers treat this as a signal, not a failure.
class ScoreUndefinedError : public Error {
 public:
  using Error::Error;
};

// Counts or references that contradict each other.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A pattern with masked slots was handed to matching.
class UnresolvedPatternError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyTrainingError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nerboot

#endif  // NERBOOT_ERRORS_H_
