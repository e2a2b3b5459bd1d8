// Copyright 2026 The SIT Authors.
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

#ifndef SIT_ERRORS_H_
#define SIT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sit {

// Root of every error the library raises. Callers that only need to know
// "something in the harness failed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad flags, malformed config or plan files, inconsistent inputs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class CorpusLoadError : public Error {
 public:
  using Error::Error;
};

class EncodingError : public Error {
 public:
  EncodingError(const std::string& what, size_t line)
      : Error(what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class BackendUnavailableError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A single translation attempt failed. `retryable` is set for timeouts,
// HTTP 429 and 5xx.
class TranslationError : public Error {
 public:
  TranslationError(const std::string& what, int status, bool retryable)
      : Error(what), status_(status), retryable_(retryable) {}
  int status() const { return status_; }
  bool retryable() const { return retryable_; }

 private:
  int status_;
  bool retryable_;
};

// Raised by the translate stage when no request in a batch succeeded.
class TranslationFailure : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

// Anything that prevents building a structural representation: malformed
// parser output, adapter failures, count mismatches.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public RepresentationError {
 public:
  // `position` is a character offset for bracketed trees and a 1-based line
  // number for CoNLL-U.
  ParseError(const std::string& what, size_t position)
      : RepresentationError(what), position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

class AdapterError : public RepresentationError {
 public:
  using RepresentationError::RepresentationError;
};

class MetricMismatchError : public Error {
 public:
  using Error::Error;
};

class UndefinedAccuracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace sit

#endif  // SIT_ERRORS_H_
