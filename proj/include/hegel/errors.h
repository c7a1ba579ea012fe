// Copyright 2026 The hegel Authors.
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

#ifndef HEGEL_ERRORS_H_
#define HEGEL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace hegel {

// Base class for all library errors. The CLI maps each subclass onto an exit
// code: data errors exit 2, numeric failures exit 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input record. `line` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Binary or structured file does not match the expected layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or argument combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Shape mismatches and other contract violations on in-memory values.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf during training or a numerically impossible request.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace hegel

#endif  // HEGEL_ERRORS_H_
