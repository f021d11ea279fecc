// Copyright 2026 The Sybilbench Authors
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

#ifndef SYBILBENCH_ERRORS_HPP_
#define SYBILBENCH_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sybilbench {

// Base class for every error raised on a data or configuration path. The CLI
// maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised when a computation refuses an input it cannot handle (e.g. exact
// enumeration over too many nodes).
class RefusedError : public Error {
 public:
  using Error::Error;
};

}  // namespace sybilbench

#endif  // SYBILBENCH_ERRORS_HPP_
