// Copyright 2026 The ldpgraph Authors
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

#ifndef LDPGRAPH_ERRORS_HPP_
#define LDPGRAPH_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldpgraph {

// Malformed input file. `line` is 1-based; 0 means the whole file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")"
                                    : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Inconsistent experiment configuration (bad split, algorithm/policy
// mismatch, missing inputs). Maps to a usage failure in the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A computation whose result would be numerically meaningless, e.g. an
// aggregator scale factor that underflows to zero.
class ConditioningError : public std::runtime_error {
 public:
  explicit ConditioningError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ldpgraph

#endif  // LDPGRAPH_ERRORS_HPP_
