// Copyright 2026 The qts Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qts {

// Bad input to a library operation: shape mismatch, out-of-range parameter,
// a matrix that fails a required property.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// theta_bound has no admissible angle when l*beta < log 2.
class NoValidTheta : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Configuration text error. line is 1-based; 0 means "whole document"
// (for instance a missing required key).
class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t line, std::string key, const std::string& what)
      : InvalidArgument(format(line, key, what)), line_(line), key_(std::move(key)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(std::size_t line, const std::string& key, const std::string& what) {
    std::string out = line > 0 ? "line " + std::to_string(line) + ": " : std::string();
    if (!key.empty()) out += "key '" + key + "': ";
    return out + what;
  }

  std::size_t line_;
  std::string key_;
};

// File-system failure; the message always carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qts
