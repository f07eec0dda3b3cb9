// Copyright 2026 The fiberk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FIBERK_ERROR_HPP_
#define FIBERK_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fiberk {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument is outside its documented domain (spacing <= 0,
/// non-ascending grid, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A value violates a type invariant (fiber with fewer than two points,
/// repeated consecutive points, non-finite coordinates, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// No fiber center falls inside the observation window, so the intensity
/// estimate is zero and the K-function estimator is undefined.
class EmptyWindowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fiberk

#endif  // FIBERK_ERROR_HPP_
