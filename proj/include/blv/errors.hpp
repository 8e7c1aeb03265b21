// Copyright 2025 The blv authors
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

#ifndef BLV_ERRORS_HPP
#define BLV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside a configured size/capacity limit.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration/input data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A sign or inequality could not be certified at the allowed precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Request lies outside the admissible regime (e.g. eps below the
/// construction threshold). Carries the threshold for reporting.
class RegimeError : public Error {
 public:
  RegimeError(const std::string& what, std::string threshold)
      : Error(what), threshold_(std::move(threshold)) {}
  const std::string& threshold() const { return threshold_; }

 private:
  std::string threshold_;
};

/// A named hypothesis of a lemma/theorem fails on the given data.
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& what, std::string condition)
      : Error(what), condition_(std::move(condition)) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

/// A standing assumption (boundedness, feasibility, ...) is violated.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace blv

#endif  // BLV_ERRORS_HPP
