/*
 * Copyright 2026 The fidforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FIDFOREST_ERRORS_HPP
#define FIDFOREST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fidforest {

// Error taxonomy, mirrored by the CLI exit codes:
//   InvalidInputError -> 2 (usage / bad argument)
//   DataError         -> 3 (files, parsing, insufficient data)
//   NumericError      -> 4 (degenerate fits, invalid dof, no valid model)

class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& msg) : std::invalid_argument(msg) {}
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fidforest

#endif  // FIDFOREST_ERRORS_HPP
