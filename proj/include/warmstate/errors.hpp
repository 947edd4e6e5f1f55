// Copyright 2026 The WarmState Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file errors.hpp
 * Exception types shared by every module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace warmstate {

/// Bad argument, malformed configuration or violated precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dimension disagreement between states, operators or parameter vectors.
class DimensionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Problem too large for dense simulation or enumeration.
class SizeError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Failure discovered while computing (non-finite loss, broken invariant).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File system or serialization failure.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Largest qubit count handled by dense statevectors and diagonalization.
inline constexpr std::size_t kMaxQubits = 14;

namespace detail {
inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw ValidationError(message);
    }
}
} // namespace detail

} // namespace warmstate
