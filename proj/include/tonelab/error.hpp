// Copyright 2026 The ToneLab Authors
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

#include <stdexcept>
#include <string>

namespace tonelab {

/// Bad user input: malformed tokens, files, or arguments. The CLI maps this
/// family to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A transcription token or table row that fails to parse.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// A file that cannot be opened or has an unsupported layout.
class IoError : public InputError {
 public:
  using InputError::InputError;
};

/// Numerical or data-dependent failure at run time (exit code 1).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tonelab
