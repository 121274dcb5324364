// Copyright 2026 The npball Authors
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

#ifndef NPBALL_ERRORS_HPP_
#define NPBALL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace npball {

// Caller violated a precondition (bad dimension, parameter out of range, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation produced a non-finite value or failed an internal residual check.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A series expansion needed more terms than the configured budget.
class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, int terms_needed)
      : NumericError(what), terms_needed_(terms_needed) {}
  int terms_needed() const { return terms_needed_; }

 private:
  int terms_needed_;
};

}  // namespace npball

#endif  // NPBALL_ERRORS_HPP_
