// Copyright 2026 The qre Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qre {

/// Bad argument shape or range (wrong length, invalid party index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A value failed one of its type invariants. `invariant()` names the check.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string invariant, const std::string& message)
      : std::invalid_argument(invariant + ": " + message), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Well-formed input outside what the library handles (party counts, dimension cap).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qre
