/**
 * Copyright 2026 The hdgbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hdgbs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller: wrong shape, out of
/// range parameter, non-symmetric input where symmetry is required, and so on.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

class ParameterError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// A configured size guard refused the work (enumeration limit, memory guard,
/// mode limit). Raised up front instead of running for hours.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdgbs
