// Copyright 2026 The hkcurve Authors
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

namespace hk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (field specs, polynomials, elements).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain of an operation (alpha = 0, q not a power of p, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation refused because it would exceed a configured resource bound.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hk
