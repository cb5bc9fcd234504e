/* Copyright 2026 The Spinflip Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace spinflip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (non-unit spin, bad step count...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class SynthesisError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Thrown when doubling the node count stops improving the estimate.
// The best available value travels with the exception.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double partial_value)
      : Error(what), partial_(partial_value) {}
  double partial_value() const noexcept { return partial_; }

 private:
  double partial_;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinflip
