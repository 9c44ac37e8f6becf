// Copyright 2026 The lrr Authors
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

#ifndef LRR_ERROR_HPP_
#define LRR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lrr {

// Precondition violations: bad shapes, non-finite entries, malformed files.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A tail bound was queried outside the range of t for which it is proven.
class OutOfWindow : public std::domain_error {
 public:
  explicit OutOfWindow(const std::string& what) : std::domain_error(what) {}
};

class IOError : public std::runtime_error {
 public:
  explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lrr

#endif  // LRR_ERROR_HPP_
