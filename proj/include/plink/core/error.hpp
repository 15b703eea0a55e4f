// Copyright 2026 The plink authors.
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

#ifndef PLINK_CORE_ERROR_HPP_
#define PLINK_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace plink {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad JSONL line, bad binary header, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An invariant or precondition does not hold (bad span, bad config, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A referenced object (entity id, document id, file) does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Filesystem / OS level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace plink

#endif  // PLINK_CORE_ERROR_HPP_
