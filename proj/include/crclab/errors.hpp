// Copyright 2026 The crclab Authors.
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

#ifndef CRCLAB_ERRORS_HPP_
#define CRCLAB_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crclab {

// Malformed textual input. Carries the offending position when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = std::string::npos;
};

// An operation was asked to work outside its documented degree bound.
class UnsupportedDegreeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Corpus, manifest, or checkpoint contents do not match their config.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad run configuration (schema violations, unknown keys, bad values).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A corruption draw kept reproducing the clean block and ran out of retries.
class ZeroEffectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crclab

#endif  // CRCLAB_ERRORS_HPP_
