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

// JSON encodings of the config and record types. Decoders are strict:
// unknown keys are rejected so typos in config files fail loudly instead of
// silently falling back to defaults.

#ifndef CRCLAB_JSON_IO_HPP_
#define CRCLAB_JSON_IO_HPP_

#include <json.hpp>

#include "crclab/errinject.hpp"

namespace crclab {

// Throws ConfigError if `j` is not an object or holds keys outside `allowed`.
void require_keys(const nlohmann::json& j,
                  std::initializer_list<const char*> allowed,
                  const std::string& context);

nlohmann::json to_json(const CorpusConfig& config);
CorpusConfig corpus_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CorruptionRecord& record);
CorruptionRecord record_from_json(const nlohmann::json& j);

}  // namespace crclab

#endif  // CRCLAB_JSON_IO_HPP_
