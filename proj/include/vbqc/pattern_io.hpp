// Copyright 2026 The vbqc Authors
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

#include <string>

#include <json.hpp>

#include "vbqc/pattern.hpp"

namespace vbqc {

inline constexpr const char *kPatternSchema = "vbqc.pattern/1";

/// Parses a pattern document. Throws std::invalid_argument on unknown fields,
/// missing required fields, out-of-range angles or unknown vertex ids.
/// When neither xdeps nor zdeps is given they are derived from f.
MeasurementPattern pattern_from_json(const nlohmann::json &doc);
nlohmann::json pattern_to_json(const MeasurementPattern &p);

MeasurementPattern load_pattern_file(const std::string &path);
void save_pattern_file(const MeasurementPattern &p, const std::string &path);

/// A built-in name or a path to a pattern file.
MeasurementPattern resolve_pattern(const std::string &ref);

}  // namespace vbqc
