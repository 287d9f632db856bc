// Copyright 2026 The infodisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Model files: a single population instance (w*, A_1, A_2, P_1, P_2) as JSON.
//
//   {
//     "schema_version": 1,
//     "dim": 2,
//     "w_star": [0.1, 0.99498743710662],
//     "A1": [[1, 0], [0, 1]],          // optional, identity when absent
//     "A2": [[1, 0], [0, 1]],
//     "Pi1": [[1, 0], [0, 0]],         // or "data1": rows, with "rank"
//     "Pi2": [[0, 0], [0, 1]],
//     "group_weights": [1, 1]          // optional extension
//   }
//
// Validation failures throw Error(kModelValidation) whose message starts
// with the offending field path.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "infodisc/principal.hpp"

namespace infodisc {

inline constexpr int kModelSchemaVersion = 1;

PopulationModel parse_model(std::string_view json_text, std::size_t default_rank = 5);
PopulationModel load_model(const std::filesystem::path& path, std::size_t default_rank = 5);

/// Serializes with explicit projection matrices; parse_model(write_model(m))
/// reproduces m.
std::string write_model(const PopulationModel& model);

}  // namespace infodisc
