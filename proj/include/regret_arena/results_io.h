// Copyright 2026 The Regret Arena Authors.
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

// JSON documents exchanged with the outside world: bimatrix game files,
// batch results, and gap reports.

#ifndef REGRET_ARENA_RESULTS_IO_H_
#define REGRET_ARENA_RESULTS_IO_H_

#include <string>

#include "json.hpp"
#include "regret_arena/engine.h"
#include "regret_arena/game.h"
#include "regret_arena/search.h"

namespace regret_arena {

inline constexpr int kSchemaVersion = 1;

// Serializes with sorted keys and every floating-point number written with 17
// significant digits, so identical results give byte-identical text. Arrays
// of scalars stay on one line when pretty-printing (indent > 0).
std::string CanonicalDump(const nlohmann::json& doc, int indent = 2);

// {"A": [[...]], "B": [[...]]}, row-major.
nlohmann::json MatrixGameToJson(const Game& game);
// Throws ParseError for wrong field types and ConfigError for shape or range
// violations.
Game MatrixGameFromJson(const nlohmann::json& doc, std::string name = "matrix");

// Throws IoError if the file cannot be read, ParseError on malformed JSON,
// ConfigError on shape or range violations.
Game LoadMatrixFile(const std::string& path);
void SaveMatrixFile(const Game& game, const std::string& path);

// Description of the game for result consumers (names, action values, axis
// label, utility bounds).
nlohmann::json GameMetadataJson(const Game& game);

// The result document: config echo, per-turn means, heatmaps, overall means,
// regrets, final-window equilibrium gaps, diagnostics, schema_version.
nlohmann::json BatchResultToJson(const BatchResult& result,
                                 const SimulationConfig& config);

nlohmann::json GapMeasurementToJson(const GapMeasurement& m);
nlohmann::json GapReportToJson(const GapReport& report);
GapMeasurement GapMeasurementFromJson(const nlohmann::json& doc);

// Reads and parses a JSON file. Throws IoError / ParseError.
nlohmann::json ReadJsonFile(const std::string& path);
// Writes `text` to `path` ("-" is stdout). Throws IoError.
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace regret_arena

#endif  // REGRET_ARENA_RESULTS_IO_H_
