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

#include "regret_arena/results_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "regret_arena/error.h"

namespace regret_arena {

using nlohmann::json;

namespace {

std::string FormatDouble(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string out = buf;
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

bool IsScalar(const json& v) { return !v.is_object() && !v.is_array(); }

void Dump(const json& v, int indent, int depth, std::string& out) {
  const bool pretty = indent > 0;
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<size_t>(d) * indent, ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      // nlohmann::json objects are std::map-backed, so iteration is sorted.
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += pretty ? ": " : ":";
        Dump(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : v) flat = flat && IsScalar(e);
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        Dump(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += FormatDouble(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

json HeatmapToJson(const Heatmap& h) {
  json rows = json::array();
  for (int r = 0; r < h.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < h.cols; ++c) row.push_back(h.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json MatrixToJson(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    rows.push_back(json(std::vector<double>(m.row(r).begin(), m.row(r).end())));
  }
  return rows;
}

Matrix MatrixFromJson(const json& rows, const char* field) {
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(std::string("field '") + field +
                     "' must be a non-empty array of rows");
  }
  std::vector<std::vector<double>> values;
  for (const auto& row : rows) {
    if (!row.is_array()) {
      throw ParseError(std::string("field '") + field +
                       "' must contain arrays of numbers");
    }
    std::vector<double> parsed;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw ParseError(std::string("non-numeric entry in '") + field + "'");
      }
      parsed.push_back(v.get<double>());
    }
    values.push_back(std::move(parsed));
  }
  return Matrix::FromRows(values);
}

}  // namespace

std::string CanonicalDump(const json& doc, int indent) {
  std::string out;
  Dump(doc, indent, 0, out);
  out += '\n';
  return out;
}

json MatrixGameToJson(const Game& game) {
  if (!game.is_bimatrix()) {
    throw ConfigError("only bimatrix games have a matrix file form");
  }
  return json{{"A", MatrixToJson(game.payoff_table(0))},
              {"B", MatrixToJson(game.payoff_table(1))}};
}

Game MatrixGameFromJson(const json& doc, std::string name) {
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("B")) {
    throw ParseError("matrix document needs fields \"A\" and \"B\"");
  }
  return Game::Bimatrix(MatrixFromJson(doc["A"], "A"),
                        MatrixFromJson(doc["B"], "B"), std::move(name));
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

Game LoadMatrixFile(const std::string& path) {
  const json doc = ReadJsonFile(path);
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.rfind(".json");
  if (dot != std::string::npos) name = name.substr(0, dot);
  return MatrixGameFromJson(doc, name);
}

void SaveMatrixFile(const Game& game, const std::string& path) {
  WriteTextFile(path, CanonicalDump(MatrixGameToJson(game)));
}

void WriteTextFile(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing file '" + path + "'");
}

json GameMetadataJson(const Game& game) {
  json meta;
  meta["name"] = game.name();
  meta["kind"] = game.is_auction() ? "auction" : "bimatrix";
  meta["num_players"] = game.num_players();
  meta["action_counts"] = game.action_counts();
  meta["utility_bounds"] = {game.bounds().min, game.bounds().max};
  meta["action_label"] = game.ActionValueLabel();
  json action_values = json::array();
  for (int p = 0; p < game.num_players(); ++p) {
    std::vector<double> values;
    for (int a = 0; a < game.num_actions(p); ++a) {
      values.push_back(game.ActionValue(p, a));
    }
    action_values.push_back(values);
  }
  meta["action_values"] = std::move(action_values);
  if (game.is_auction()) {
    meta["auction_kind"] = AuctionKindName(game.auction_kind());
    meta["values"] = game.values();
    meta["bid_grid"] = game.bid_grid().values();
  } else {
    meta["A"] = MatrixToJson(game.payoff_table(0));
    meta["B"] = MatrixToJson(game.payoff_table(1));
  }
  return meta;
}

json BatchResultToJson(const BatchResult& result,
                       const SimulationConfig& config) {
  json cfg;
  cfg["game"] = GameMetadataJson(config.game);
  json learners = json::array();
  for (const auto& spec : config.learners) learners.push_back(spec.ToString());
  cfg["learners"] = std::move(learners);
  json rates = json::array();
  for (const auto& spec : config.learners) {
    rates.push_back(spec.rate ? json(*spec.rate) : json(nullptr));
  }
  cfg["learning_rates"] = std::move(rates);
  cfg["turns"] = result.turns;
  cfg["simulations"] = result.simulations;
  cfg["seed"] = config.seed;
  cfg["sim_seeds"] = result.sim_seeds;
  cfg["final_window_fraction"] = config.final_window_fraction;
  cfg["final_window_start"] = result.final_window_start;

  json per_turn = json::array();
  for (int t = 0; t < result.turns; ++t) {
    per_turn.push_back(json{{"turn", t},
                            {"mean_utility", result.mean_utility[t]},
                            {"mean_action", result.mean_action[t]}});
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = std::move(cfg);
  doc["per_turn"] = std::move(per_turn);
  doc["heatmap"] = HeatmapToJson(result.heatmap);
  doc["final_window_heatmap"] = HeatmapToJson(result.final_window_heatmap);
  doc["overall_mean_utility"] = result.overall_mean_utility;
  doc["regret"] = json{{"external", result.mean_external_regret},
                       {"swap", result.mean_swap_regret}};
  if (result.final_window_gaps) {
    doc["equilibrium_gaps"] = json{{"cce", result.final_window_gaps->cce},
                                   {"ce", result.final_window_gaps->ce}};
  } else {
    doc["equilibrium_gaps"] = nullptr;
  }
  json slack = json::array();
  for (const auto& s : result.min_swap_bound_slack) {
    slack.push_back(s ? json(*s) : json(nullptr));
  }
  doc["diagnostics"] =
      json{{"max_stationary_residual", result.max_stationary_residual},
           {"min_swap_bound_slack", std::move(slack)}};
  return doc;
}

json GapMeasurementToJson(const GapMeasurement& m) {
  return json{{"seed", m.seed},         {"mean_mw", m.mean_mw},
              {"mean_noswap", m.mean_noswap}, {"se_mw", m.se_mw},
              {"se_noswap", m.se_noswap},     {"gap", m.gap}};
}

GapMeasurement GapMeasurementFromJson(const json& doc) {
  try {
    GapMeasurement m;
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.mean_mw = doc.at("mean_mw").get<double>();
    m.mean_noswap = doc.at("mean_noswap").get<double>();
    m.se_mw = doc.at("se_mw").get<double>();
    m.se_noswap = doc.at("se_noswap").get<double>();
    m.gap = doc.at("gap").get<double>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed gap measurement: ") + e.what());
  }
}

json GapReportToJson(const GapReport& report) {
  json doc;
  doc["game_id"] = report.game_id;
  doc["game_seed"] = report.game_seed;
  doc["size"] = report.size;
  doc["eps_mw"] = report.eps_mw;
  doc["eps_swap"] = report.eps_swap;
  doc["simulations"] = report.simulations;
  doc["turns"] = report.turns;
  // Screening numbers at the top level.
  doc["seed"] = report.screen.seed;
  doc["mean_mw"] = report.screen.mean_mw;
  doc["mean_noswap"] = report.screen.mean_noswap;
  doc["se_mw"] = report.screen.se_mw;
  doc["se_noswap"] = report.screen.se_noswap;
  doc["gap"] = report.screen.gap;
  doc["screen_flagged"] = report.screen_flagged;
  doc["confirmation"] = report.confirmation
                            ? GapMeasurementToJson(*report.confirmation)
                            : json(nullptr);
  doc["flagged"] = report.flagged;
  doc["schema_version"] = kSchemaVersion;
  return doc;
}

}  // namespace regret_arena
