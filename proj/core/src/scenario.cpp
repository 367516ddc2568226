// Copyright 2026 The AAO Games Authors
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

#include "aao/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aao/team.hpp"
#include "json.hpp"

namespace aao {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string Child(const std::string& path, const std::string& key) {
  return path + "." + key;
}

std::string Child(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

void RequireObject(const Json& j, const std::string& path,
                   const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ScenarioError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ScenarioError(Child(path, key), "unknown key");
    }
  }
}

double Real(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ScenarioError(path, "expected a finite number");
  return v;
}

std::size_t Count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) {
    throw ScenarioError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string String(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ScenarioError(path, "expected a string");
  return j.get<std::string>();
}

Vector ReadVector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ScenarioError(path, "expected an array of numbers");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(Real(j[i], Child(path, i)));
  }
  return v;
}

Matrix ReadMatrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw ScenarioError(path, "expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Vector> data;
  for (std::size_t r = 0; r < rows; ++r) {
    data.push_back(ReadVector(j[r], Child(path, r)));
    if (r == 0) cols = data.back().size();
    if (data.back().size() != cols || cols == 0) {
      throw ScenarioError(Child(path, r), "rows must have equal, non-zero length");
    }
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = data[r][c];
  }
  return m;
}

SymmetricMatrix ReadSymmetric(const Json& j, const std::string& path) {
  const Matrix m = ReadMatrix(j, path);
  if (!m.is_square()) throw ScenarioError(path, "expected a square matrix");
  try {
    return SymmetricMatrix(m);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(path, e.what());
  }
}

OpponentWeighting ReadWeighting(const Json& j, const std::string& path) {
  try {
    return ParseOpponentWeighting(String(j, path));
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(path, e.what());
  }
}

PlayerWeights ReadWeights(const Json& j, const std::string& path) {
  RequireObject(j, path, {"sf", "q", "r"});
  PlayerWeights w;
  if (j.contains("sf")) w.sf_scale = Real(j["sf"], Child(path, "sf"));
  if (j.contains("q")) w.q_scale = Real(j["q"], Child(path, "q"));
  if (j.contains("r")) w.r_scale = Real(j["r"], Child(path, "r"));
  return w;
}

ExplicitGame ReadExplicit(const Json& j, const std::string& path) {
  RequireObject(j, path,
                {"A", "players", "t0", "tf", "x0", "opponent_weighting"});
  for (const char* key : {"A", "players", "x0"}) {
    if (!j.contains(key)) throw ScenarioError(Child(path, key), "missing");
  }
  ExplicitGame e;
  e.game.A = ReadMatrix(j["A"], Child(path, "A"));
  const Json& players = j["players"];
  const std::string ppath = Child(path, "players");
  if (!players.is_array() || players.empty()) {
    throw ScenarioError(ppath, "expected a non-empty array");
  }
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string pp = Child(ppath, i);
    RequireObject(players[i], pp, {"B", "Q", "R", "S_f"});
    for (const char* key : {"B", "Q", "R", "S_f"}) {
      if (!players[i].contains(key)) {
        throw ScenarioError(Child(pp, key), "missing");
      }
    }
    e.game.players.push_back(
        PlayerData{ReadMatrix(players[i]["B"], Child(pp, "B")),
                   ReadSymmetric(players[i]["Q"], Child(pp, "Q")),
                   ReadSymmetric(players[i]["R"], Child(pp, "R")),
                   ReadSymmetric(players[i]["S_f"], Child(pp, "S_f"))});
  }
  if (j.contains("t0")) e.game.t0 = Real(j["t0"], Child(path, "t0"));
  if (j.contains("tf")) e.game.tf = Real(j["tf"], Child(path, "tf"));
  if (j.contains("opponent_weighting")) {
    e.game.opponent_weighting =
        ReadWeighting(j["opponent_weighting"], Child(path, "opponent_weighting"));
  }
  e.x0 = ReadVector(j["x0"], Child(path, "x0"));
  CheckDimensions(e.game);
  if (e.x0.size() != e.game.n()) {
    throw std::invalid_argument("dimension mismatch: x0 has " +
                                std::to_string(e.x0.size()) +
                                " entries, expected " +
                                std::to_string(e.game.n()));
  }
  return e;
}

PursuitParams ReadPursuit(const Json& j, const std::string& path) {
  RequireObject(j, path,
                {"num_pursuers", "evader", "pursuers", "t0", "tf", "x0",
                 "evader_start", "opponent_weighting"});
  PursuitParams p;
  if (j.contains("num_pursuers")) {
    p.num_pursuers = Count(j["num_pursuers"], Child(path, "num_pursuers"));
  }
  if (j.contains("evader")) p.evader = ReadWeights(j["evader"], Child(path, "evader"));
  if (j.contains("pursuers")) {
    const std::string pp = Child(path, "pursuers");
    if (!j["pursuers"].is_array()) throw ScenarioError(pp, "expected an array");
    p.pursuers.clear();
    for (std::size_t i = 0; i < j["pursuers"].size(); ++i) {
      p.pursuers.push_back(ReadWeights(j["pursuers"][i], Child(pp, i)));
    }
  }
  if (j.contains("t0")) p.t0 = Real(j["t0"], Child(path, "t0"));
  if (j.contains("tf")) p.tf = Real(j["tf"], Child(path, "tf"));
  if (j.contains("x0")) p.x0 = ReadVector(j["x0"], Child(path, "x0"));
  if (j.contains("evader_start")) {
    p.evader_start = ReadVector(j["evader_start"], Child(path, "evader_start"));
  }
  if (j.contains("opponent_weighting")) {
    p.opponent_weighting =
        ReadWeighting(j["opponent_weighting"], Child(path, "opponent_weighting"));
  }
  return p;
}

RunConfig ReadRun(const Json& j, const std::string& path) {
  RequireObject(j, path,
                {"mode", "alphas", "dt", "bound_q", "capture_radius",
                 "output_dir", "rq_sample_stride", "solution_stride"});
  RunConfig r;
  if (j.contains("mode")) {
    const std::string mpath = Child(path, "mode");
    try {
      r.mode = ParseMode(String(j["mode"], mpath));
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(mpath, e.what());
    }
  }
  if (j.contains("alphas")) r.alphas = ReadVector(j["alphas"], Child(path, "alphas"));
  if (j.contains("dt")) r.dt = Real(j["dt"], Child(path, "dt"));
  if (j.contains("bound_q") && !j["bound_q"].is_null()) {
    r.bound_q = ReadSymmetric(j["bound_q"], Child(path, "bound_q"));
  }
  if (j.contains("capture_radius")) {
    r.capture_radius = Real(j["capture_radius"], Child(path, "capture_radius"));
  }
  if (j.contains("output_dir")) {
    r.output_dir = String(j["output_dir"], Child(path, "output_dir"));
  }
  if (j.contains("rq_sample_stride")) {
    r.rq_sample_stride =
        Count(j["rq_sample_stride"], Child(path, "rq_sample_stride"));
  }
  if (j.contains("solution_stride")) {
    r.solution_stride =
        Count(j["solution_stride"], Child(path, "solution_stride"));
  }
  return r;
}

OrderedJson WriteMatrix(const Matrix& m) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

OrderedJson WriteWeights(const PlayerWeights& w) {
  OrderedJson o;
  o["sf"] = w.sf_scale;
  o["q"] = w.q_scale;
  o["r"] = w.r_scale;
  return o;
}

}  // namespace

std::string ToString(Mode m) { return m == Mode::kNash ? "nash" : "team"; }

Mode ParseMode(const std::string& s) {
  if (s == "nash") return Mode::kNash;
  if (s == "team") return Mode::kTeam;
  throw std::invalid_argument("unknown mode '" + s + "' (expected nash|team)");
}

GameDefinition Scenario::Game() const {
  if (explicit_game) return explicit_game->game;
  PursuitParams p = *pursuit;
  p.capture_radius = run.capture_radius;
  return BuildPursuitExample(p);
}

const Vector& Scenario::InitialState() const {
  return explicit_game ? explicit_game->x0 : pursuit->x0;
}

double Scenario::t0() const {
  return explicit_game ? explicit_game->game.t0 : pursuit->t0;
}

double Scenario::tf() const {
  return explicit_game ? explicit_game->game.tf : pursuit->tf;
}

void Scenario::set_tf(double tf) {
  if (explicit_game) {
    explicit_game->game.tf = tf;
  } else {
    pursuit->tf = tf;
  }
}

SymmetricMatrix Scenario::BoundQ() const {
  const std::size_t n = InitialState().size();
  return run.bound_q ? *run.bound_q : SymmetricMatrix::Zero(n);
}

void CheckRunConfig(const Scenario& s) {
  const RunConfig& r = s.run;
  if (!(r.dt > 0.0)) throw ScenarioError("$.run.dt", "dt must be positive");
  if (!(r.capture_radius > 0.0)) {
    throw ScenarioError("$.run.capture_radius", "capture radius must be positive");
  }
  if (r.rq_sample_stride == 0) {
    throw ScenarioError("$.run.rq_sample_stride", "must be at least 1");
  }
  if (r.solution_stride == 0) {
    throw ScenarioError("$.run.solution_stride", "must be at least 1");
  }
  if (!(s.tf() >= s.t0())) throw ScenarioError("$.tf", "tf must not precede t0");
  const GameDefinition game = s.Game();
  if (r.bound_q && r.bound_q->dim() != game.n()) {
    throw std::invalid_argument("dimension mismatch: bound_q is " +
                                std::to_string(r.bound_q->dim()) + "x" +
                                std::to_string(r.bound_q->dim()) +
                                ", expected " + std::to_string(game.n()) +
                                "x" + std::to_string(game.n()));
  }
  if (r.mode == Mode::kTeam) {
    if (game.num_players() < 2) {
      throw ScenarioError("$.run.mode", "team mode needs at least two players");
    }
    if (!r.alphas.empty()) {
      try {
        CheckTeamWeights({r.alphas}, game.num_players() - 1);
      } catch (const std::invalid_argument& e) {
        throw ScenarioError("$.run.alphas", e.what());
      }
    }
  }
}

Scenario ParseScenario(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioError("$", std::string("malformed document: ") + e.what());
  }
  RequireObject(root, "$", {"schema_version", "explicit", "pursuit", "run"});
  if (!root.contains("schema_version")) {
    throw ScenarioError("$.schema_version", "missing");
  }
  if (!root["schema_version"].is_number_integer() ||
      root["schema_version"].get<int>() != kSchemaVersion) {
    throw ScenarioError("$.schema_version", "unsupported version (expected 1)");
  }
  const bool has_explicit = root.contains("explicit");
  const bool has_pursuit = root.contains("pursuit");
  if (has_explicit == has_pursuit) {
    throw ScenarioError("$", "exactly one of 'explicit' or 'pursuit' is required");
  }
  Scenario s;
  if (has_explicit) {
    s.explicit_game = ReadExplicit(root["explicit"], "$.explicit");
  } else {
    s.pursuit = ReadPursuit(root["pursuit"], "$.pursuit");
  }
  if (root.contains("run")) s.run = ReadRun(root["run"], "$.run");
  if (s.pursuit) {
    PursuitParams p = *s.pursuit;
    p.capture_radius = s.run.capture_radius > 0.0 ? s.run.capture_radius : 1.0;
    try {
      CheckPursuitParams(p);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("$.pursuit", e.what());
    }
  }
  CheckRunConfig(s);
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

std::string EmitScenario(const Scenario& s) {
  OrderedJson root;
  root["schema_version"] = kSchemaVersion;
  if (s.explicit_game) {
    const GameDefinition& g = s.explicit_game->game;
    OrderedJson e;
    e["A"] = WriteMatrix(g.A);
    OrderedJson players = OrderedJson::array();
    for (const auto& p : g.players) {
      OrderedJson o;
      o["B"] = WriteMatrix(p.B);
      o["Q"] = WriteMatrix(p.Q);
      o["R"] = WriteMatrix(p.R);
      o["S_f"] = WriteMatrix(p.S_f);
      players.push_back(std::move(o));
    }
    e["players"] = std::move(players);
    e["t0"] = g.t0;
    e["tf"] = g.tf;
    e["x0"] = s.explicit_game->x0;
    e["opponent_weighting"] = ToString(g.opponent_weighting);
    root["explicit"] = std::move(e);
  } else {
    const PursuitParams& p = *s.pursuit;
    OrderedJson o;
    o["num_pursuers"] = p.num_pursuers;
    o["evader"] = WriteWeights(p.evader);
    OrderedJson list = OrderedJson::array();
    for (const auto& w : p.pursuers) list.push_back(WriteWeights(w));
    o["pursuers"] = std::move(list);
    o["t0"] = p.t0;
    o["tf"] = p.tf;
    o["x0"] = p.x0;
    o["evader_start"] = p.evader_start;
    o["opponent_weighting"] = ToString(p.opponent_weighting);
    root["pursuit"] = std::move(o);
  }
  const RunConfig& r = s.run;
  OrderedJson run;
  run["mode"] = ToString(r.mode);
  run["alphas"] = r.alphas;
  run["dt"] = r.dt;
  if (r.bound_q) run["bound_q"] = WriteMatrix(*r.bound_q);
  run["capture_radius"] = r.capture_radius;
  run["output_dir"] = r.output_dir;
  run["rq_sample_stride"] = r.rq_sample_stride;
  run["solution_stride"] = r.solution_stride;
  root["run"] = std::move(run);
  return root.dump(2) + "\n";
}

}  // namespace aao
