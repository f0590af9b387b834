#include "sgnav/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sgnav {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

std::string fmt_double(double v) {
  // Shortest representation that parses back to the same double.
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

Json env_to_json(const Environment& env) {
  Json j;
  j["schema"] = kSchemaEnv;
  j["bounds"] = {{"xmin", env.bounds.xmin},
                 {"ymin", env.bounds.ymin},
                 {"xmax", env.bounds.xmax},
                 {"ymax", env.bounds.ymax}};
  j["start"] = {{"x", env.start.x}, {"y", env.start.y}, {"psi", env.start.psi}};
  j["goal"] = {{"x", env.goal_position.x}, {"y", env.goal_position.y}};
  Json obstacles = Json::array();
  for (const Polygon& poly : env.obstacles) {
    Json ring = Json::array();
    for (const Vec2& v : poly) ring.push_back({v.x, v.y});
    obstacles.push_back(ring);
  }
  j["obstacles"] = obstacles;
  return j;
}

Environment env_from_json(const Json& j) {
  Environment env;
  const Json& b = j.at("bounds");
  env.bounds = {b.at("xmin").get<double>(), b.at("ymin").get<double>(),
                b.at("xmax").get<double>(), b.at("ymax").get<double>()};
  const Json& s = j.at("start");
  env.start = {s.at("x").get<double>(), s.at("y").get<double>(),
               s.at("psi").get<double>()};
  const Json& g = j.at("goal");
  env.goal_position = {g.at("x").get<double>(), g.at("y").get<double>()};
  for (const Json& ring : j.at("obstacles")) {
    Polygon poly;
    for (const Json& v : ring) {
      poly.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    if (!poly.empty() && !is_ccw(poly)) {
      std::reverse(poly.begin(), poly.end());
    }
    env.obstacles.push_back(std::move(poly));
  }
  validate(env);
  return env;
}

Environment load_environment(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("invalid environment JSON in " + path.string() + ": " + e.what());
  }
  return env_from_json(j);
}

void save_environment(const Environment& env, const fs::path& path) {
  write_file(path, env_to_json(env).dump(2) + "\n");
}

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (double v : row) {
      if (v < kInf) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);  // infinity
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

Json graph_to_json(const SubgoalGraph& graph) {
  Json j;
  j["schema"] = kSchemaGraph;
  j["mode"] = graph.mode == CostMode::Dubins ? "dubins" : "point_mass";
  Json nodes = Json::array();
  for (int i = 0; i < graph.nodes.count(); ++i) {
    Json n;
    n["id"] = i;
    n["x"] = graph.nodes.positions[i].x;
    n["y"] = graph.nodes.positions[i].y;
    if (i > 0) {
      n["polygon"] = graph.nodes.meta[i].polygon;
      n["vertex"] = graph.nodes.meta[i].vertex;
      n["wall_dir_a"] = graph.nodes.meta[i].wall_dir_a;
      n["wall_dir_b"] = graph.nodes.meta[i].wall_dir_b;
    }
    nodes.push_back(std::move(n));
  }
  j["nodes"] = nodes;
  j["dc"] = matrix_to_json(graph.dc);
  Json ctg = Json::array();
  for (double v : graph.ctg) {
    if (v < kInf) {
      ctg.push_back(v);
    } else {
      ctg.push_back(nullptr);
    }
  }
  j["ctg"] = ctg;
  j["q"] = graph.q;
  if (graph.headings) j["headings"] = matrix_to_json(*graph.headings);
  j["unreachable"] = graph.unreachable;
  return j;
}

std::string graph_to_dot(const SubgoalGraph& graph) {
  std::ostringstream out;
  out << "digraph subgoals {\n  rankdir=LR;\n";
  for (int i = 0; i < graph.nodes.count(); ++i) {
    out << "  n" << i << " [label=\"";
    if (i == 0) {
      out << "goal";
    } else {
      out << i;
    }
    if (graph.ctg[i] < kInf) {
      out << "\\nCTG=" << fmt_double(graph.ctg[i]);
    } else {
      out << "\\nCTG=inf";
    }
    out << "\"";
    if (i == 0) out << " shape=doublecircle";
    out << "];\n";
  }
  for (int k = 0; k < graph.nodes.count(); ++k) {
    for (int i = 0; i < graph.nodes.count(); ++i) {
      if (graph.q[k][i] == 1) {
        out << "  n" << k << " -> n" << i << " [label=\"" << fmt_double(graph.dc[k][i])
            << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

Json kb_to_json(const KnowledgeBase& kb) {
  Json j;
  j["schema"] = kSchemaKb;
  j["node_count"] = kb.node_count();
  j["run_count"] = kb.run_count();
  Json ctg = Json::array();
  for (int k = 0; k < kb.node_count(); ++k) ctg.push_back(kb.ctg_samples(k));
  j["ctg_lists"] = ctg;
  Json edges = Json::array();
  for (int k = 0; k < kb.node_count(); ++k) {
    for (int i = 0; i < kb.node_count(); ++i) {
      if (kb.q_count(k, i) == 0) continue;
      Json e;
      e["from"] = k;
      e["to"] = i;
      e["samples"] = kb.dc_samples(k, i);
      edges.push_back(std::move(e));
    }
  }
  j["edges"] = edges;
  return j;
}

KnowledgeBase kb_from_json(const Json& j) {
  if (j.value("schema", "") != kSchemaKb) {
    throw IoError("not a knowledge-base file (schema mismatch)");
  }
  const int n = j.at("node_count").get<int>();
  KnowledgeBase kb(n);
  const Json& ctg = j.at("ctg_lists");
  for (int k = 0; k < n; ++k) {
    for (const Json& v : ctg.at(k)) kb.add_ctg_sample(k, v.get<double>());
  }
  for (const Json& e : j.at("edges")) {
    const int k = e.at("from").get<int>();
    const int i = e.at("to").get<int>();
    for (const Json& v : e.at("samples")) kb.add_edge_sample(k, i, v.get<double>());
  }
  kb.set_run_count(j.at("run_count").get<int>());
  return kb;
}

KnowledgeBase load_knowledge(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("invalid knowledge JSON in " + path.string() + ": " + e.what());
  }
  return kb_from_json(j);
}

std::string runlog_to_csv(const RunLog& log) {
  std::ostringstream out;
  out << "# schema: " << kSchemaRunLog << "\n";
  out << "# run: " << log.run_id << "\n";
  out << "# dt: " << fmt_double(log.dt) << "\n";
  out << "# outcome: " << to_string(log.outcome) << "\n";
  if (log.flight_time) {
    out << "# flight_time: " << fmt_double(*log.flight_time) << "\n";
  }
  out << "t,x,y,psi,v,u_lon,u_lat,subgoal\n";
  for (const LogSample& s : log.samples) {
    out << fmt_double(s.t) << ',' << fmt_double(s.state.x) << ',' << fmt_double(s.state.y)
        << ',' << fmt_double(s.state.psi) << ',' << fmt_double(s.state.v) << ','
        << fmt_double(s.u.u_lon) << ',' << fmt_double(s.u.u_lat) << ','
        << s.active_subgoal << "\n";
  }
  return out.str();
}

RunLog runlog_from_csv(const std::string& csv) {
  RunLog log;
  std::istringstream in(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (key == "run") log.run_id = std::stoi(value);
      if (key == "dt") log.dt = std::strtod(value.c_str(), nullptr);
      if (key == "flight_time") log.flight_time = std::strtod(value.c_str(), nullptr);
      if (key == "outcome") {
        const auto outcome = run_outcome_from_string(value);
        if (!outcome) throw IoError("unknown outcome: " + value);
        log.outcome = *outcome;
      }
      continue;
    }
    if (!header_seen) {
      if (line != "t,x,y,psi,v,u_lon,u_lat,subgoal") {
        throw IoError("unexpected run-log CSV column header");
      }
      header_seen = true;
      continue;
    }
    LogSample s;
    char* p = line.data();
    char* end = nullptr;
    auto next_field = [&](double& out_val) {
      out_val = std::strtod(p, &end);
      if (end == p) throw IoError("malformed run-log row: " + line);
      p = (*end == ',') ? end + 1 : end;
    };
    double subgoal = 0.0;
    next_field(s.t);
    next_field(s.state.x);
    next_field(s.state.y);
    next_field(s.state.psi);
    next_field(s.state.v);
    next_field(s.u.u_lon);
    next_field(s.u.u_lat);
    next_field(subgoal);
    s.active_subgoal = static_cast<int>(subgoal);
    log.samples.push_back(s);
  }
  if (!header_seen) throw IoError("run-log CSV has no column header");
  return log;
}

RunLog load_runlog(const fs::path& path) { return runlog_from_csv(read_file(path)); }

Json record_to_json(const DecisionRecord& rec) {
  Json j;
  j["run"] = rec.run_id;
  j["node"] = rec.node;
  j["case"] = to_string(rec.decision_case);
  j["chosen"] = rec.chosen;
  j["predicted"] = rec.predicted;
  j["vis"] = rec.vis;
  return j;
}

DecisionRecord record_from_json(const Json& j) {
  DecisionRecord rec;
  rec.run_id = j.at("run").get<int>();
  rec.node = j.at("node").get<int>();
  const std::string c = j.at("case").get<std::string>();
  rec.decision_case = c == "A" ? DecisionCase::A : (c == "B" ? DecisionCase::B : DecisionCase::C);
  rec.chosen = j.at("chosen").get<int>();
  rec.predicted = j.at("predicted").get<int>();
  rec.vis = j.at("vis").get<std::vector<int>>();
  return rec;
}

Json summary_to_json(const ExperimentResult& result, const DecisionParams& score_params,
                     std::uint64_t seed) {
  Json j;
  j["schema"] = kSchemaSummary;
  j["seed"] = seed;
  j["runs"] = result.logs.size();
  Json ft = Json::array();
  Json outcomes = Json::array();
  for (std::size_t r = 0; r < result.logs.size(); ++r) {
    if (result.flight_times[r]) {
      ft.push_back(*result.flight_times[r]);
    } else {
      ft.push_back(nullptr);
    }
    outcomes.push_back(to_string(result.logs[r].outcome));
  }
  j["flight_times"] = ft;
  j["outcomes"] = outcomes;
  j["em_per_run"] = result.em_per_run;
  Json recs = Json::array();
  for (const DecisionRecord& rec : result.records) recs.push_back(record_to_json(rec));
  j["decision_records"] = recs;
  const auto accuracy = score_model_accuracy(result.records, result.kb_history, score_params);
  if (accuracy) {
    j["model_accuracy"] = *accuracy;
  } else {
    j["model_accuracy"] = nullptr;
  }
  return j;
}

Json parsed_runs_to_json(const std::vector<ParsedRun>& parsed) {
  Json j;
  j["schema"] = kSchemaParsed;
  Json runs = Json::array();
  for (const ParsedRun& p : parsed) {
    Json r;
    r["run"] = p.run_id;
    r["completed"] = p.completed;
    if (p.t0) {
      r["t0"] = *p.t0;
    } else {
      r["t0"] = nullptr;
    }
    Json seq = Json::array();
    for (const NodeVisit& v : p.sequence) {
      seq.push_back({{"node", v.node}, {"t", v.t}, {"min_dist", v.min_dist}});
    }
    r["sequence"] = seq;
    runs.push_back(std::move(r));
  }
  j["runs"] = runs;
  return j;
}

void write_manifest(const fs::path& out_dir, const ManifestInput& input) {
  Json j;
  j["schema"] = kSchemaManifest;
  j["tool_version"] = kToolVersion;
  j["seed"] = input.seed;
  j["env_file"] = input.env_file.string();
  j["env_hash"] = fnv1a64_hex(read_file(input.env_file));
  j["config"] = input.config;
  j["outputs"] = input.outputs;
  write_file(out_dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace sgnav
