// sgnav: subgoal-graph guidance toolkit.
//
// Subcommands: bench (optimal benchmark graph), simulate (multi-run learning
// experiments), analyze (logs -> parsed runs, knowledge, metrics), cluster
// (corner-frame guidance primitives), decide (decision model queries).

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <thread>

#include <CLI11.hpp>

#include "sgnav/io.hpp"

namespace fs = std::filesystem;
using namespace sgnav;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitInfeasible = 4;

std::vector<fs::path> gather_logs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& raw : inputs) {
    const fs::path p(raw);
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.path().extension() == ".csv") files.push_back(entry.path());
      }
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string run_file_name(int run) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "run%03d.csv", run);
  return buf;
}

std::string kb_file_name(int run) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "kb_run%03d.json", run);
  return buf;
}

struct SimulateArgs {
  std::string env_file;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int runs = 20;
  int experiments = 1;
  bool parallel = false;
  double gamma = 1.0;
  int dmax = 0;
  std::string aggregator = "min";
  double fov_deg = 60.0;
  double p_explore = 0.5;
  double decay = 0.85;
  double optimism = 1.0;
  double arrival_radius = 1.0;
  double goal_radius = 1.5;
  double max_duration = 120.0;
};

int run_one_experiment(const Environment& env, const NodeSet& nodes,
                       const SimulateArgs& args, const AgentConfig& cfg,
                       std::uint64_t seed, const fs::path& out) {
  AgentConfig seeded = cfg;
  seeded.seed = seed;
  const VehicleParams vehicle;
  const ExperimentResult result = run_experiment(env, nodes, args.runs, seeded, vehicle);

  std::vector<std::string> outputs;
  for (std::size_t r = 0; r < result.logs.size(); ++r) {
    const std::string name = run_file_name(static_cast<int>(r) + 1);
    write_file(out / name, runlog_to_csv(result.logs[r]));
    outputs.push_back(name);
    const std::string kb_name = kb_file_name(static_cast<int>(r) + 1);
    write_file(out / kb_name, kb_to_json(result.kb_history[r + 1]).dump(2) + "\n");
    outputs.push_back(kb_name);
  }
  write_file(out / "summary.json",
             summary_to_json(result, DecisionParams{}, seed).dump(2) + "\n");
  outputs.push_back("summary.json");

  Json config;
  config["runs"] = args.runs;
  config["gamma"] = args.gamma;
  config["dmax"] = args.dmax;
  config["aggregator"] = args.aggregator;
  config["fov_deg"] = args.fov_deg;
  config["p_explore"] = args.p_explore;
  config["decay"] = args.decay;
  config["optimism"] = args.optimism;
  config["arrival_radius"] = args.arrival_radius;
  config["goal_radius"] = args.goal_radius;
  config["max_duration"] = args.max_duration;
  std::sort(outputs.begin(), outputs.end());
  write_manifest(out, {fs::path(args.env_file), seed, config, outputs});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgoal-graph guidance toolkit"};
  app.require_subcommand(1);

  // ---- bench ----
  std::string bench_env, bench_out = "out", bench_mode = "dubins";
  double bench_radius = 1.0;
  auto* bench = app.add_subcommand("bench", "build the optimal benchmark subgoal graph");
  bench->add_option("--env", bench_env, "environment JSON")->required();
  bench->add_option("--mode", bench_mode, "point_mass | dubins")
      ->check(CLI::IsMember({"point_mass", "dubins"}));
  bench->add_option("--radius", bench_radius, "Dubins turning radius (m)");
  bench->add_option("--out", bench_out, "output directory");

  // ---- simulate ----
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run learning experiments");
  simulate->set_config("--config", "", "key=value config file; flags override");
  simulate->add_option("--env", sim.env_file, "environment JSON")->required();
  simulate->add_option("--seed", sim.seed, "RNG seed (pass explicitly for reproducibility)");
  simulate->add_option("--runs", sim.runs, "trials per experiment")->check(CLI::PositiveNumber);
  simulate->add_option("--experiments", sim.experiments, "experiment count; seeds are seed..seed+n-1")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--parallel", sim.parallel, "shard experiments across threads");
  simulate->add_option("--gamma", sim.gamma, "decision discount factor");
  simulate->add_option("--dmax", sim.dmax, "decision depth limit; <= 0 is unlimited");
  simulate->add_option("--aggregator", sim.aggregator, "min | mean | median | max");
  simulate->add_option("--fov", sim.fov_deg, "field of view (degrees)");
  simulate->add_option("--p-explore", sim.p_explore, "initial exploration probability");
  simulate->add_option("--decay", sim.decay, "per-run exploration decay");
  simulate->add_option("--optimism", sim.optimism, "weight on cost-to-go estimates");
  simulate->add_option("--arrival-radius", sim.arrival_radius, "subgoal switch radius (m)");
  simulate->add_option("--goal-radius", sim.goal_radius, "goal arrival radius (m)");
  simulate->add_option("--max-duration", sim.max_duration, "trial timeout (s)");
  simulate->add_option("--out", sim.out_dir, "output directory");

  // ---- analyze ----
  std::string ana_env, ana_out = "out";
  std::vector<std::string> ana_logs;
  double ana_rthresh = kDefaultNodeRadius, ana_tw = 1.0, ana_fov_deg = 60.0;
  double ana_window = 2.26;
  auto* analyze = app.add_subcommand("analyze", "parse logs into knowledge and metrics");
  analyze->add_option("--env", ana_env, "environment JSON")->required();
  analyze->add_option("--logs", ana_logs, "run-log CSV files or directories")->required();
  analyze->add_option("--rthresh", ana_rthresh, "node assignment radius (m)");
  analyze->add_option("--tw", ana_tw, "VIS time window (s)");
  analyze->add_option("--fov", ana_fov_deg, "field of view (degrees)");
  analyze->add_option("--window", ana_window, "near-corner time window T (s)");
  analyze->add_option("--out", ana_out, "output directory");

  // ---- cluster ----
  std::string clu_env, clu_out = "out", clu_weight = "verbatim";
  std::vector<std::string> clu_logs;
  int clu_n = 5;
  double clu_T = 2.26, clu_rthresh = kDefaultNodeRadius;
  auto* cluster = app.add_subcommand("cluster", "extract guidance primitives");
  cluster->add_option("--env", clu_env, "environment JSON")->required();
  cluster->add_option("--logs", clu_logs, "run-log CSV files or directories")->required();
  cluster->add_option("--clusters", clu_n, "number of clusters")->check(CLI::PositiveNumber);
  cluster->add_option("-T,--window", clu_T, "corner-frame half window (s)");
  cluster->add_option("--rthresh", clu_rthresh, "node assignment radius (m)");
  cluster->add_option("--weight", clu_weight, "verbatim | corner")
      ->check(CLI::IsMember({"verbatim", "corner"}));
  cluster->add_option("--out", clu_out, "output directory");

  // ---- decide ----
  std::string dec_kb, dec_out;
  int dec_node = -1, dec_dmax = 0;
  double dec_gamma = 1.0;
  std::string dec_aggregator = "min";
  auto* decide = app.add_subcommand("decide", "query the decision model at a node");
  decide->add_option("--kb", dec_kb, "knowledge-base JSON")->required();
  decide->add_option("--node", dec_node, "current node index")->required();
  decide->add_option("--gamma", dec_gamma, "discount factor");
  decide->add_option("--dmax", dec_dmax, "depth limit; <= 0 is unlimited");
  decide->add_option("--aggregator", dec_aggregator, "min | mean | median | max");
  decide->add_option("--out", dec_out, "optional output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bench->parsed()) {
      const Environment env = load_environment(bench_env);
      const NodeSet nodes = extract_nodes(env);
      BenchmarkOptions opts;
      opts.mode = bench_mode == "dubins" ? CostMode::Dubins : CostMode::PointMass;
      opts.dubins_radius = bench_radius;
      const VehicleParams vehicle;
      const SubgoalGraph graph = build_subgoal_graph(env, nodes, opts, vehicle);
      const fs::path out(bench_out);
      write_file(out / "graph.json", graph_to_json(graph).dump(2) + "\n");
      write_file(out / "graph.dot", graph_to_dot(graph));
      Json config;
      config["mode"] = bench_mode;
      config["radius"] = bench_radius;
      write_manifest(out, {fs::path(bench_env), 0, config, {"graph.dot", "graph.json"}});
      if (!graph.unreachable.empty()) {
        std::cerr << "warning: " << graph.unreachable.size()
                  << " node(s) cannot reach the goal (CTG = inf)\n";
      }
      try {
        optimal_sequence(env, graph, env.start.position(), vehicle);
      } catch (const std::runtime_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
      }
      return kExitOk;
    }

    if (simulate->parsed()) {
      const Environment env = load_environment(sim.env_file);
      const NodeSet nodes = extract_nodes(env);
      AgentConfig cfg;
      cfg.decision.gamma = sim.gamma;
      cfg.decision.d_max = sim.dmax;
      const auto agg = aggregator_from_string(sim.aggregator);
      if (!agg) {
        std::cerr << "unknown aggregator: " << sim.aggregator << "\n";
        return kExitUsage;
      }
      cfg.decision.f = *agg;
      cfg.fov = sim.fov_deg * std::numbers::pi / 180.0;
      cfg.p_explore_init = sim.p_explore;
      cfg.p_explore_decay = sim.decay;
      cfg.optimism = sim.optimism;
      cfg.arrival_radius = sim.arrival_radius;
      cfg.goal_radius = sim.goal_radius;
      cfg.max_duration = sim.max_duration;

      if (sim.experiments == 1) {
        return run_one_experiment(env, nodes, sim, cfg, sim.seed, fs::path(sim.out_dir));
      }
      std::vector<std::thread> workers;
      for (int e = 0; e < sim.experiments; ++e) {
        const std::uint64_t seed = sim.seed + static_cast<std::uint64_t>(e);
        const fs::path out = fs::path(sim.out_dir) / ("seed_" + std::to_string(seed));
        if (sim.parallel) {
          workers.emplace_back([&, seed, out] {
            run_one_experiment(env, nodes, sim, cfg, seed, out);
          });
        } else {
          run_one_experiment(env, nodes, sim, cfg, seed, out);
        }
      }
      for (auto& w : workers) w.join();
      return kExitOk;
    }

    if (analyze->parsed()) {
      const Environment env = load_environment(ana_env);
      const NodeSet nodes = extract_nodes(env);
      const VehicleParams vehicle;
      const std::vector<fs::path> files = gather_logs(ana_logs);
      if (files.empty()) {
        std::cerr << "no run logs found\n";
        return kExitInvalidInput;
      }
      std::vector<RunLog> logs;
      for (const fs::path& f : files) logs.push_back(load_runlog(f));

      std::vector<ParsedRun> parsed;
      KnowledgeBase kb(nodes.count());
      for (const RunLog& log : logs) {
        parsed.push_back(parse_run(log, nodes, ana_rthresh));
        kb.update_from_run(parsed.back());
      }
      const BehaviorMetrics metrics =
          behavior_metrics(logs, nodes, vehicle.v_max, ana_window);

      const fs::path out(ana_out);
      write_file(out / "parsed.json", parsed_runs_to_json(parsed).dump(2) + "\n");
      write_file(out / "kb.json", kb_to_json(kb).dump(2) + "\n");
      Json mj;
      mj["schema"] = kSchemaMetrics;
      mj["high_speed_frequency"] = metrics.high_speed_frequency;
      mj["mean_r_min"] = metrics.mean_r_min;
      mj["proximity_frequency"] = metrics.proximity_frequency;
      mj["corner_passes"] = metrics.corner_passes;
      mj["em"] = kb.exploration_metric();
      mj["tw"] = ana_tw;
      mj["fov_deg"] = ana_fov_deg;
      write_file(out / "metrics.json", mj.dump(2) + "\n");
      Json config;
      config["rthresh"] = ana_rthresh;
      config["tw"] = ana_tw;
      config["fov_deg"] = ana_fov_deg;
      config["window"] = ana_window;
      write_manifest(out, {fs::path(ana_env), 0, config,
                           {"kb.json", "metrics.json", "parsed.json"}});
      return kExitOk;
    }

    if (cluster->parsed()) {
      const Environment env = load_environment(clu_env);
      const NodeSet nodes = extract_nodes(env);
      const VehicleParams vehicle;
      const std::vector<fs::path> files = gather_logs(clu_logs);
      std::vector<RunLog> logs;
      for (const fs::path& f : files) logs.push_back(load_runlog(f));
      const SegmentWeight weight =
          clu_weight == "corner" ? SegmentWeight::CornerPeaked : SegmentWeight::Verbatim;

      const std::vector<CornerSegment> segments =
          extract_corner_segments(logs, nodes, clu_T, vehicle, clu_rthresh);
      if (static_cast<int>(segments.size()) < clu_n) {
        std::cerr << "only " << segments.size() << " corner segments; need at least "
                  << clu_n << "\n";
        return kExitInfeasible;
      }
      const std::vector<PrimitiveCluster> clusters =
          cluster_segments(segments, clu_n, weight);

      std::ostringstream assign;
      assign << "# schema: " << kSchemaClusters << "\n";
      assign << "segment,run,corner,reflected,cluster\n";
      std::vector<int> seg_cluster(segments.size(), -1);
      for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (int m : clusters[c].members) seg_cluster[m] = static_cast<int>(c);
      }
      for (std::size_t s = 0; s < segments.size(); ++s) {
        assign << s << ',' << segments[s].source_run << ',' << segments[s].corner << ','
               << (segments[s].reflected ? 1 : 0) << ',' << seg_cluster[s] << "\n";
      }

      std::ostringstream means;
      means << "# schema: " << kSchemaClusters << "\n";
      means << "cluster,t_c,x,y,v,omega\n";
      for (std::size_t c = 0; c < clusters.size(); ++c) {
        const PrimitiveCluster& pc = clusters[c];
        for (std::size_t l = 0; l < pc.mean_points.size(); ++l) {
          means << c << ',' << fmt_double(segments[pc.members.front()].t_c[l]) << ','
                << fmt_double(pc.mean_points[l].x) << ',' << fmt_double(pc.mean_points[l].y)
                << ',' << fmt_double(pc.mean_v[l]) << ',' << fmt_double(pc.mean_omega[l])
                << "\n";
        }
      }

      Json cj;
      cj["schema"] = kSchemaClusters;
      cj["n_clusters"] = clu_n;
      cj["weight"] = clu_weight;
      cj["window"] = clu_T;
      Json arr = Json::array();
      for (const PrimitiveCluster& pc : clusters) {
        Json e;
        e["size"] = pc.members.size();
        e["frequency"] = pc.frequency;
        e["V"] = pc.V;
        e["U_v"] = pc.U_v;
        e["members"] = pc.members;
        arr.push_back(std::move(e));
      }
      cj["clusters"] = arr;

      const fs::path out(clu_out);
      write_file(out / "assignments.csv", assign.str());
      write_file(out / "cluster_means.csv", means.str());
      write_file(out / "clusters.json", cj.dump(2) + "\n");
      Json config;
      config["clusters"] = clu_n;
      config["window"] = clu_T;
      config["weight"] = clu_weight;
      config["rthresh"] = clu_rthresh;
      write_manifest(out, {fs::path(clu_env), 0, config,
                           {"assignments.csv", "cluster_means.csv", "clusters.json"}});
      return kExitOk;
    }

    if (decide->parsed()) {
      const KnowledgeBase kb = load_knowledge(dec_kb);
      if (dec_node < 0 || dec_node >= kb.node_count()) {
        std::cerr << "node " << dec_node << " outside [0, " << kb.node_count() - 1 << "]\n";
        return kExitInvalidInput;
      }
      DecisionParams params;
      params.gamma = dec_gamma;
      params.d_max = dec_dmax;
      const auto agg = aggregator_from_string(dec_aggregator);
      if (!agg) {
        std::cerr << "unknown aggregator: " << dec_aggregator << "\n";
        return kExitUsage;
      }
      params.f = *agg;

      const DecisionCase c = classify_case(kb, dec_node);
      std::cout << "case: " << to_string(c) << "\n";
      const std::vector<CandidateValue> table = evaluate_candidates(kb, dec_node, params);
      if (table.empty()) {
        std::cout << "predicted: none (no experienced outgoing edge)\n";
        return kExitInfeasible;
      }
      const int predicted = predict_next_node(kb, dec_node, params);
      std::cout << "predicted: " << predicted << "\n";
      std::cout << "candidates:\n";
      for (const CandidateValue& cv : table) {
        std::cout << "  node " << cv.node << ": value " << fmt_double(cv.value) << "\n";
      }
      if (!dec_out.empty()) {
        Json j;
        j["schema"] = "sgnav.decision.v1";
        j["node"] = dec_node;
        j["case"] = to_string(c);
        j["predicted"] = predicted;
        Json arr = Json::array();
        for (const CandidateValue& cv : table) {
          arr.push_back({{"node", cv.node}, {"value", cv.value}});
        }
        j["candidates"] = arr;
        write_file(fs::path(dec_out) / "decision.json", j.dump(2) + "\n");
      }
      return kExitOk;
    }
  } catch (const EnvironmentError& e) {
    std::cerr << "invalid environment: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const IoError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
