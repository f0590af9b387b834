#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgnav/benchmark.hpp"
#include "sgnav/decision.hpp"
#include "sgnav/knowledge.hpp"
#include "sgnav/runlog.hpp"
#include "sgnav/simulator.hpp"

namespace sgnav {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// Schema tags embedded in every output file.
inline constexpr const char* kSchemaEnv = "sgnav.env.v1";
inline constexpr const char* kSchemaGraph = "sgnav.graph.v1";
inline constexpr const char* kSchemaKb = "sgnav.kb.v1";
inline constexpr const char* kSchemaRunLog = "sgnav.runlog.v1";
inline constexpr const char* kSchemaSummary = "sgnav.summary.v1";
inline constexpr const char* kSchemaParsed = "sgnav.parsed.v1";
inline constexpr const char* kSchemaMetrics = "sgnav.metrics.v1";
inline constexpr const char* kSchemaClusters = "sgnav.clusters.v1";
inline constexpr const char* kSchemaManifest = "sgnav.manifest.v1";

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Shortest round-trippable decimal form (%.17g trimmed).
std::string fmt_double(double v);

// FNV-1a 64-bit over raw bytes, as a fixed-width hex string.
std::string fnv1a64_hex(const std::string& bytes);

Json env_to_json(const Environment& env);
Environment env_from_json(const Json& j);
Environment load_environment(const std::filesystem::path& path);
void save_environment(const Environment& env, const std::filesystem::path& path);

Json graph_to_json(const SubgoalGraph& graph);
std::string graph_to_dot(const SubgoalGraph& graph);

Json kb_to_json(const KnowledgeBase& kb);
KnowledgeBase kb_from_json(const Json& j);
KnowledgeBase load_knowledge(const std::filesystem::path& path);

std::string runlog_to_csv(const RunLog& log);
RunLog runlog_from_csv(const std::string& csv);
RunLog load_runlog(const std::filesystem::path& path);

Json record_to_json(const DecisionRecord& rec);
DecisionRecord record_from_json(const Json& j);

// Experiment summary: flight times, outcomes, EM series, decision records,
// and the model accuracy under the given scoring parameters.
Json summary_to_json(const ExperimentResult& result, const DecisionParams& score_params,
                     std::uint64_t seed);

Json parsed_runs_to_json(const std::vector<ParsedRun>& parsed);

struct ManifestInput {
  std::filesystem::path env_file;
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::vector<std::string> outputs;
};

// Written alongside every output set; carries the env content hash, the tool
// version, the config snapshot, and the produced file list.
void write_manifest(const std::filesystem::path& out_dir, const ManifestInput& input);

}  // namespace sgnav
