#include "sgnav/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgnav {

const char* to_string(DecisionCase c) {
  switch (c) {
    case DecisionCase::A: return "A";
    case DecisionCase::B: return "B";
    case DecisionCase::C: return "C";
  }
  return "?";
}

const char* to_string(Aggregator f) {
  switch (f) {
    case Aggregator::Min: return "min";
    case Aggregator::Mean: return "mean";
    case Aggregator::Median: return "median";
    case Aggregator::Max: return "max";
  }
  return "?";
}

std::optional<Aggregator> aggregator_from_string(const std::string& s) {
  if (s == "min") return Aggregator::Min;
  if (s == "mean") return Aggregator::Mean;
  if (s == "median") return Aggregator::Median;
  if (s == "max") return Aggregator::Max;
  return std::nullopt;
}

double aggregate(Aggregator f, const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("aggregate of an empty sample list");
  switch (f) {
    case Aggregator::Min: return *std::min_element(samples.begin(), samples.end());
    case Aggregator::Max: return *std::max_element(samples.begin(), samples.end());
    case Aggregator::Mean: {
      double acc = 0.0;
      for (double s : samples) acc += s;
      return acc / static_cast<double>(samples.size());
    }
    case Aggregator::Median: {
      std::vector<double> sorted = samples;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    }
  }
  throw std::logic_error("unknown aggregator");
}

DecisionCase classify_case(const KnowledgeBase& kb, int k) {
  const std::size_t cn = kb.connected_nodes(k).size();
  if (cn == 0) return DecisionCase::A;
  if (cn == 1) return DecisionCase::B;
  return DecisionCase::C;
}

namespace {

constexpr double kInfVal = std::numeric_limits<double>::infinity();

struct Searcher {
  const KnowledgeBase& kb;
  const DecisionParams& params;
  std::vector<double> edge_cost;       // aggregated, flattened n*n, inf = no edge
  std::vector<double> leaf_estimate;   // aggregated CTG', inf when no samples
  std::vector<char> on_path;
  std::vector<double> gamma_pow;
  double best = kInfVal;

  explicit Searcher(const KnowledgeBase& kb_in, const DecisionParams& p)
      : kb(kb_in), params(p) {
    const int n = kb.node_count();
    edge_cost.assign(static_cast<std::size_t>(n) * n, kInfVal);
    leaf_estimate.assign(n, kInfVal);
    for (int k = 0; k < n; ++k) {
      if (!kb.ctg_samples(k).empty()) leaf_estimate[k] = aggregate(params.f, kb.ctg_samples(k));
      for (int i = 0; i < n; ++i) {
        if (kb.q_count(k, i) > 0) {
          edge_cost[k * n + i] = aggregate(params.f, kb.dc_samples(k, i));
        }
      }
    }
    leaf_estimate[0] = 0.0;  // reaching the goal closes a path exactly
    on_path.assign(n, 0);
  }

  double discount(int depth) {
    while (static_cast<int>(gamma_pow.size()) <= depth) {
      gamma_pow.push_back(gamma_pow.empty() ? 1.0 : gamma_pow.back() * params.gamma);
    }
    return gamma_pow[depth];
  }

  // Best completion value from `node` at `depth` edges taken, given the value
  // accumulated so far. Accumulated costs only grow, so branches at or above
  // the incumbent are cut.
  double search(int node, int depth, double acc) {
    if (node == 0) {
      best = std::min(best, acc);
      return acc;
    }
    const bool depth_capped = params.d_max > 0 && depth >= params.d_max;
    const int n = kb.node_count();
    bool expanded = false;
    double local_best = kInfVal;
    if (!depth_capped) {
      for (int i = 0; i < n; ++i) {
        const double c = edge_cost[node * n + i];
        if (!(c < kInfVal) || on_path[i]) continue;
        const double next_acc = acc + discount(depth) * c;
        if (next_acc >= best) {
          expanded = true;  // feasible but dominated
          continue;
        }
        on_path[i] = 1;
        local_best = std::min(local_best, search(i, depth + 1, next_acc));
        on_path[i] = 0;
        expanded = true;
      }
    }
    if (!expanded) {
      // Pruned at this depth (cap, dead end, or exhausted neighbors): close
      // with the discounted leaf estimate.
      const double leaf = acc + discount(depth) * leaf_estimate[node];
      best = std::min(best, leaf);
      return leaf;
    }
    return local_best;
  }
};

}  // namespace

std::vector<CandidateValue> evaluate_candidates(const KnowledgeBase& kb, int k,
                                                const DecisionParams& params) {
  if (params.gamma <= 0.0 || params.gamma > 1.0) {
    throw std::invalid_argument("gamma must lie in (0, 1]");
  }
  const int n = kb.node_count();
  std::vector<CandidateValue> table;
  for (int i = 0; i < n; ++i) {
    if (i == k || kb.q_count(k, i) == 0) continue;
    Searcher s(kb, params);
    s.on_path[k] = 1;
    s.on_path[i] = 1;
    const double first_cost = aggregate(params.f, kb.dc_samples(k, i));
    const double value = s.search(i, 1, first_cost);
    table.push_back({i, value});
  }
  return table;
}

int predict_next_node(const KnowledgeBase& kb, int k, const DecisionParams& params) {
  const std::vector<CandidateValue> table = evaluate_candidates(kb, k, params);
  if (table.empty()) {
    throw std::runtime_error("node has no experienced outgoing edge");
  }
  int best_node = table.front().node;
  double best_value = table.front().value;
  for (const CandidateValue& c : table) {
    if (c.value < best_value) {
      best_value = c.value;
      best_node = c.node;
    }
  }
  return best_node;
}

std::optional<double> score_model_accuracy(
    const std::vector<DecisionRecord>& records,
    const std::vector<KnowledgeBase>& snapshots, const DecisionParams& params) {
  long total = 0, hits = 0;
  for (const DecisionRecord& rec : records) {
    if (rec.decision_case != DecisionCase::C) continue;
    const std::size_t snap = static_cast<std::size_t>(rec.run_id) - 1;
    if (snap >= snapshots.size()) {
      throw std::out_of_range("no knowledge snapshot for record's run");
    }
    const int predicted = predict_next_node(snapshots[snap], rec.node, params);
    ++total;
    if (predicted == rec.chosen) ++hits;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace sgnav
