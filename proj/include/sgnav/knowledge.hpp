#pragma once

#include <vector>

#include "sgnav/analysis.hpp"

namespace sgnav {

// Learned task representation: cost-to-go samples per node, edge cost samples
// and traversal counts per node pair. Node 0 is the goal and has no outgoing
// entries.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(int node_count);

  int node_count() const { return static_cast<int>(ctg_lists_.size()); }
  int run_count() const { return run_count_; }

  const std::vector<double>& ctg_samples(int k) const { return ctg_lists_[k]; }
  const std::vector<double>& dc_samples(int k, int i) const {
    return dc_lists_[k * node_count() + i];
  }
  int q_count(int k, int i) const { return q_counts_[k][i]; }
  const IntMatrix& q_counts() const { return q_counts_; }

  // Folds one parsed run in. Completed runs (ending at node 0) update CTG'
  // lists, DC' lists, and traversal counts; aborted runs update only the
  // latter two for the segments actually flown. Zero-length self transitions
  // are dropped.
  void update_from_run(const ParsedRun& parsed);

  // Direct sample injection (e.g., seeding from a benchmark graph).
  void add_ctg_sample(int k, double value) { ctg_lists_[k].push_back(value); }
  void add_edge_sample(int k, int i, double dc_value);
  void set_run_count(int runs) { run_count_ = runs; }

  std::vector<int> unknown_nodes() const;  // k in [1..N] with no CTG' samples
  std::vector<int> known_nodes() const;
  std::vector<int> connected_nodes(int k) const;  // CN_k = {i : Q'_ki > 0}

  // Prior next-node distribution at k: empirical counts when any exist,
  // otherwise uniform over visibility neighbors. Throws when there is neither.
  std::vector<double> prior_transition_probabilities(const BoolMatrix& vis, int k) const;

  // EM = sum_h M_h / h, where M_h is the number of (k,i) segments traversed
  // exactly h times.
  double exploration_metric() const;

  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) = default;

 private:
  std::vector<std::vector<double>> ctg_lists_;
  std::vector<std::vector<double>> dc_lists_;  // flattened (N+1)x(N+1)
  IntMatrix q_counts_;
  int run_count_ = 0;
};

}  // namespace sgnav
