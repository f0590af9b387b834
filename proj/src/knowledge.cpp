#include "sgnav/knowledge.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace sgnav {

KnowledgeBase::KnowledgeBase(int node_count) {
  if (node_count < 1) throw std::invalid_argument("node_count must be >= 1");
  ctg_lists_.resize(node_count);
  dc_lists_.resize(static_cast<std::size_t>(node_count) * node_count);
  q_counts_.assign(node_count, std::vector<int>(node_count, 0));
}

void KnowledgeBase::add_edge_sample(int k, int i, double dc_value) {
  dc_lists_[k * node_count() + i].push_back(dc_value);
  ++q_counts_[k][i];
}

void KnowledgeBase::update_from_run(const ParsedRun& parsed) {
  const int n = node_count();
  for (const NodeVisit& visit : parsed.sequence) {
    if (visit.node < 0 || visit.node >= n) {
      throw std::out_of_range("parsed run references a node outside this knowledge base");
    }
  }

  if (parsed.completed) {
    if (parsed.sequence.empty() || parsed.sequence.back().node != 0 || !parsed.t0) {
      throw std::invalid_argument("completed run must end at the goal node");
    }
    const double t0 = *parsed.t0;
    for (const NodeVisit& visit : parsed.sequence) {
      if (visit.node == 0) continue;
      ctg_lists_[visit.node].push_back(t0 - visit.t);
    }
  }

  for (std::size_t s = 0; s + 1 < parsed.sequence.size(); ++s) {
    const NodeVisit& a = parsed.sequence[s];
    const NodeVisit& b = parsed.sequence[s + 1];
    if (a.node == b.node) continue;
    if (a.node == 0) continue;  // the goal terminates a run
    const double dt = b.t - a.t;
    if (dt <= 0.0) continue;
    add_edge_sample(a.node, b.node, dt);
  }
  ++run_count_;
}

std::vector<int> KnowledgeBase::unknown_nodes() const {
  std::vector<int> out;
  for (int k = 1; k < node_count(); ++k) {
    if (ctg_lists_[k].empty()) out.push_back(k);
  }
  return out;
}

std::vector<int> KnowledgeBase::known_nodes() const {
  std::vector<int> out;
  for (int k = 1; k < node_count(); ++k) {
    if (!ctg_lists_[k].empty()) out.push_back(k);
  }
  return out;
}

std::vector<int> KnowledgeBase::connected_nodes(int k) const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i) {
    if (q_counts_[k][i] > 0) out.push_back(i);
  }
  return out;
}

std::vector<double> KnowledgeBase::prior_transition_probabilities(
    const BoolMatrix& vis, int k) const {
  const int n = node_count();
  std::vector<double> p(n, 0.0);
  long total = 0;
  for (int i = 0; i < n; ++i) total += q_counts_[k][i];
  if (total > 0) {
    for (int i = 0; i < n; ++i) {
      p[i] = static_cast<double>(q_counts_[k][i]) / static_cast<double>(total);
    }
    return p;
  }
  int m = 0;
  for (int i = 0; i < n; ++i) {
    if (i != k && vis[k][i]) ++m;
  }
  if (m == 0) {
    throw std::runtime_error("node has no visible neighbor and no traversal counts");
  }
  for (int i = 0; i < n; ++i) {
    if (i != k && vis[k][i]) p[i] = 1.0 / m;
  }
  return p;
}

double KnowledgeBase::exploration_metric() const {
  std::map<int, int> m_h;
  for (int k = 0; k < node_count(); ++k) {
    for (int i = 0; i < node_count(); ++i) {
      const int h = q_counts_[k][i];
      if (h > 0) ++m_h[h];
    }
  }
  double em = 0.0;
  for (const auto& [h, count] : m_h) {
    em += static_cast<double>(count) / h;
  }
  return em;
}

}  // namespace sgnav
