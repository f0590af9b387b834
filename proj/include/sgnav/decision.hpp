#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgnav/knowledge.hpp"

namespace sgnav {

enum class DecisionCase { A, B, C };

const char* to_string(DecisionCase c);

enum class Aggregator { Min, Mean, Median, Max };

const char* to_string(Aggregator f);
std::optional<Aggregator> aggregator_from_string(const std::string& s);

double aggregate(Aggregator f, const std::vector<double>& samples);

// Depth-limited discounted search over experienced edges. d_max <= 0 means
// unlimited depth. Depth counting starts at 0 for the first edge out of the
// current node; a path pruned after D edges pays gamma^D times the aggregated
// CTG' estimate at its leaf.
struct DecisionParams {
  double gamma = 1.0;
  int d_max = 0;
  Aggregator f = Aggregator::Min;
};

// A rated first step: the best discounted path value among paths starting
// with this edge.
struct CandidateValue {
  int node = -1;
  double value = 0.0;
};

// Case A/B/C from the number of connected nodes at k.
DecisionCase classify_case(const KnowledgeBase& kb, int k);

// Value table for every experienced first step out of k, ordered by node
// index. Paths are simple (no node revisits); leaves with no CTG' samples
// rate as infinity unless the path reached the goal.
std::vector<CandidateValue> evaluate_candidates(const KnowledgeBase& kb, int k,
                                                const DecisionParams& params);

// Best first step out of k; ties break toward the lowest node index. Throws
// when k has no experienced outgoing edge.
int predict_next_node(const KnowledgeBase& kb, int k, const DecisionParams& params);

struct DecisionRecord {
  int run_id = 0;
  int node = -1;
  DecisionCase decision_case = DecisionCase::A;
  int chosen = -1;
  int predicted = -1;  // case C only, -1 otherwise
  std::vector<int> vis;
};

// Fraction of case-C records whose choice matches the model prediction under
// the knowledge snapshot preceding the record's run. snapshots[r] must hold
// the knowledge base before run r (run ids are 1-based). Returns nothing when
// no case-C record exists.
std::optional<double> score_model_accuracy(
    const std::vector<DecisionRecord>& records,
    const std::vector<KnowledgeBase>& snapshots, const DecisionParams& params);

}  // namespace sgnav
