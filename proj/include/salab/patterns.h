#ifndef SALAB_PATTERNS_H_
#define SALAB_PATTERNS_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "salab/rational.h"

namespace salab {

using LabelSet = uint32_t;  // bit i set ⇔ label i present
using LabelPair = std::pair<int, int>;

inline int label_count(LabelSet s) { return __builtin_popcount(s); }
std::vector<int> labels_of(LabelSet s);

// Simple undirected graph on labels 0..k−1, k ≤ 16.
class PatternGraph {
 public:
  static constexpr int kMaxLabels = 16;

  PatternGraph() = default;
  explicit PatternGraph(int k);
  PatternGraph(int k, const std::vector<LabelPair>& edges);
  // Bit b of code is the b-th pair in (0,1),(0,2),…,(1,2),… order; k ≤ 11.
  static PatternGraph from_code(int k, uint64_t code);

  int k() const { return k_; }
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  bool has_edge(int i, int j) const { return (adj_[i] >> j) & 1; }
  LabelSet neighbors(int i) const { return adj_[i]; }
  int degree(int i) const { return label_count(adj_[i]); }
  int edge_count() const;
  bool empty() const { return edge_count() == 0; }
  std::vector<LabelPair> edges() const;  // sorted, i < j
  LabelSet support() const;              // V(E(H))
  uint64_t code() const;

  PatternGraph induced(LabelSet keep) const;
  PatternGraph united(const PatternGraph& other) const;
  PatternGraph minus(const PatternGraph& other) const;
  bool contains(const PatternGraph& other) const;  // E(other) ⊆ E(this)
  bool is_cover(LabelSet s) const;
  std::string describe() const;
  bool operator==(const PatternGraph& other) const = default;
  bool operator<(const PatternGraph& other) const;

 private:
  int k_ = 0;
  std::array<uint16_t, kMaxLabels> adj_{};
};

int pair_index(int k, int i, int j);

int vc_number(const PatternGraph& h);
// Minimum cover size among covers containing every label of forced_in and
// none of forced_out; −1 when no such cover exists.
int constrained_vc(const PatternGraph& h, LabelSet forced_in, LabelSet forced_out);
// All minimum vertex covers, ascending as masks (test oracles, small k).
std::vector<LabelSet> all_min_vertex_covers(const PatternGraph& h);
LabelSet lex_first_min_vc(const PatternGraph& h);
// Smallest element of the symmetric difference lies in a.
bool lex_less(LabelSet a, LabelSet b);

// Maximum matching of `left` into `right` using edges of h between them,
// as (left label, right label) pairs.
std::vector<LabelPair> bipartite_matching(const PatternGraph& h, LabelSet left, LabelSet right);

struct CoreInfo {
  PatternGraph f;
  LabelSet w = 0;
  LabelSet u1 = 0;
  LabelSet u2 = 0;
  std::vector<LabelPair> m1;  // U1 → W
  std::vector<LabelPair> m2;  // U2 → W
  PatternGraph estar;         // E*_F as a graph on the same labels
};

CoreInfo core_of(const PatternGraph& h);
// Throws std::invalid_argument unless core_of(f).f == f.
PatternGraph estar_explicit(const PatternGraph& f);
// Union of H ∖ F over all H ⊇ F with core F; guarded by the label guard.
PatternGraph estar_implicit(const PatternGraph& f, int k);
// {w ∈ W : a matching of size |U| exists between W ∖ {w} and U}.
LabelSet extension_set(const PatternGraph& f, LabelSet w, LabelSet u);

bool in_boundary(const PatternGraph& h, LabelPair e, int i);

enum class EnumerationMode { kAllHd, kCoresOnly };
// Deterministic, duplicate-free. all_Hd: ascending code with vc ≤ d.
// cores_only: support sets in ascending mask order (size ≤ 3d), graphs on
// each support with no isolated support label, filtered to fixed points.
std::shared_ptr<const std::vector<PatternGraph>> enumerate_patterns(int k, int d,
                                                                    EnumerationMode mode);

struct CoreFamily {
  PatternGraph f;
  LabelSet w = 0;
  PatternGraph estar;
};
// Cores with vc ≤ d and their E*; memoized per (k, d).
std::shared_ptr<const std::vector<CoreFamily>> core_families(int k, int d);

std::vector<LabelPair> maximal_matching(const PatternGraph& h);

struct AuditRow {
  int b = 0;
  int c = 0;
  BigInt count;
  double bound = 0;  // 2^{c log k + b(c − (b+1)/2)}
  bool holds = false;
};
std::vector<AuditRow> counting_audit(int k);

std::string pattern_to_json(const PatternGraph& h);

}  // namespace salab

#endif  // SALAB_PATTERNS_H_
