#ifndef SALAB_MEASURE_H_
#define SALAB_MEASURE_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "salab/graph.h"
#include "salab/patterns.h"
#include "salab/rational.h"

namespace salab {

// Scalar is Rational (exact) or double (binary64, compensated sums).
template <typename Scalar>
struct MeasureParams {
  int d = 0;
  Scalar p{};
  double clique_parameter = 0;  // D, with p = n^{−2/D}; 0 when p was given
  double eta = 0;               // d = η·D
};

// p = n^{−2/D} and d = ⌊η·D⌋.
MeasureParams<double> params_from_clique(int n, double clique_parameter, double eta);

enum class Strategy { kNaive, kFactorized, kGrouped };
std::string to_string(Strategy s);

using VertexPair = std::pair<Vertex, Vertex>;

// ∏ over pairs of (1−p)/p when present, −1 when absent.
template <typename Scalar>
Scalar chi(const BlockGraph& g, std::span<const VertexPair> pairs, const Scalar& p);

// t[i] is the vertex chosen in block i, or −1 when block i is not covered.
std::vector<VertexPair> map_pattern(const PatternGraph& h, std::span<const Vertex> t);

// Σ_{t∈Q} χ_{H(t)}. Q must carry every block. kGrouped is rejected here,
// use family_sum.
template <typename Scalar>
Scalar char_sum(const BlockGraph& g, const Rectangle& q, const PatternGraph& h, const Scalar& p,
                Strategy strategy);

// Σ_{t∈Q} χ_{F(t)} · p^{−|E*|} · [E*(t) ⊆ E(G)], the sum of χ_{H(t)} over
// the whole family {F ∪ E : E ⊆ E*}. kNaive walks tuples; anything else
// enumerates the cover side and counts common neighborhoods.
template <typename Scalar>
Scalar family_sum(const BlockGraph& g, const Rectangle& q, const CoreFamily& family,
                  const Scalar& p, Strategy strategy);

// Σ_{t∈Q} Σ_{H∈ℋ_d} χ_{H(t)}, before the n^{−k} normalization.
template <typename Scalar>
Scalar total_char_sum(const BlockGraph& g, const Rectangle& q, const MeasureParams<Scalar>& params,
                      Strategy strategy);

template <typename Scalar>
Scalar mu_d(const BlockGraph& g, const Rectangle& q, const MeasureParams<Scalar>& params,
            Strategy strategy);

// |Q|·n^{−k}·Σ_{i≤d} C(k,i)·p^{−ik}.
template <typename Scalar>
Scalar rect_small_bound(const Rectangle& q, const MeasureParams<Scalar>& params);

// Every mu_d evaluation with p ≤ 1/2 is compared with rect_small_bound and
// tallied here.
struct SmallBoundAudit {
  long checked = 0;
  long violated = 0;
  std::string first_violation;
};
SmallBoundAudit small_bound_audit();
void reset_small_bound_audit();

// Star with center `center` and leaves {0..cutoff−1} ∖ {center}.
PatternGraph star(int k, int center, int cutoff);
PatternGraph star_union(int k, std::span<const int> centers);
// |S_[ℓ]| = ℓ(k − (ℓ+1)/2), computed as ℓ(2k − ℓ − 1)/2.
int star_union_size(int k, int ell);

struct BoundaryTerm {
  int i = 0;               // 1-based position in the relabeled order
  int j = 0;               // 1-based
  LabelPair edge;          // the boundary edge in original labels
  long family_size = 0;    // graphs contributing to this term
  Rational value;
};

struct SplitResult {
  std::vector<int> order;  // position → original label, singletons first
  Rational main;
  std::vector<BoundaryTerm> boundary;
  Rational full;           // Σ_{t∈Q} Σ_{H∈ℋ_d} χ_{H(t)}, computed directly
  Rational difference() const;
};

// Splits the full sum around the singleton blocks `singletons`, which must
// form a clique adjacent to every vertex of Q; throws std::invalid_argument
// naming the failed adjacency otherwise.
SplitResult split_main_boundary(const BlockGraph& g, const Rectangle& q,
                                std::span<const int> singletons,
                                const MeasureParams<Rational>& params);

}  // namespace salab

#endif  // SALAB_MEASURE_H_
