#ifndef SALAB_WELLBEHAVED_H_
#define SALAB_WELLBEHAVED_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "salab/graph.h"
#include "salab/patterns.h"
#include "salab/rational.h"

namespace salab {

struct WellBehavedSpec {
  double beta = 0.25;      // neighborhood slack
  long s = 1;              // error-set threshold
  long w = 1;              // error-set size cap
  int ell = 1;             // tuple size bound for error sets
  double lambda = 0.5;     // exponent in the general character bound
  double Lambda = 1;       // block scale for the tight character bound
  double gamma = 0.1;      // error-set slack
  double C = 324;          // error-set regime constant
  double epsilon = 0.1;    // good-rectangle slack
  double tight_constant = 60;
};

// Worst relative deviation of |N∩(t, target)| from p^{|t|}·|target|.
struct NeighborhoodReport {
  double worst_deviation = 0;
  Tuple worst_tuple;
  int worst_block = -1;
  long tuples_checked = 0;
  bool pass = true;
};

// All tuples of at most d_cap vertices in distinct blocks against every
// other full block.
NeighborhoodReport check_common_neighborhoods(const BlockGraph& g, double beta, double p,
                                              int d_cap);

// Same scan restricted to a rectangle: tuples over blocks of `sources`
// (excluding `skip`) of size ≤ max_size, targets Q_i for i in `targets`
// outside the tuple's blocks.
NeighborhoodReport scan_rectangle_neighborhoods(const BlockGraph& g, const Rectangle& q,
                                                const std::vector<int>& sources,
                                                const std::vector<int>& targets, int max_size,
                                                double beta, double p);

struct ErrorSet {
  std::vector<Vertex> vertices;        // sorted
  std::vector<long> packed_per_size;   // index a−1 → disjoint tuples of size a
  double size_bound = 0;               // 12ℓ ln n / (p^ℓ γ²)
};

// Greedy maximal packing of violating tuples, sizes 1..ℓ, ascending
// lexicographic order. Tuples are drawn from `pool` (all blocks other than
// the block of S; full blocks when absent). The post-scan runs on every
// call and throws std::logic_error if a surviving tuple still violates.
ErrorSet build_error_set(const BlockGraph& g, const std::vector<Vertex>& side, int ell,
                         double gamma, double p, const std::optional<Rectangle>& pool = {});

struct ErrorSetCheck {
  std::string rectangle;
  bool admissible = true;
  std::string reason;          // why the rectangle was rejected
  long error_set_size = 0;
  long s = 0;
  bool removal_hypothesis = true;  // |W|/|Q_j| ≤ min(γ/2, γp^ℓ) for every large block
  double worst_deviation = 0;
  bool pass = false;
};

// Builds W = ∪_i W_i with γ = 1/(3k) per large block and scans the
// resulting sub-rectangle with slack 1/k.
std::vector<ErrorSetCheck> check_error_sets(const BlockGraph& g, const WellBehavedSpec& spec,
                                            double p, const std::vector<Rectangle>& rectangles);

// Set-removal arithmetic: |S|/|U| ∈ (1±γ)b and |T|/|U| ≤ min(γ/2, bγ)
// imply |S∖T|/|U∖T| ∈ (1±3γ)b.
struct RemovalCheck {
  bool hypothesis = false;
  bool conclusion = false;
};
RemovalCheck set_removal(long universe, long subset, long removed, long removed_from_subset,
                         const Rational& b, const Rational& gamma);

enum class CharBoundMode { kGeneral, kTight };

struct CharBoundReport {
  bool precondition = true;
  std::string reason;
  bool trivial = false;  // F = ∅
  double value = 0;
  double threshold = 0;
  double ratio = 0;      // |value| / threshold
  bool pass = false;
};

// General: Q must be (n/2, V(E(F)))-large; threshold 6·p^{−|E(F)|}·n^{k−λ·vc/4}.
// Tight: Q must be (4Λ)-small and (Λ,B)-large with (3/k,p)-bounded
// neighborhoods from Q_A to each Q_i, i ∈ B∖A; threshold
// c·p^{−|E(F[B])|}·(Λ/(10k log n))^{−vc(F[B])/4}·|Q_B|.
CharBoundReport check_char_bounds(const BlockGraph& g, const PatternGraph& core,
                                  const Rectangle& q, double p, CharBoundMode mode,
                                  const WellBehavedSpec& spec, LabelSet tight_blocks = 0);

struct GoodRectSpec {
  std::vector<int> singletons;  // R
  double s = 1;
  double beta = 0.25;
  double p = 0.5;
  int d = 1;
};

struct GoodWitness {
  bool good = false;
  int item = 0;  // first violated item (1..3), 0 when good
  std::string reason;
};

GoodWitness is_good_rectangle(const BlockGraph& g, const Rectangle& q, const GoodRectSpec& spec);

enum class PartLabel { kSmall, kAxiomSub, kGood };
std::string to_string(PartLabel label);

struct Part {
  Rectangle rect;
  PartLabel label = PartLabel::kSmall;
  std::vector<int> singletons;     // R for good parts
  std::pair<Vertex, Vertex> non_edge{-1, -1};  // for axiom parts
  double small_ratio = 0;          // |part| / threshold for small parts
};

struct DecomposeSpec {
  double s = 1;
  double p = 0.5;
  int d = 1;
  double beta = 0;  // 0 means 1/k
  double C = 324;
};

struct Decomposition {
  std::vector<Part> parts;
  double small_threshold = 0;     // (n·p^d)^{k−d}
  double part_bound = 0;          // 2kn(2s)^d
  bool regime = false;            // s ≥ C k⁴ d ln n / p^{2d}
  long forced_splits = 0;         // remainders that were not good
  long deep_parts = 0;            // parts carrying more than d singletons
  double worst_small_ratio = 0;
};

// Requires n·p^d ≥ 1 so that fully split rectangles are small.
Decomposition decompose_rectangle(const BlockGraph& g, const Rectangle& q, const DecomposeSpec& spec);

// Re-verifies one part's label from scratch; empty string when it holds.
std::string verify_part(const BlockGraph& g, const Part& part, const DecomposeSpec& spec,
                        double small_threshold);

struct BalancedPartition {
  std::vector<std::vector<int>> parts;
  int retries = 0;  // colorings rejected before success
};

// Colors U uniformly into a parts until both size and family-balance items
// hold; throws std::invalid_argument on hypothesis violations and
// std::runtime_error after 64 rejected colorings.
BalancedPartition balanced_partition(const std::vector<int>& universe,
                                     const std::vector<std::vector<int>>& family, int parts,
                                     double gamma, uint64_t seed);
// Both items, checked directly.
bool partition_is_balanced(const BalancedPartition& partition,
                           const std::vector<std::vector<int>>& family, double gamma);

struct TailProbe {
  PatternGraph f;
  std::vector<LabelPair> matching;
  Rectangle q;      // over the blocks V(E(F))
  double kappa = 1;
  int m = 2;
  double r = 1;
  std::function<double(const Tuple&)> xi;  // tuple indexed by position in q.blocks()
};

struct TailRow {
  double s = 0;
  double empirical = 0;
  double bound = 0;
  double stderr_ = 0;
  bool pass = false;
};

struct TailReport {
  std::vector<TailRow> rows;
  bool pass = true;
};

TailReport tail_probe(const TailProbe& probe, const Rational& p, const std::vector<double>& s_grid,
                      int trials, uint64_t seed);

}  // namespace salab

#endif  // SALAB_WELLBEHAVED_H_
