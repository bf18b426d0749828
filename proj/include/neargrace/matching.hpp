#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "neargrace/labelling.hpp"

namespace neargrace {

using LabelPair = std::pair<Label, Label>;

/// {a, b, |b - a|} with a < b.
struct Hyperedge {
  Label a = 0;
  Label b = 0;
  Colour c = 0;
  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

Hyperedge theta(Label a, Label b);
LabelPair theta_inverse(const Hyperedge& e);

/// Edges (a, b) with a in A, b in B and |b - a| in C.
struct ColouredBipartiteView {
  std::vector<Label> a;
  std::vector<Label> b;
  std::vector<Colour> c;
  std::vector<LabelPair> edges;

  /// All pairs of A x B whose colour lies in C. A and B must be disjoint.
  static ColouredBipartiteView complete(std::vector<Label> a, std::vector<Label> b,
                                        std::vector<Colour> c);
  bool has_edge(Label x, Label y) const;
};

/// 3-partite 3-uniform hypergraph. The three parts are distinct vertex classes
/// even where they share integer values.
struct TripartiteHypergraph {
  std::vector<Label> part_a;
  std::vector<Label> part_b;
  std::vector<Colour> part_c;
  std::vector<Hyperedge> edges;

  static TripartiteHypergraph from_view(const ColouredBipartiteView& view);
  int vertex_count() const {
    return static_cast<int>(part_a.size() + part_b.size() + part_c.size());
  }
  bool is_linear() const;
};

struct RainbowMatching {
  std::vector<LabelPair> pairs;
  std::vector<Colour> colours;

  int size() const { return static_cast<int>(pairs.size()); }
  void add(Label x, Label y);
};

bool is_rainbow_matching(std::span<const LabelPair> pairs);
bool is_hypergraph_matching(std::span<const Hyperedge> edges);

/// (M is a rainbow matching, theta(M) is a hypergraph matching). Throws
/// std::invalid_argument if some pair of M is not an edge of the view.
std::pair<bool, bool> rainbow_iff_matching_check(std::span<const LabelPair> m,
                                                 const ColouredBipartiteView& view);

/// The gadget on A = [1, n/2], B = [n/2 + 1, n]: edges (a, b) of E_c for every
/// colour c != 1. Equivalently n + 1 <= a + b <= n + 2s and b - a >= 2.
ColouredBipartiteView spanning_difference_graph(int n, int s);

/// Neighbours of a in the gadget, ascending.
std::pair<Label, Label> gadget_neighbour_range(int n, int s, Label a);

/// [lo, hi] of C_ij for intervals of length ell.
std::pair<Colour, Colour> interval_colours(int i, int j, int ell);

/// Rainbow perfect matching between I_i = [i ell + 1, (i+1) ell] and I_j with
/// colour set exactly C_ij.
RainbowMatching interval_matching(int i, int j, int ell, int n);

struct MatchingConfig {
  int max_rounds = 50;       // (2,1)-swap sweeps after the greedy phase
  long long walk_steps = 0;  // then a non-shrinking eviction walk
};

struct HypergraphMatching {
  std::vector<int> edges;  // indices into H.edges
  int uncovered = 0;
  double uncovered_fraction = 0.0;
  int rounds = 0;
};

/// Random-order greedy maximal matching followed by (2,1)-swaps (drop one
/// matched edge, insert two) and optionally a walk that re-covers free
/// vertices by evicting one matched edge at a time. Always a valid matching.
HypergraphMatching hypergraph_matching(const TripartiteHypergraph& h, double target_uncovered,
                                       std::uint64_t seed, const MatchingConfig& config = {});

/// Same, grown from `initial` (edge indices forming a matching).
HypergraphMatching hypergraph_matching(const TripartiteHypergraph& h, double target_uncovered,
                                       std::uint64_t seed, const MatchingConfig& config,
                                       std::span<const int> initial);

struct PairMatchingConfig {
  int s = 0;  // gadget width; 0 picks ceil(mu * 3 p n / 20) with p = |S2| / n
  int retries = 20;
  MatchingConfig engine;
};

struct PairMatchingResult {
  RainbowMatching matching;
  int uncovered_s1 = 0;
  int uncovered_s2 = 0;
  double allowance = 0.0;  // 2 mu max(|S1|, |S2|)
  bool within_target = false;
  int attempts = 0;
  int s = 0;
};

/// Rainbow matching between S1 and S2 with all colours in S2 \ {1}, built from
/// the gadget split into H_P and H_Q by a seeded fair coin on colours.
PairMatchingResult random_pair_rainbow_matching(int n, std::span<const Label> s1,
                                                std::span<const Label> s2, double mu,
                                                std::uint64_t seed,
                                                const PairMatchingConfig& config = {});

}  // namespace neargrace
