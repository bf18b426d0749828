#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neargrace/labelling.hpp"
#include "neargrace/splitter.hpp"
#include "neargrace/tree.hpp"

namespace neargrace {

/// Outcome of a constructive stage. On success `labelling` holds the stage's
/// labels (possibly partial: vertices outside the stage stay unlabelled).
struct EmbedResult {
  bool ok = false;
  Labelling labelling;
  std::string failure;
  std::vector<StageEntry> log;
};

// ---------------------------------------------------------------------------
// Hub trees: T - v has only small components.

struct SplittingConfig {
  int max_component = 64;        // components of T - v must not be larger
  std::optional<Label> label_cap;  // overrides floor((1 + eps) n)
  int retries = 20;
  double mu = 0.02;
  int gadget_s = 0;              // 0: n/2, the widest gadget
  int multiplicity_candidates = 4;
  int walk_factor = 200;  // eviction-walk steps per hypergraph vertex
};

/// Rainbow labelling of T into {0} u [(1 + eps) n] (n = |T| - 1) with v -> 0
/// and no edge of colour 1.
EmbedResult embed_splitting_vertex_tree(const Tree& tree, Vertex hub, double epsilon,
                                        std::uint64_t seed, const SplittingConfig& config = {});

// ---------------------------------------------------------------------------
// Forests S u (F x d) with root-only S-adjacency.

/// The interval partition of [m~]: I_i = [i l + 1, (i+1) l] for i = 0..eta.
struct IntervalLayout {
  int ell = 1;        // d + 3|S|, odd
  int block = 1;      // d
  int s_size = 0;     // |S|
  int eta = 0;
  Label total = 0;    // m~ = (eta + 1) l

  static IntervalLayout make(int block, int s_size, int eta);

  std::pair<Label, Label> interval(int i) const { return {i * ell + 1, (i + 1) * ell}; }
  /// I_0' = [ceil((d - 3|S|)/2), ceil((d + 3|S|)/2)]
  std::pair<Label, Label> s_window() const;
  /// I_j' = [j l + 1, (j + 1) l - 3|S|]
  std::pair<Label, Label> root_window(int j) const;
  std::pair<Colour, Colour> colours(int i, int j) const;
  std::pair<Colour, Colour> s_colours() const { return {1, 3 * s_size}; }

  /// Checks that C_ij and C_i'j' are disjoint whenever |j - i| != |j' - i'|,
  /// and that C_ij misses C_S whenever |j - i| >= 2, over all index pairs in
  /// `used` (each entry i < j). Returns a description of the first violation.
  std::optional<std::string> check_disjointness(std::span<const std::pair<int, int>> used) const;
};

struct RootedConfig {
  SplittingConfig hub;
  int block_candidates = 4;
  std::optional<Label> label_cap;  // overrides floor((1 + eps) m)
};

/// Rainbow labelling of T - W (W = split.w) into [(1 + eps) m], m = |T - W|.
/// Vertices of W stay unlabelled. Virtual root-to-S edges used during the
/// construction are not part of T and are not counted.
EmbedResult embed_rooted_structure(const Tree& tree, const SplitResult& split, double epsilon,
                                   std::uint64_t seed, const RootedConfig& config = {});

// ---------------------------------------------------------------------------

struct DegreeWindow {
  int index = 0;
  int delta = 0;        // Delta_i
  int delta_next = 0;   // Delta_{i+1}
  std::vector<Vertex> window;  // U: degree in [delta, delta_next)
  int window_edges = 0;        // edges touching U
  std::vector<Vertex> s_high;  // degree >= delta_next
};

/// Ladder Delta_i = 8 * 4^i capped at n, i = 0..ceil(4/eps). Picks the first
/// window at or above `min_index` whose edges number at most eps n / 2.
DegreeWindow degree_window(const Tree& tree, double epsilon, int min_index = 0);
std::vector<int> degree_ladder(int n, double epsilon);

struct RepairTrace {
  std::vector<int> distinct;  // starting value, then after each accepted move
};

/// Moves endpoints of repeated-colour edges to unused labels in
/// [1, lab.label_bound] while that strictly raises the distinct count.
Labelling repair_pass(const Tree& tree, Labelling lab, int budget, RepairTrace* trace = nullptr);

struct NearGracefulOptions {
  bool bijective = false;  // target exactly [n] via leaf trimming
  int repair_budget = 1 << 30;
  int seed_retries = 10;
  int exact_up_to = 10;    // graceful search for trees this small
  long long exact_budget = 2'000'000;
  std::vector<int> split_orders{8, 16, 32, 64};
  double split_delta = 0.1;
  RootedConfig rooted;
};

struct NearGracefulResult {
  Labelling labelling;
  EmbeddingReport report;
};

NearGracefulResult near_graceful(const Tree& tree, double epsilon, std::uint64_t seed,
                                 const NearGracefulOptions& options = {});

}  // namespace neargrace
