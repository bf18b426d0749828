#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neargrace/tree.hpp"

namespace neargrace {

/// W = N_{T_S}(S) \ S, where T_S is the smallest subtree containing S. Every
/// component of T - (S u W) then has at most one edge into S. Sorted ascending.
std::vector<Vertex> steiner_separator(const Tree& tree, std::span<const Vertex> s);

/// (number of leaves, sum over degree >= 3 of (degree - 2) + 2); always equal.
std::pair<int, int> leaf_count_identity(const Tree& tree);

/// Vertex whose removal leaves components of order <= n/2 (lowest id among
/// those minimising the largest remaining component).
Vertex centroid_vertex(const Tree& tree);

/// Same, inside `component`, one component of T - removed.
Vertex centroid_vertex(const Tree& tree, std::span<const Vertex> component,
                       std::span<const char> removed);

/// Recursive centroid removal: |W| <= 2^(k+1) - 1 and every component of
/// T - W has order <= n / 2^k.
std::vector<Vertex> split_small_components(const Tree& tree, int k);

/// Components of T - W of order <= m with |W| <= 4n/m.
std::vector<Vertex> bound_components(const Tree& tree, int m);

struct TrimResult {
  std::vector<Vertex> removed;  // W3, ascending
  ForestShape shape;            // F, i.e. surviving counts divided by d
  RootedForest kept;            // F x d, in input order
};

/// Drops (count mod d) whole copies of every rooted class, the last ones in
/// forest order; classes with fewer than d copies vanish.
TrimResult trim_to_uniform_forest(const RootedForest& forest, int d);

/// Vertices deleted by trim_to_uniform_forest for multiplicity d.
long long trim_cost(const ForestShape& counts, int d);

struct SplitConfig {
  int m = 8;
  double delta = 0.1;
};

struct SplitResult {
  bool feasible = false;
  std::string diagnostics;
  std::vector<Vertex> s;
  std::vector<Vertex> w;
  int w1 = 0;  // Steiner neighbourhood
  int w2 = 0;  // centroid cuts outside S and W1
  int w3 = 0;  // trimmed copies
  ForestShape shape;
  int multiplicity = 0;
  std::vector<RootedComponent> components;
  std::vector<Vertex> s_neighbour;  // per component: the root's S-neighbour, or -1
  SplitConfig config;
};

/// T - (W u S) = F x d with roots the only vertices adjacent to S. With no
/// zeta, d is the largest multiplicity whose trimming deletes <= delta n / 2.
SplitResult split_structure(const Tree& tree, std::span<const Vertex> s,
                            std::optional<double> zeta = std::nullopt,
                            const SplitConfig& config = {});

/// Independent structural re-check of a feasible split; empty when all
/// invariants hold.
std::vector<std::string> verify_split(const Tree& tree, const SplitResult& split);

}  // namespace neargrace
