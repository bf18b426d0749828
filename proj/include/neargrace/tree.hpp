#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace neargrace {

/// Dense 0-based vertex id.
using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class TreeErrorKind {
  kNotATree,
  kIdOutOfRange,
  kDuplicateEdge,
  kMalformed,
  kUnsupported,
};

std::string_view to_string(TreeErrorKind kind);

class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  TreeErrorKind kind() const noexcept { return kind_; }

 private:
  TreeErrorKind kind_;
};

/// Immutable tree on vertices 0..n-1. Construction validates that the edge set
/// is a spanning tree.
class Tree {
 public:
  Tree() : Tree(1, {}) {}
  Tree(int n, std::vector<Edge> edges);

  int order() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbours(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  bool contains(Vertex v) const noexcept { return v >= 0 && v < n_; }
  int max_degree() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Parses the edge-list document: first data line n, then one "u v" line per
/// edge. Blank lines and lines starting with '#' are skipped.
Tree parse_tree(std::string_view text);
std::string to_edge_list(const Tree& tree);

std::vector<Vertex> random_prufer(int n, std::uint64_t seed);
Tree tree_from_prufer(int n, std::span<const Vertex> sequence);
std::vector<Vertex> prufer_code(const Tree& tree);

/// Uniform labelled tree on n vertices (Prüfer bijection), deterministic per seed.
Tree random_tree(int n, std::uint64_t seed);

/// One representative per isomorphism class, 1 <= n <= 12.
std::vector<Tree> enumerate_trees(int n);

// ---------------------------------------------------------------------------
// Rooted structure over induced subforests.
//
// A `removed` mask (one byte per vertex, nonzero = removed) restricts a walk to
// the component of T minus the removed set. An empty span removes nothing.

using VertexMask = std::vector<char>;

VertexMask mask_of(int n, std::span<const Vertex> vertices);

/// Components of T minus the masked vertices, each sorted ascending, ordered by
/// smallest member.
std::vector<std::vector<Vertex>> components(const Tree& tree,
                                            std::span<const char> removed = {});

/// Canonical form of a rooted tree: AHU parenthesis code with children sorted
/// lexicographically by code, plus the vertices in the matching preorder.
/// Two rooted trees with equal codes are isomorphic via position in `order`.
struct RootedShape {
  std::string code;
  std::vector<Vertex> order;
  std::vector<int> parent;  // index into `order`, -1 for the root
};

RootedShape canonical_shape(const Tree& tree, Vertex root,
                            std::span<const char> removed = {});
std::string rooted_code(const Tree& tree, Vertex root);

/// Isomorphism-invariant code of an unrooted tree (min over its centres).
std::string free_code(const Tree& tree);
std::vector<Vertex> centres(const Tree& tree);

inline int code_order(std::string_view code) {
  return static_cast<int>(code.size() / 2);
}

// ---------------------------------------------------------------------------

struct RootedComponent {
  Vertex root = 0;
  std::vector<Vertex> vertices;  // canonical preorder; vertices[0] == root
  std::vector<int> parent;       // position of the parent in `vertices`
  std::string code;
};

/// Vertex-disjoint rooted trees over one shared id space.
struct RootedForest {
  std::vector<RootedComponent> components;

  int vertex_count() const;

  /// Disjoint union of the given rooted trees; ids of the k-th tree are
  /// shifted by the orders of the trees before it.
  static RootedForest from_trees(std::span<const std::pair<Tree, Vertex>> trees);
};

RootedComponent make_component(const Tree& tree, Vertex root,
                               std::span<const char> removed = {});

/// Rooted-tree code -> number of components carrying it.
using ForestShape = std::map<std::string, int>;

ForestShape shape_of(const RootedForest& forest);
int shape_order(const ForestShape& shape);

}  // namespace neargrace
