#include <map>

#include "neargrace/tree.hpp"

namespace neargrace {

// Grows each class of order k-1 by one leaf at every vertex and keeps one tree
// per free canonical code. Every tree of order k arises this way (delete a leaf).
std::vector<Tree> enumerate_trees(int n) {
  if (n < 1 || n > 12) {
    throw TreeError(TreeErrorKind::kUnsupported,
                    "enumerate_trees supports 1 <= n <= 12, got " + std::to_string(n));
  }
  std::map<std::string, Tree> level;
  level.emplace(free_code(Tree()), Tree());
  for (int k = 2; k <= n; ++k) {
    std::map<std::string, Tree> next;
    for (const auto& [code, tree] : level) {
      for (Vertex v = 0; v < tree.order(); ++v) {
        std::vector<Edge> edges = tree.edges();
        edges.push_back({v, k - 1});
        Tree grown(k, std::move(edges));
        std::string grown_code = free_code(grown);
        next.try_emplace(std::move(grown_code), std::move(grown));
      }
    }
    level = std::move(next);
  }
  std::vector<Tree> out;
  out.reserve(level.size());
  for (auto& [code, tree] : level) out.push_back(std::move(tree));
  return out;
}

}  // namespace neargrace
