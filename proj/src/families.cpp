#include "neargrace/families.hpp"

#include <algorithm>
#include <cmath>

#include "neargrace/rng.hpp"

namespace neargrace {

namespace {

void check_order(int n) {
  if (n < 1) throw TreeError(TreeErrorKind::kMalformed, "family trees need n >= 1");
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"random", "path",   "star", "caterpillar",
                                              "spider", "binary", "broom"};
  return names;
}

Tree path_tree(int n) {
  check_order(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v});
  return Tree(n, std::move(edges));
}

Tree star_tree(int n) {
  check_order(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({0, v});
  return Tree(n, std::move(edges));
}

Tree caterpillar_tree(int n, std::uint64_t seed) {
  check_order(n);
  Rng rng = make_rng(seed, "caterpillar");
  const int spine = std::max(1, n / 8);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < spine; ++v) edges.push_back({v - 1, v});
  for (Vertex v = spine; v < n; ++v) edges.push_back({static_cast<Vertex>(uniform_below(rng, spine)), v});
  return Tree(n, std::move(edges));
}

Tree spider_tree(int n, std::uint64_t seed) {
  check_order(n);
  if (n <= 2) return path_tree(n);
  Rng rng = make_rng(seed, "spider");
  const int root = static_cast<int>(std::sqrt(static_cast<double>(n - 1)));
  const int legs = std::min(n - 1, 2 + static_cast<int>(uniform_below(rng, std::max(1, root))));
  std::vector<Edge> edges;
  Vertex next = 1;
  for (int leg = 0; leg < legs; ++leg) {
    const int length = (n - 1) / legs + (leg < (n - 1) % legs ? 1 : 0);
    Vertex prev = 0;
    for (int k = 0; k < length; ++k, ++next) {
      edges.push_back({prev, next});
      prev = next;
    }
  }
  return Tree(n, std::move(edges));
}

Tree binary_tree(int n) {
  check_order(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({(v - 1) / 2, v});
  return Tree(n, std::move(edges));
}

Tree broom_tree(int n) {
  check_order(n);
  const int handle = (n + 1) / 2;
  std::vector<Edge> edges;
  for (Vertex v = 1; v < handle; ++v) edges.push_back({v - 1, v});
  for (Vertex v = handle; v < n; ++v) edges.push_back({handle - 1, v});
  return Tree(n, std::move(edges));
}

Tree gen_family(std::string_view family, int n, std::uint64_t seed) {
  if (family == "random") {
    check_order(n);
    return random_tree(n, seed);
  }
  if (family == "path") return path_tree(n);
  if (family == "star") return star_tree(n);
  if (family == "caterpillar") return caterpillar_tree(n, seed);
  if (family == "spider") return spider_tree(n, seed);
  if (family == "binary") return binary_tree(n);
  if (family == "broom") return broom_tree(n);
  throw TreeError(TreeErrorKind::kUnsupported, "unknown family '" + std::string(family) + "'");
}

}  // namespace neargrace
