#include "neargrace/tree.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>

#include "neargrace/rng.hpp"

namespace neargrace {

std::string_view to_string(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::kNotATree: return "not-a-tree";
    case TreeErrorKind::kIdOutOfRange: return "id-out-of-range";
    case TreeErrorKind::kDuplicateEdge: return "duplicate-edge";
    case TreeErrorKind::kMalformed: return "malformed";
    case TreeErrorKind::kUnsupported: return "unsupported";
  }
  return "unknown";
}

Tree::Tree(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n > 0 ? n : 0) {
  if (n < 1) throw TreeError(TreeErrorKind::kMalformed, "a tree needs at least one vertex");
  for (const Edge& e : edges_) {
    if (!contains(e.u) || !contains(e.v)) {
      throw TreeError(TreeErrorKind::kIdOutOfRange,
                      "edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                          " outside 0.." + std::to_string(n - 1));
    }
    if (e.u == e.v) {
      throw TreeError(TreeErrorKind::kNotATree, "self-loop at " + std::to_string(e.u));
    }
  }
  std::vector<std::pair<Vertex, Vertex>> keys;
  keys.reserve(edges_.size());
  for (const Edge& e : edges_) keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(keys.begin(), keys.end());
  if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end()) {
    throw TreeError(TreeErrorKind::kDuplicateEdge, "duplicate edge " +
                                                       std::to_string(dup->first) + " " +
                                                       std::to_string(dup->second));
  }
  if (static_cast<int>(edges_.size()) != n - 1) {
    throw TreeError(TreeErrorKind::kNotATree,
                    std::to_string(edges_.size()) + " edges on " + std::to_string(n) +
                        " vertices");
  }
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adjacency_[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != n) throw TreeError(TreeErrorKind::kNotATree, "edge set is disconnected");
}

int Tree::max_degree() const {
  int best = 0;
  for (const auto& nb : adjacency_) best = std::max(best, static_cast<int>(nb.size()));
  return best;
}

namespace {

bool parse_int(std::string_view token, long long& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Tree parse_tree(std::string_view text) {
  int n = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (n < 0) {
      long long value = 0;
      if (tokens.size() != 1 || !parse_int(tokens[0], value) || value < 1 || value > (1 << 28)) {
        throw TreeError(TreeErrorKind::kMalformed, where + ": expected vertex count n >= 1");
      }
      n = static_cast<int>(value);
      continue;
    }
    long long a = 0, b = 0;
    if (tokens.size() != 2 || !parse_int(tokens[0], a) || !parse_int(tokens[1], b)) {
      throw TreeError(TreeErrorKind::kMalformed, where + ": expected two vertex ids");
    }
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw TreeError(TreeErrorKind::kIdOutOfRange, where + ": vertex id outside 0.." +
                                                        std::to_string(n - 1));
    }
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (n < 0) throw TreeError(TreeErrorKind::kMalformed, "missing vertex count");
  return Tree(n, std::move(edges));
}

std::string to_edge_list(const Tree& tree) {
  std::ostringstream out;
  out << tree.order() << '\n';
  for (const Edge& e : tree.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::vector<Vertex> random_prufer(int n, std::uint64_t seed) {
  std::vector<Vertex> seq;
  if (n <= 2) return seq;
  Rng rng = make_rng(seed, "prufer");
  seq.resize(n - 2);
  for (auto& x : seq) x = static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  return seq;
}

Tree tree_from_prufer(int n, std::span<const Vertex> sequence) {
  if (n < 1) throw TreeError(TreeErrorKind::kMalformed, "n must be positive");
  if (n == 1) return Tree(1, {});
  if (static_cast<int>(sequence.size()) != n - 2) {
    throw TreeError(TreeErrorKind::kMalformed, "Prüfer sequence must have length n-2");
  }
  std::vector<int> degree(n, 1);
  for (Vertex x : sequence) {
    if (x < 0 || x >= n) throw TreeError(TreeErrorKind::kIdOutOfRange, "Prüfer entry out of range");
    ++degree[x];
  }
  // Linear-time decoding: walk a pointer over the smallest leaf.
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (Vertex x : sequence) {
    edges.push_back({leaf, x});
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, n - 1});
  return Tree(n, std::move(edges));
}

std::vector<Vertex> prufer_code(const Tree& tree) {
  const int n = tree.order();
  std::vector<Vertex> seq;
  if (n <= 2) return seq;
  std::vector<int> degree(n);
  for (Vertex v = 0; v < n; ++v) degree[v] = tree.degree(v);
  std::vector<char> gone(n, 0);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  while (static_cast<int>(seq.size()) < n - 2) {
    Vertex leaf = leaves.top();
    leaves.pop();
    gone[leaf] = 1;
    for (Vertex y : tree.neighbours(leaf)) {
      if (gone[y]) continue;
      seq.push_back(y);
      if (--degree[y] == 1) leaves.push(y);
    }
  }
  return seq;
}

Tree random_tree(int n, std::uint64_t seed) {
  auto seq = random_prufer(n, seed);
  return tree_from_prufer(n, seq);
}

VertexMask mask_of(int n, std::span<const Vertex> vertices) {
  VertexMask mask(n, 0);
  for (Vertex v : vertices) mask[v] = 1;
  return mask;
}

namespace {

bool is_removed(std::span<const char> removed, Vertex v) {
  return !removed.empty() && removed[v] != 0;
}

}  // namespace

std::vector<std::vector<Vertex>> components(const Tree& tree, std::span<const char> removed) {
  const int n = tree.order();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s] || is_removed(removed, s)) continue;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (Vertex y : tree.neighbours(x)) {
        if (!seen[y] && !is_removed(removed, y)) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

RootedShape canonical_shape(const Tree& tree, Vertex root, std::span<const char> removed) {
  if (!tree.contains(root) || is_removed(removed, root)) {
    throw TreeError(TreeErrorKind::kIdOutOfRange, "root " + std::to_string(root) + " not in tree");
  }
  // BFS for parent pointers, then codes bottom-up.
  std::vector<Vertex> bfs{root};
  std::vector<Vertex> parent_of;  // parallel to bfs
  parent_of.push_back(-1);
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    Vertex x = bfs[i];
    for (Vertex y : tree.neighbours(x)) {
      if (y == parent_of[i] || is_removed(removed, y)) continue;
      bfs.push_back(y);
      parent_of.push_back(x);
    }
  }
  const std::size_t k = bfs.size();
  std::vector<int> slot_of_parent(k, -1);
  {
    std::vector<int> index(tree.order(), -1);
    for (std::size_t i = 0; i < k; ++i) index[bfs[i]] = static_cast<int>(i);
    for (std::size_t i = 1; i < k; ++i) slot_of_parent[i] = index[parent_of[i]];
  }
  std::vector<std::vector<int>> children(k);
  for (std::size_t i = 1; i < k; ++i) children[slot_of_parent[i]].push_back(static_cast<int>(i));

  std::vector<std::string> code(k);
  for (std::size_t r = k; r-- > 0;) {
    auto& kids = children[r];
    std::sort(kids.begin(), kids.end(), [&](int a, int b) { return code[a] < code[b]; });
    std::string s = "(";
    for (int c : kids) s += code[c];
    s += ')';
    code[r] = std::move(s);
    // Child codes are only needed for the final preorder walk's ordering, which
    // is already fixed in `kids`; release them.
    for (int c : kids) std::string().swap(code[c]);
  }

  RootedShape shape;
  shape.code = std::move(code[0]);
  shape.order.reserve(k);
  shape.parent.reserve(k);
  std::vector<std::pair<int, int>> stack{{0, -1}};
  while (!stack.empty()) {
    auto [slot, parent_pos] = stack.back();
    stack.pop_back();
    const int pos = static_cast<int>(shape.order.size());
    shape.order.push_back(bfs[slot]);
    shape.parent.push_back(parent_pos);
    const auto& kids = children[slot];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, pos);
  }
  return shape;
}

std::string rooted_code(const Tree& tree, Vertex root) {
  return canonical_shape(tree, root).code;
}

std::vector<Vertex> centres(const Tree& tree) {
  const int n = tree.order();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> degree(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = tree.degree(v);
    if (degree[v] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex leaf : layer) {
      for (Vertex y : tree.neighbours(leaf)) {
        if (--degree[y] == 1) next.push_back(y);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string free_code(const Tree& tree) {
  std::string best;
  for (Vertex c : centres(tree)) {
    std::string code = rooted_code(tree, c);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

RootedComponent make_component(const Tree& tree, Vertex root, std::span<const char> removed) {
  RootedShape shape = canonical_shape(tree, root, removed);
  return RootedComponent{root, std::move(shape.order), std::move(shape.parent),
                         std::move(shape.code)};
}

int RootedForest::vertex_count() const {
  int total = 0;
  for (const auto& c : components) total += static_cast<int>(c.vertices.size());
  return total;
}

RootedForest RootedForest::from_trees(std::span<const std::pair<Tree, Vertex>> trees) {
  RootedForest forest;
  int offset = 0;
  for (const auto& [tree, root] : trees) {
    RootedComponent comp = make_component(tree, root);
    comp.root += offset;
    for (Vertex& v : comp.vertices) v += offset;
    forest.components.push_back(std::move(comp));
    offset += tree.order();
  }
  return forest;
}

ForestShape shape_of(const RootedForest& forest) {
  ForestShape shape;
  for (const auto& c : forest.components) ++shape[c.code];
  return shape;
}

int shape_order(const ForestShape& shape) {
  int total = 0;
  for (const auto& [code, count] : shape) total += count * code_order(code);
  return total;
}

}  // namespace neargrace
