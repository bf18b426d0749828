#include "neargrace/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace neargrace {

namespace {

bool is_removed(std::span<const char> removed, Vertex v) {
  return !removed.empty() && removed[v] != 0;
}

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<Vertex> steiner_separator(const Tree& tree, std::span<const Vertex> s) {
  if (s.empty()) return {};
  const int n = tree.order();
  VertexMask in_s(n, 0);
  for (Vertex v : s) {
    if (!tree.contains(v)) throw TreeError(TreeErrorKind::kIdOutOfRange, "S vertex out of range");
    in_s[v] = 1;
  }
  // Root at an S vertex; v lies in T_S iff its subtree holds an S vertex.
  const Vertex root = s.front();
  std::vector<Vertex> order{root};
  std::vector<Vertex> parent(n, -1);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex y : tree.neighbours(order[i])) {
      if (parent[y] == -1) {
        parent[y] = order[i];
        order.push_back(y);
      }
    }
  }
  std::vector<char> in_steiner(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (in_s[v]) in_steiner[v] = 1;
    if (in_steiner[v] && v != root) in_steiner[parent[v]] = 1;
  }
  std::vector<Vertex> w;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_steiner[v] || in_s[v]) continue;
    for (Vertex y : tree.neighbours(v)) {
      if (in_s[y]) {
        w.push_back(v);
        break;
      }
    }
  }
  return w;
}

std::pair<int, int> leaf_count_identity(const Tree& tree) {
  if (tree.order() < 2) throw TreeError(TreeErrorKind::kUnsupported, "leaf count needs n >= 2");
  int leaves = 0;
  int excess = 2;
  for (Vertex v = 0; v < tree.order(); ++v) {
    const int d = tree.degree(v);
    if (d == 1) ++leaves;
    if (d >= 3) excess += d - 2;
  }
  return {leaves, excess};
}

Vertex centroid_vertex(const Tree& tree, std::span<const Vertex> component,
                       std::span<const char> removed) {
  if (component.empty()) throw std::invalid_argument("centroid of an empty component");
  const int total = static_cast<int>(component.size());
  const Vertex root = component.front();
  // Scratch indexed by vertex; only the component's entries are touched.
  thread_local std::vector<Vertex> parent;
  thread_local std::vector<int> size;
  thread_local std::vector<int> largest;
  if (static_cast<int>(parent.size()) < tree.order()) {
    parent.assign(tree.order(), -1);
    size.assign(tree.order(), 0);
    largest.assign(tree.order(), 0);
  }
  std::vector<Vertex> order{root};
  order.reserve(component.size());
  parent[root] = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex x = order[i];
    for (Vertex y : tree.neighbours(x)) {
      if (y == parent[x] || is_removed(removed, y)) continue;
      parent[y] = x;
      order.push_back(y);
    }
  }
  for (Vertex v : order) size[v] = 0, largest[v] = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    size[v] += 1;
    largest[v] = std::max(largest[v], total - size[v]);
    if (parent[v] != -1) {
      size[parent[v]] += size[v];
      largest[parent[v]] = std::max(largest[parent[v]], size[v]);
    }
  }
  // Ties go to the smallest vertex id.
  Vertex best = -1;
  for (Vertex v : order)
    if (best == -1 || largest[v] < largest[best] || (largest[v] == largest[best] && v < best)) best = v;
  return best;
}

Vertex centroid_vertex(const Tree& tree) {
  std::vector<Vertex> all(tree.order());
  for (Vertex v = 0; v < tree.order(); ++v) all[v] = v;
  return centroid_vertex(tree, all, {});
}

std::vector<Vertex> split_small_components(const Tree& tree, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const long long n = tree.order();
  VertexMask removed(n, 0);
  std::vector<Vertex> w;
  for (int level = 1; level <= k; ++level) {
    for (const auto& comp : components(tree, removed)) {
      // order > n / 2^level, in integers
      const long long size = static_cast<long long>(comp.size());
      const bool too_big = level >= 62 ? true : (size << level) > n;
      if (!too_big) continue;
      const Vertex c = centroid_vertex(tree, comp, removed);
      removed[c] = 1;
      w.push_back(c);
    }
  }
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<Vertex> bound_components(const Tree& tree, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  const long long n = tree.order();
  if (m >= n) return {};
  int k = 0;
  while ((static_cast<long long>(m) << k) < n) ++k;
  return split_small_components(tree, k);
}

long long trim_cost(const ForestShape& counts, int d) {
  long long total = 0;
  for (const auto& [code, count] : counts) total += static_cast<long long>(count % d) * code_order(code);
  return total;
}

TrimResult trim_to_uniform_forest(const RootedForest& forest, int d) {
  if (d < 1) throw std::invalid_argument("multiplicity must be positive");
  std::map<std::string, int> to_drop;
  for (const auto& [code, count] : shape_of(forest)) to_drop[code] = count % d;
  std::vector<char> keep(forest.components.size(), 1);
  for (std::size_t i = forest.components.size(); i-- > 0;) {
    int& left = to_drop[forest.components[i].code];
    if (left > 0) {
      keep[i] = 0;
      --left;
    }
  }
  TrimResult result;
  for (std::size_t i = 0; i < forest.components.size(); ++i) {
    const auto& comp = forest.components[i];
    if (keep[i]) {
      result.kept.components.push_back(comp);
    } else {
      result.removed.insert(result.removed.end(), comp.vertices.begin(), comp.vertices.end());
    }
  }
  std::sort(result.removed.begin(), result.removed.end());
  for (const auto& [code, count] : shape_of(result.kept)) result.shape[code] = count / d;
  return result;
}

SplitResult split_structure(const Tree& tree, std::span<const Vertex> s_in,
                            std::optional<double> zeta, const SplitConfig& config) {
  const int n = tree.order();
  SplitResult result;
  result.config = config;
  result.s = sorted_unique({s_in.begin(), s_in.end()});
  auto fail = [&](const std::string& why) {
    result.feasible = false;
    result.diagnostics = why;
    return result;
  };
  for (Vertex v : result.s)
    if (!tree.contains(v)) throw TreeError(TreeErrorKind::kIdOutOfRange, "S vertex out of range");

  VertexMask in_s = mask_of(n, result.s);
  const std::vector<Vertex> w1 = steiner_separator(tree, result.s);
  std::vector<Vertex> w2;
  for (Vertex v : bound_components(tree, config.m))
    if (!in_s[v]) w2.push_back(v);

  VertexMask removed = in_s;
  std::vector<Vertex> w12;
  for (Vertex v : w1) {
    removed[v] = 1;
    w12.push_back(v);
  }
  for (Vertex v : w2) {
    if (!removed[v]) {
      removed[v] = 1;
      w12.push_back(v);
    }
  }
  result.w1 = static_cast<int>(w1.size());
  result.w2 = static_cast<int>(w12.size() - w1.size());

  RootedForest forest;
  std::map<Vertex, Vertex> s_neighbour_of_root;
  for (const auto& comp : components(tree, removed)) {
    Vertex root = comp.front();
    Vertex s_nb = -1;
    int touching = 0;
    for (Vertex x : comp) {
      for (Vertex y : tree.neighbours(x)) {
        if (!in_s[y]) continue;
        ++touching;
        root = x;
        s_nb = y;
      }
    }
    if (touching > 1) {
      throw std::logic_error("component sends " + std::to_string(touching) +
                             " edges into S after the Steiner separator");
    }
    forest.components.push_back(make_component(tree, root, removed));
    s_neighbour_of_root[root] = s_nb;
  }

  const ForestShape counts = shape_of(forest);
  int d = 0;
  if (zeta) {
    d = static_cast<int>(std::floor(*zeta * n));
    if (d < 1) return fail("zeta * n rounds to " + std::to_string(d) + ", need d >= 1");
  } else {
    int max_count = 0;
    for (const auto& [code, count] : counts) max_count = std::max(max_count, count);
    const double budget = config.delta * n / 2.0;
    for (int cand = max_count; cand >= 1; --cand) {
      if (static_cast<double>(trim_cost(counts, cand)) <= budget) {
        d = cand;
        break;
      }
    }
    if (d < 1) return fail("no multiplicity keeps the trim within delta n / 2");
  }

  TrimResult trim = trim_to_uniform_forest(forest, d);
  result.w3 = static_cast<int>(trim.removed.size());
  result.multiplicity = d;
  result.shape = std::move(trim.shape);
  result.w = w12;
  result.w.insert(result.w.end(), trim.removed.begin(), trim.removed.end());
  std::sort(result.w.begin(), result.w.end());
  for (auto& comp : trim.kept.components) {
    result.s_neighbour.push_back(s_neighbour_of_root.at(comp.root));
    result.components.push_back(std::move(comp));
  }

  std::ostringstream diag;
  diag << "|S|=" << result.s.size() << " W1=" << result.w1 << " W2=" << result.w2
       << " W3=" << result.w3 << " d=" << d << " classes=" << result.shape.size();
  result.diagnostics = diag.str();
  if (static_cast<double>(result.w.size()) > config.delta * n) {
    return fail(diag.str() + ": |W| exceeds delta n");
  }
  if (result.components.empty() && static_cast<int>(result.s.size() + result.w.size()) < n) {
    return fail(diag.str() + ": no component survives trimming");
  }
  result.feasible = true;
  return result;
}

std::vector<std::string> verify_split(const Tree& tree, const SplitResult& split) {
  std::vector<std::string> problems;
  const int n = tree.order();
  VertexMask in_s = mask_of(n, split.s);
  VertexMask removed = in_s;
  for (Vertex v : split.w) {
    if (in_s[v]) problems.push_back("W meets S at " + std::to_string(v));
    removed[v] = 1;
  }
  if (static_cast<double>(split.w.size()) > split.config.delta * n) {
    problems.push_back("|W| = " + std::to_string(split.w.size()) + " exceeds delta n");
  }
  if (split.multiplicity < 1) {
    problems.push_back("multiplicity below 1");
    return problems;
  }
  std::map<Vertex, int> root_index;
  for (std::size_t i = 0; i < split.components.size(); ++i) root_index[split.components[i].root] = static_cast<int>(i);

  ForestShape observed;
  for (const auto& comp : components(tree, removed)) {
    std::vector<Vertex> roots;
    for (Vertex x : comp)
      if (root_index.count(x)) roots.push_back(x);
    if (roots.size() != 1) {
      problems.push_back("component at " + std::to_string(comp.front()) + " has " +
                         std::to_string(roots.size()) + " marked roots");
      continue;
    }
    const Vertex root = roots.front();
    for (Vertex x : comp) {
      int s_nbs = 0;
      for (Vertex y : tree.neighbours(x)) s_nbs += in_s[y] ? 1 : 0;
      if (x != root && s_nbs > 0) problems.push_back("non-root " + std::to_string(x) + " touches S");
      if (x == root && s_nbs > 1) problems.push_back("root " + std::to_string(x) + " has several S-neighbours");
    }
    ++observed[canonical_shape(tree, root, removed).code];
  }
  ForestShape expected;
  for (const auto& [code, count] : split.shape) expected[code] = count * split.multiplicity;
  if (observed != expected) problems.push_back("component codes differ from shape x multiplicity");
  return problems;
}

}  // namespace neargrace
