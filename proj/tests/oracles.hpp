#pragma once

// Brute-force checks used as ground truth. Nothing here calls into the
// library beyond reading a Tree's edge list.

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "neargrace/labelling.hpp"
#include "neargrace/tree.hpp"

namespace oracle {

using neargrace::Label;
using neargrace::Tree;
using neargrace::Vertex;

inline std::vector<std::vector<int>> adjacency(int n, const std::vector<neargrace::Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

// Sizes of the components left after deleting `removed`, plus a component id
// per vertex (-1 for removed ones).
struct Census {
  std::vector<int> sizes;
  std::vector<int> comp;
};

inline Census components_without(const Tree& t, const std::vector<char>& removed) {
  const auto adj = adjacency(t.order(), t.edges());
  Census c;
  c.comp.assign(t.order(), -1);
  for (int s = 0; s < t.order(); ++s) {
    if (removed[s] || c.comp[s] >= 0) continue;
    const int id = static_cast<int>(c.sizes.size());
    c.sizes.push_back(0);
    std::queue<int> q;
    q.push(s);
    c.comp[s] = id;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      ++c.sizes[id];
      for (int y : adj[x])
        if (!removed[y] && c.comp[y] < 0) {
          c.comp[y] = id;
          q.push(y);
        }
    }
  }
  return c;
}

inline bool connected(const Tree& t) {
  const std::vector<char> none(t.order(), 0);
  return components_without(t, none).sizes.size() == 1;
}

// Is there a bijection mapping edges to edges (and r1 to r2 when rooted)?
// Tries every permutation; fine up to n = 9.
inline bool isomorphic(int n, const std::vector<neargrace::Edge>& e1, const std::vector<neargrace::Edge>& e2,
                       int r1 = -1, int r2 = -1) {
  if (e1.size() != e2.size()) return false;
  std::set<std::pair<int, int>> target;
  for (const auto& e : e2) target.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (r1 >= 0 && p[r1] != r2) continue;
    bool ok = true;
    for (const auto& e : e1) {
      const int a = p[e.u], b = p[e.v];
      if (!target.count({std::min(a, b), std::max(a, b)})) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline long long automorphisms(const Tree& t) {
  std::set<std::pair<int, int>> target;
  for (const auto& e : t.edges()) target.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::vector<int> p(t.order());
  std::iota(p.begin(), p.end(), 0);
  long long count = 0;
  do {
    bool ok = true;
    for (const auto& e : t.edges()) {
      const int a = p[e.u], b = p[e.v];
      if (!target.count({std::min(a, b), std::max(a, b)})) {
        ok = false;
        break;
      }
    }
    count += ok ? 1 : 0;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Colour multiset by hashing, independent of the verifier.
inline std::unordered_map<int, int> colour_counts(const Tree& t, const std::vector<Label>& label) {
  std::unordered_map<int, int> counts;
  for (const auto& e : t.edges()) ++counts[std::abs(label[e.u] - label[e.v])];
  return counts;
}

inline int distinct_colours(const Tree& t, const std::vector<Label>& label) {
  return static_cast<int>(colour_counts(t, label).size());
}

inline bool injective(const std::vector<Label>& label) {
  std::set<Label> seen(label.begin(), label.end());
  return seen.size() == label.size();
}

// Rainbow over the edges whose endpoints are both labelled (label >= lo).
inline bool rainbow_on_labelled(const Tree& t, const std::vector<Label>& label, Label lo = 0) {
  std::set<int> seen;
  std::set<Label> used;
  for (Label x : label) {
    if (x < lo) continue;
    if (!used.insert(x).second) return false;
  }
  for (const auto& e : t.edges()) {
    if (label[e.u] < lo || label[e.v] < lo) continue;
    if (!seen.insert(std::abs(label[e.u] - label[e.v])).second) return false;
  }
  return true;
}

// Unlabelled tree counts from the rooted-tree recurrence and Otter's
// dissimilarity formula, with no enumeration at all.
inline std::vector<long long> rooted_tree_counts(int upto) {
  std::vector<long long> r(upto + 1, 0);
  if (upto >= 1) r[1] = 1;
  for (int n = 1; n < upto; ++n) {
    long long sum = 0;
    for (int k = 1; k <= n; ++k) {
      long long s = 0;
      for (int d = 1; d <= k; ++d)
        if (k % d == 0) s += d * r[d];
      sum += s * r[n - k + 1];
    }
    r[n + 1] = sum / n;
  }
  return r;
}

inline long long free_tree_count(int n) {
  const auto r = rooted_tree_counts(n);
  if (n <= 1) return n == 1 ? 1 : 0;
  long long pairs = 0;
  for (int i = 1; i < n; ++i) pairs += r[i] * r[n - i];
  if (n % 2 == 0) pairs -= r[n / 2];
  return r[n] - pairs / 2;
}

}  // namespace oracle
