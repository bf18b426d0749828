#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "neargrace/matching.hpp"

namespace oracle {

// Edges of the gadget straight from E_c = {((n-c+i)/2, (n+c+i)/2) : i in [2s]}
// for c != 1, kept when the pair lands in A x B.
inline std::set<neargrace::LabelPair> gadget_by_formula(int n, int s) {
  std::set<neargrace::LabelPair> out;
  for (int c = 2; c <= n; ++c)
    for (int i = 1; i <= 2 * s; ++i) {
      if ((n - c + i) % 2 != 0) continue;
      const int a = (n - c + i) / 2, b = (n + c + i) / 2;
      if (a >= 1 && a <= n / 2 && b > n / 2 && b <= n) out.insert({a, b});
    }
  return out;
}

// Degree and colour-multiplicity census of the library's gadget.
inline std::string gadget_census(int n, int s) {
  const auto g = neargrace::spanning_difference_graph(n, s);
  std::map<int, int> degree, mult;
  for (auto [a, b] : g.edges) {
    ++degree[a];
    ++degree[b];
    ++mult[b - a];
  }
  std::ostringstream err;
  for (auto [v, d] : degree)
    if (d > 2 * s) err << "degree " << d << " at " << v << "; ";
  auto exact_degree = [&](int lo, int hi) {
    for (int v = lo; v <= hi; ++v)
      if (degree[v] != 2 * s) err << "vertex " << v << " has degree " << degree[v] << "; ";
  };
  exact_degree(2 * s, n / 2 - s);
  exact_degree(n / 2 + 2 * s, n - s);
  for (auto [c, k] : mult) {
    if (c == 1) err << "colour 1 present; ";
    if (k > s) err << "colour " << c << " used " << k << " times; ";
  }
  for (int c = 2 * s; c <= n - 2 * s; ++c)
    if (c != 1 && mult[c] != s) err << "colour " << c << " used " << mult[c] << " times; ";
  return err.str();
}

// Perfect, rainbow, colours exactly C_ij, M1/M2 colour parities disjoint.
inline std::string interval_matching_defect(int i, int j, int ell) {
  const int n = (j + 1) * ell;
  const auto m = neargrace::interval_matching(i, j, ell, n);
  std::ostringstream err;
  std::set<int> left, right, colours;
  for (std::size_t k = 0; k < m.pairs.size(); ++k) {
    auto [x, y] = m.pairs[k];
    if (x > y) std::swap(x, y);
    left.insert(x);
    right.insert(y);
    colours.insert(y - x);
    if (m.colours[k] != y - x) err << "stored colour differs; ";
  }
  if (static_cast<int>(m.pairs.size()) != ell) err << "not perfect; ";
  for (int v = i * ell + 1; v <= (i + 1) * ell; ++v)
    if (!left.count(v)) err << "missing " << v << "; ";
  for (int v = j * ell + 1; v <= (j + 1) * ell; ++v)
    if (!right.count(v)) err << "missing " << v << "; ";
  const int mid = (j - i) * ell, half = ell / 2;
  std::set<int> want;
  for (int c = mid - half; c <= mid + half; ++c) want.insert(c);
  if (colours != want) err << "colour set differs from C_ij; ";
  // The first ceil(ell/2) pairs and the rest use opposite parities.
  const int first = (ell + 1) / 2;
  std::set<int> p1, p2;
  for (int k = 0; k < static_cast<int>(m.pairs.size()); ++k)
    (k < first ? p1 : p2).insert(std::abs(m.pairs[k].second - m.pairs[k].first) % 2);
  for (int p : p1)
    if (p2.count(p)) err << "M1 and M2 share a parity; ";
  return err.str();
}

}  // namespace oracle
