#include "neargrace/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace neargrace {

namespace {

// Vertices in connected order from a maximum-degree vertex, higher degree
// first among siblings, so every vertex after the first has a labelled parent.
struct Order {
  std::vector<Vertex> vertex;
  std::vector<int> parent;  // position of the parent in `vertex`
};

Order growth_order(const Tree& tree) {
  const int n = tree.order();
  Vertex root = 0;
  for (Vertex v = 1; v < n; ++v)
    if (tree.degree(v) > tree.degree(root)) root = v;
  Order ord;
  std::vector<int> pos(n, -1);
  ord.vertex.push_back(root);
  ord.parent.push_back(-1);
  pos[root] = 0;
  for (std::size_t i = 0; i < ord.vertex.size(); ++i) {
    std::vector<Vertex> kids;
    for (Vertex y : tree.neighbours(ord.vertex[i]))
      if (pos[y] < 0) kids.push_back(y);
    std::sort(kids.begin(), kids.end(), [&](Vertex a, Vertex b) {
      return tree.degree(a) != tree.degree(b) ? tree.degree(a) > tree.degree(b) : a < b;
    });
    for (Vertex y : kids) {
      pos[y] = static_cast<int>(ord.vertex.size());
      ord.vertex.push_back(y);
      ord.parent.push_back(static_cast<int>(i));
    }
  }
  return ord;
}

// 1, n, 2, n - 1, ...
std::vector<Label> extremes_first(int n) {
  std::vector<Label> out;
  for (int lo = 1, hi = n; lo <= hi; ++lo, --hi) {
    out.push_back(lo);
    if (hi != lo) out.push_back(hi);
  }
  return out;
}

class Search {
 public:
  Search(const Tree& tree, bool graceful, long long budget)
      : n_(tree.order()),
        graceful_(graceful),
        budget_(budget),
        ord_(growth_order(tree)),
        candidates_(extremes_first(n_)),
        label_(n_, 0),
        label_used_(n_ + 1, 0),
        colour_count_(n_ + 1, 0) {}

  void run() {
    if (n_ == 1) {
      best_ = {1};
      best_distinct_ = 0;
      return;
    }
    descend(0);
  }

  long long nodes() const { return nodes_; }
  int best_distinct() const { return best_distinct_; }
  bool found() const { return !best_.empty(); }
  bool exhausted() const { return exhausted_; }

  Labelling witness() const {
    Labelling lab = Labelling::unassigned(n_, n_);
    for (int k = 0; k < n_; ++k) lab.label[ord_.vertex[k]] = best_[k];
    return lab;
  }

 private:
  // false when the budget ran out or the search is finished early.
  bool descend(int k) {
    if (k == n_) {
      if (distinct_ > best_distinct_ || best_.empty()) {
        best_distinct_ = distinct_;
        best_ = label_;
      }
      return true;
    }
    const int half = (n_ + 1) / 2;
    for (Label x : candidates_) {
      if (label_used_[x]) continue;
      if (k == 0 && x > half) continue;  // complement symmetry
      int c = 0;
      if (k > 0) {
        c = std::abs(x - label_[ord_.parent[k]]);
        if (graceful_ && colour_count_[c] > 0) continue;
      }
      if (budget_ >= 0 && nodes_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++nodes_;
      label_[k] = x;
      label_used_[x] = 1;
      if (k > 0 && colour_count_[c]++ == 0) ++distinct_;
      bool ok = true;
      // Remaining edges can add at most one colour each.
      if (graceful_ || distinct_ + (n_ - 1 - k) > best_distinct_ || best_.empty()) ok = descend(k + 1);
      if (k > 0 && --colour_count_[c] == 0) --distinct_;
      label_used_[x] = 0;
      if (!ok) return false;
      if (stop()) return true;
    }
    return true;
  }

  bool stop() const { return !best_.empty() && best_distinct_ == n_ - 1; }

  int n_;
  bool graceful_;
  long long budget_;
  Order ord_;
  std::vector<Label> candidates_;
  std::vector<Label> label_;
  std::vector<char> label_used_;
  std::vector<int> colour_count_;
  int distinct_ = 0;
  long long nodes_ = 0;
  std::vector<Label> best_;
  int best_distinct_ = 0;
  bool exhausted_ = false;
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

GracefulSearch solve_graceful(const Tree& tree, long long budget) {
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  Search search(tree, true, budget);
  search.run();
  GracefulSearch out;
  out.stats.nodes_expanded = search.nodes();
  out.stats.budget_exhausted = search.exhausted();
  if (search.found()) {
    out.labelling = search.witness();
    out.stats.best_found = tree.size();
    out.stats.proven_optimal = true;
  } else {
    out.stats.proven_optimal = !search.exhausted();
  }
  out.stats.elapsed_ms = since(t0);
  return out;
}

GracesizeSearch max_gracesize(const Tree& tree) {
  if (tree.order() > 11) throw TreeError(TreeErrorKind::kUnsupported, "exact gracesize needs n <= 11");
  const auto t0 = std::chrono::steady_clock::now();
  Search search(tree, false, -1);
  search.run();
  GracesizeSearch out;
  out.labelling = search.witness();
  out.gracesize = search.best_distinct();
  out.stats.nodes_expanded = search.nodes();
  out.stats.best_found = out.gracesize;
  out.stats.proven_optimal = true;
  out.stats.elapsed_ms = since(t0);
  return out;
}

}  // namespace neargrace
