#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "neargrace/embedder.hpp"

namespace neargrace {

namespace {

class ColourBook {
 public:
  ColourBook(const Tree& tree, const Labelling& lab) : count_(lab.label_bound + 1, 0) {
    for (const Edge& e : tree.edges()) add(std::abs(lab.label[e.u] - lab.label[e.v]));
  }
  void add(Colour c) {
    if (count_[c]++ == 0) ++distinct_;
  }
  void remove(Colour c) {
    if (--count_[c] == 0) --distinct_;
  }
  int count(Colour c) const { return count_[c]; }
  int distinct() const { return distinct_; }

 private:
  std::vector<int> count_;
  int distinct_ = 0;
};

}  // namespace

Labelling repair_pass(const Tree& tree, Labelling lab, int budget, RepairTrace* trace) {
  validate(tree, lab, 1);
  const Label bound = lab.label_bound;
  if (bound <= 0) throw std::invalid_argument("repair_pass needs a positive label bound");

  ColourBook book(tree, lab);
  std::vector<char> used(bound + 1, 0);
  for (Label l : lab.label) used[l] = 1;
  std::vector<Label> free_labels;
  for (Label l = 1; l <= bound; ++l)
    if (!used[l]) free_labels.push_back(l);
  if (trace) trace->distinct.push_back(book.distinct());
  if (free_labels.empty()) return lab;

  auto colour = [&](Vertex a, Vertex b) { return std::abs(lab.label[a] - lab.label[b]); };

  // Best strictly improving move of x to a free label; returns index into
  // free_labels or -1. `gain` receives the distinct-count change.
  // stamp[c] == round marks colour c as already gained for the current label.
  std::vector<int> stamp(bound + 1, -1);
  int round = 0;
  auto best_move = [&](Vertex x, int& gain) {
    const auto nb = tree.neighbours(x);
    const int before = book.distinct();
    for (Vertex y : nb) book.remove(colour(x, y));
    const int base = book.distinct();
    const int ceiling = base + static_cast<int>(nb.size());
    int best = -1;
    int best_value = before;
    for (std::size_t k = 0; k < free_labels.size(); ++k) {
      const Label l = free_labels[k];
      ++round;
      int value = base;
      for (Vertex y : nb) {
        const Colour c = std::abs(l - lab.label[y]);
        if (book.count(c) == 0 && stamp[c] != round) {
          ++value;
          stamp[c] = round;
        }
      }
      if (value > best_value) {
        best_value = value;
        best = static_cast<int>(k);
        if (value == ceiling) break;
      }
    }
    for (Vertex y : nb) book.add(colour(x, y));
    gain = best_value - before;
    return best;
  };

  int moves = 0;
  // failed_at[x] == moves: x had no improving move and nothing changed since.
  std::vector<int> failed_at(tree.order(), -1);
  bool improved = true;
  while (improved && moves < budget) {
    improved = false;
    for (const Edge& e : tree.edges()) {
      if (moves >= budget) break;
      if (book.count(colour(e.u, e.v)) < 2) continue;
      // Lower degree first: cheaper to scan and disturbs fewer colours.
      const bool swap = tree.degree(e.v) < tree.degree(e.u);
      for (Vertex x : {swap ? e.v : e.u, swap ? e.u : e.v}) {
        if (failed_at[x] == moves) continue;
        int gain = 0;
        const int k = best_move(x, gain);
        if (k < 0) {
          failed_at[x] = moves;
          continue;
        }
        for (Vertex y : tree.neighbours(x)) book.remove(colour(x, y));
        const Label old = lab.label[x];
        lab.label[x] = free_labels[k];
        for (Vertex y : tree.neighbours(x)) book.add(colour(x, y));
        // Keep the free list sorted so scans stay ascending and deterministic.
        free_labels.erase(free_labels.begin() + k);
        free_labels.insert(std::lower_bound(free_labels.begin(), free_labels.end(), old), old);
        ++moves;
        improved = true;
        if (trace) trace->distinct.push_back(book.distinct());
        break;
      }
    }
  }
  return lab;
}

}  // namespace neargrace
