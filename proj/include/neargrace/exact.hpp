#pragma once

#include <optional>

#include "neargrace/labelling.hpp"
#include "neargrace/tree.hpp"

namespace neargrace {

struct SearchStats {
  long long nodes_expanded = 0;
  int best_found = 0;  // distinct colours of the best complete labelling seen
  bool proven_optimal = false;
  bool budget_exhausted = false;
  double elapsed_ms = 0.0;
};

struct GracefulSearch {
  std::optional<Labelling> labelling;  // graceful, labels exactly 1..n
  SearchStats stats;
};

/// Backtracking search for a graceful labelling, expanding at most `budget`
/// nodes. An empty result with budget_exhausted = false means none exists.
GracefulSearch solve_graceful(const Tree& tree, long long budget);

struct GracesizeSearch {
  Labelling labelling;  // bijective onto 1..n
  int gracesize = 0;
  SearchStats stats;
};

/// Exact gracesize by branch and bound over bijective labellings; n <= 11.
GracesizeSearch max_gracesize(const Tree& tree);

}  // namespace neargrace
