#pragma once

#include <string>
#include <string_view>

#include "neargrace/labelling.hpp"
#include "neargrace/splitter.hpp"
#include "neargrace/tree.hpp"

namespace neargrace {

/// "vertex label" per line; '#' comments and blank lines are skipped. Every
/// vertex 0..n-1 must appear exactly once. label_bound is set to the largest
/// label unless `bound` is positive.
Labelling parse_labelling(std::string_view text, int n, Label bound = 0);
std::string to_labelling_document(const Labelling& lab);

/// JSON with sorted keys.
std::string report_to_json(const EmbeddingReport& report);
std::string split_to_json(const SplitResult& split);

/// Undirected DOT graph: node captions carry labels, edge captions colours.
std::string to_dot(const Tree& tree, const Labelling& lab);
/// Recovers the labelling from the node captions written by to_dot.
Labelling labelling_from_dot(std::string_view dot, int n);

}  // namespace neargrace
