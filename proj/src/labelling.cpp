#include "neargrace/labelling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <unordered_map>

namespace neargrace {

std::string_view to_string(LabellingErrorKind kind) {
  switch (kind) {
    case LabellingErrorKind::kSizeMismatch: return "size-mismatch";
    case LabellingErrorKind::kUnassigned: return "unassigned-vertex";
    case LabellingErrorKind::kNotInjective: return "not-injective";
    case LabellingErrorKind::kOutOfRange: return "label-out-of-range";
    case LabellingErrorKind::kMalformed: return "malformed";
  }
  return "unknown";
}

Label Labelling::max_label() const {
  Label best = 0;
  for (Label l : label) best = std::max(best, l);
  return best;
}

void validate(const Tree& tree, const Labelling& lab, Label min_label) {
  if (lab.size() != tree.order()) {
    throw LabellingError(LabellingErrorKind::kSizeMismatch,
                         "labelling covers " + std::to_string(lab.size()) + " vertices, tree has " +
                             std::to_string(tree.order()));
  }
  std::vector<Label> sorted;
  sorted.reserve(lab.label.size());
  for (Vertex v = 0; v < tree.order(); ++v) {
    const Label l = lab.label[v];
    if (l == kUnlabelled) {
      throw LabellingError(LabellingErrorKind::kUnassigned,
                           "vertex " + std::to_string(v) + " has no label");
    }
    if (l < min_label || (lab.label_bound > 0 && l > lab.label_bound)) {
      throw LabellingError(LabellingErrorKind::kOutOfRange,
                           "label " + std::to_string(l) + " of vertex " + std::to_string(v) +
                               " outside [" + std::to_string(min_label) + ", " +
                               std::to_string(lab.label_bound) + "]");
    }
    sorted.push_back(l);
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw LabellingError(LabellingErrorKind::kNotInjective,
                         "label " + std::to_string(*dup) + " used twice");
  }
}

std::vector<Colour> edge_differences(const Tree& tree, const Labelling& lab) {
  validate(tree, lab, 1);
  std::vector<Colour> colours;
  colours.reserve(tree.edges().size());
  for (const Edge& e : tree.edges()) colours.push_back(std::abs(lab.label[e.u] - lab.label[e.v]));
  return colours;
}

namespace {

int count_distinct(std::vector<Colour> colours) {
  std::sort(colours.begin(), colours.end());
  return static_cast<int>(std::unique(colours.begin(), colours.end()) - colours.begin());
}

bool exactly_one_to_n(const Labelling& lab) {
  const int n = lab.size();
  std::vector<char> seen(n + 1, 0);
  for (Label l : lab.label) {
    if (l < 1 || l > n || seen[l]) return false;
    seen[l] = 1;
  }
  return true;
}

}  // namespace

int gracesize_of(const Tree& tree, const Labelling& lab) {
  return count_distinct(edge_differences(tree, lab));
}

bool is_graceful(const Tree& tree, const Labelling& lab) {
  return exactly_one_to_n(lab) && gracesize_of(tree, lab) == tree.size();
}

PartialCensus partial_census(const Tree& tree, const Labelling& lab) {
  PartialCensus census;
  std::unordered_map<Label, int> seen;
  for (Label l : lab.label) {
    if (l == kUnlabelled) continue;
    if (++seen[l] > 1) census.injective = false;
  }
  std::vector<Colour> colours;
  for (const Edge& e : tree.edges()) {
    if (lab.label[e.u] == kUnlabelled || lab.label[e.v] == kUnlabelled) continue;
    colours.push_back(std::abs(lab.label[e.u] - lab.label[e.v]));
  }
  census.labelled_edges = static_cast<int>(colours.size());
  census.distinct = count_distinct(std::move(colours));
  return census;
}

int EmbeddingReport::excess() const {
  int total = 0;
  for (const auto& [colour, mult] : repeated) total += mult - 1;
  return total;
}

EmbeddingReport check_report(const Tree& tree, const Labelling& lab, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  validate(tree, lab, 1);
  std::vector<Colour> colours = edge_differences(tree, lab);
  std::sort(colours.begin(), colours.end());

  EmbeddingReport report;
  report.n = tree.order();
  report.edges = tree.size();
  report.labels_used = lab.size();
  report.max_label = lab.max_label();
  report.label_bound = lab.label_bound;
  report.epsilon = epsilon;
  for (std::size_t i = 0; i < colours.size();) {
    std::size_t j = i;
    while (j < colours.size() && colours[j] == colours[i]) ++j;
    ++report.distinct;
    if (j - i >= 2) report.repeated.emplace_back(colours[i], static_cast<int>(j - i));
    i = j;
  }
  report.graceful = report.distinct == report.edges && exactly_one_to_n(lab);
  if (report.graceful) {
    for (int c = 1; c <= report.edges; ++c) {
      if (colours[c - 1] != c) throw std::logic_error("graceful labelling without colours 1..n-1");
    }
  }
  report.near_graceful = report.distinct >= min_distinct_for(report.n, epsilon) &&
                         report.max_label <= max_label_for(report.n, epsilon);
  return report;
}

namespace {

constexpr std::int64_t kGrid = 1'000'000'000;

std::int64_t snap(double epsilon) { return std::llround(epsilon * static_cast<double>(kGrid)); }

}  // namespace

int min_distinct_for(int n, double epsilon) {
  const std::int64_t num = static_cast<std::int64_t>(n) * (kGrid - snap(epsilon));
  return static_cast<int>((num + kGrid - 1) / kGrid);
}

Label max_label_for(int n, double epsilon) {
  const std::int64_t num = static_cast<std::int64_t>(n) * (kGrid + snap(epsilon));
  return static_cast<Label>(num / kGrid);
}

}  // namespace neargrace
