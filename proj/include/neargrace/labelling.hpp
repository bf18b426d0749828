#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neargrace/tree.hpp"

namespace neargrace {

using Label = int;
using Colour = int;

inline constexpr Label kUnlabelled = -1;

enum class LabellingErrorKind {
  kSizeMismatch,
  kUnassigned,
  kNotInjective,
  kOutOfRange,
  kMalformed,
};

std::string_view to_string(LabellingErrorKind kind);

class LabellingError : public std::runtime_error {
 public:
  LabellingError(LabellingErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  LabellingErrorKind kind() const noexcept { return kind_; }

 private:
  LabellingErrorKind kind_;
};

/// Vertex id -> label. Labels are positive for finished labellings; the
/// embedders also use label 0 for a hub vertex.
struct Labelling {
  std::vector<Label> label;
  Label label_bound = 0;

  static Labelling unassigned(int n, Label bound) {
    return Labelling{std::vector<Label>(n, kUnlabelled), bound};
  }
  int size() const { return static_cast<int>(label.size()); }
  bool assigned(Vertex v) const { return label[v] != kUnlabelled; }
  Label max_label() const;
};

/// Throws unless every vertex is labelled, labels are pairwise distinct and lie
/// in [min_label, label_bound].
void validate(const Tree& tree, const Labelling& lab, Label min_label = 1);

/// One colour per edge, in edge order.
std::vector<Colour> edge_differences(const Tree& tree, const Labelling& lab);

int gracesize_of(const Tree& tree, const Labelling& lab);
bool is_graceful(const Tree& tree, const Labelling& lab);

/// Distinct colours among edges whose endpoints are both labelled; injectivity
/// is checked over labelled vertices only.
struct PartialCensus {
  bool injective = true;
  int labelled_edges = 0;
  int distinct = 0;
  bool rainbow() const { return injective && distinct == labelled_edges; }
};
PartialCensus partial_census(const Tree& tree, const Labelling& lab);

struct StageEntry {
  std::string stage;
  std::string detail;
};

struct EmbeddingReport {
  int n = 0;
  int edges = 0;
  int labels_used = 0;
  Label max_label = 0;
  Label label_bound = 0;
  int distinct = 0;
  std::vector<std::pair<Colour, int>> repeated;  // (colour, multiplicity >= 2), ascending
  bool graceful = false;
  bool near_graceful = false;
  double epsilon = 0.0;
  std::vector<StageEntry> stage_log;

  int excess() const;
};

EmbeddingReport check_report(const Tree& tree, const Labelling& lab, double epsilon);

/// ceil((1 - eps) n) and floor((1 + eps) n), with eps snapped to a 1e-9 grid so
/// that values like 0.3 do not pick up binary rounding noise.
int min_distinct_for(int n, double epsilon);
Label max_label_for(int n, double epsilon);

}  // namespace neargrace
