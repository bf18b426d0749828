#include "neargrace/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace neargrace {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

Labelling from_pairs(const std::vector<std::pair<long long, long long>>& pairs, int n, Label bound) {
  Labelling lab = Labelling::unassigned(n, 0);
  for (auto [v, x] : pairs) {
    if (v < 0 || v >= n) throw LabellingError(LabellingErrorKind::kOutOfRange, "vertex " + std::to_string(v) + " out of range");
    if (lab.label[v] != kUnlabelled) throw LabellingError(LabellingErrorKind::kMalformed, "vertex " + std::to_string(v) + " labelled twice");
    if (x < 0 || x > 1'000'000'000) throw LabellingError(LabellingErrorKind::kOutOfRange, "label " + std::to_string(x) + " out of range");
    lab.label[v] = static_cast<Label>(x);
  }
  for (Vertex v = 0; v < n; ++v)
    if (lab.label[v] == kUnlabelled) throw LabellingError(LabellingErrorKind::kUnassigned, "vertex " + std::to_string(v) + " has no label");
  lab.label_bound = bound > 0 ? bound : lab.max_label();
  return lab;
}

}  // namespace

Labelling parse_labelling(std::string_view text, int n, Label bound) {
  std::vector<std::pair<long long, long long>> pairs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream fields(t);
    long long v = 0, x = 0;
    std::string extra;
    if (!(fields >> v >> x) || (fields >> extra)) {
      throw LabellingError(LabellingErrorKind::kMalformed, "line " + std::to_string(lineno) + ": expected 'vertex label'");
    }
    pairs.push_back({v, x});
  }
  return from_pairs(pairs, n, bound);
}

std::string to_labelling_document(const Labelling& lab) {
  std::ostringstream out;
  out << "# vertex label\n";
  for (Vertex v = 0; v < lab.size(); ++v) out << v << ' ' << lab.label[v] << '\n';
  return out.str();
}

std::string report_to_json(const EmbeddingReport& r) {
  json repeated = json::array();
  for (auto [c, mult] : r.repeated) repeated.push_back({{"colour", c}, {"multiplicity", mult}});
  json log = json::array();
  for (const auto& e : r.stage_log) log.push_back({{"stage", e.stage}, {"detail", e.detail}});
  const json j = {{"n", r.n},
                  {"edges", r.edges},
                  {"labels_used", r.labels_used},
                  {"max_label", r.max_label},
                  {"label_bound", r.label_bound},
                  {"distinct", r.distinct},
                  {"excess", r.excess()},
                  {"repeated", repeated},
                  {"graceful", r.graceful},
                  {"near_graceful", r.near_graceful},
                  {"epsilon", r.epsilon},
                  {"stage_log", log}};
  return j.dump(2);
}

std::string split_to_json(const SplitResult& split) {
  json shape = json::object();
  for (const auto& [code, count] : split.shape) shape[code] = count;
  json roots = json::array();
  for (const auto& c : split.components) roots.push_back(c.root);
  const json j = {{"feasible", split.feasible},
                  {"diagnostics", split.diagnostics},
                  {"s", split.s},
                  {"w", split.w},
                  {"w_parts", {{"steiner", split.w1}, {"centroid", split.w2}, {"trim", split.w3}}},
                  {"shape", shape},
                  {"multiplicity", split.multiplicity},
                  {"component_roots", roots},
                  {"m", split.config.m},
                  {"delta", split.config.delta}};
  return j.dump(2);
}

std::string to_dot(const Tree& tree, const Labelling& lab) {
  std::ostringstream out;
  out << "graph T {\n";
  for (Vertex v = 0; v < tree.order(); ++v) out << "  " << v << " [label=\"" << lab.label[v] << "\"];\n";
  for (const Edge& e : tree.edges()) {
    out << "  " << e.u << " -- " << e.v << " [label=\"" << std::abs(lab.label[e.u] - lab.label[e.v]) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Labelling labelling_from_dot(std::string_view dot, int n) {
  static const std::regex node(R"re(^\s*(\d+)\s*\[label="(-?\d+)"\];?\s*$)re");
  std::vector<std::pair<long long, long long>> pairs;
  std::istringstream in{std::string(dot)};
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, node)) pairs.push_back({std::stoll(m[1]), std::stoll(m[2])});
  }
  return from_pairs(pairs, n, 0);
}

}  // namespace neargrace
