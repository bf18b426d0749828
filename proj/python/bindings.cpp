#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neargrace/embedder.hpp"
#include "neargrace/exact.hpp"
#include "neargrace/families.hpp"
#include "neargrace/matching.hpp"

namespace py = pybind11;
using namespace neargrace;

namespace {

Labelling to_labelling(const Tree& tree, const std::vector<Label>& labels) {
  if (static_cast<int>(labels.size()) != tree.order()) {
    throw LabellingError(LabellingErrorKind::kSizeMismatch, "one label per vertex expected");
  }
  Labelling lab{labels, 0};
  lab.label_bound = lab.max_label();
  return lab;
}

py::dict report_dict(const EmbeddingReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["edges"] = r.edges;
  d["labels_used"] = r.labels_used;
  d["max_label"] = r.max_label;
  d["label_bound"] = r.label_bound;
  d["distinct"] = r.distinct;
  d["excess"] = r.excess();
  d["repeated"] = r.repeated;
  d["graceful"] = r.graceful;
  d["near_graceful"] = r.near_graceful;
  d["epsilon"] = r.epsilon;
  py::list log;
  for (const auto& e : r.stage_log) log.append(py::make_tuple(e.stage, e.detail));
  d["stage_log"] = log;
  return d;
}

}  // namespace

PYBIND11_MODULE(_neargrace, m) {
  m.doc() = "near-graceful tree labelling";

  py::register_exception<TreeError>(m, "TreeError", PyExc_ValueError);
  py::register_exception<LabellingError>(m, "LabellingError", PyExc_ValueError);

  py::class_<Tree>(m, "Tree")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             std::vector<Edge> es;
             for (auto [u, v] : edges) es.push_back({u, v});
             return Tree(n, std::move(es));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("order", &Tree::order)
      .def_property_readonly("size", &Tree::size)
      .def("edges", [](const Tree& t) {
        std::vector<std::pair<int, int>> out;
        for (const Edge& e : t.edges()) out.push_back({e.u, e.v});
        return out;
      })
      .def("degree", &Tree::degree)
      .def("__repr__", [](const Tree& t) { return "<Tree n=" + std::to_string(t.order()) + ">"; });

  m.def("parse_tree", [](const std::string& text) { return parse_tree(text); });
  m.def("random_tree", &random_tree, py::arg("n"), py::arg("seed"));
  m.def("gen_family", [](const std::string& f, int n, std::uint64_t seed) { return gen_family(f, n, seed); },
        py::arg("family"), py::arg("n"), py::arg("seed") = 0);
  m.def("enumerate_trees", &enumerate_trees, py::arg("n"));

  m.def("is_graceful", [](const Tree& t, const std::vector<Label>& labels) {
    return is_graceful(t, to_labelling(t, labels));
  });
  m.def("gracesize_of", [](const Tree& t, const std::vector<Label>& labels) {
    return gracesize_of(t, to_labelling(t, labels));
  });
  m.def("check_report", [](const Tree& t, const std::vector<Label>& labels, double eps) {
    return report_dict(check_report(t, to_labelling(t, labels), eps));
  }, py::arg("tree"), py::arg("labels"), py::arg("epsilon"));

  m.def("near_graceful",
        [](const Tree& t, double eps, std::uint64_t seed, bool bijective) {
          NearGracefulOptions opts;
          opts.bijective = bijective;
          NearGracefulResult r;
          {
            py::gil_scoped_release release;
            r = near_graceful(t, eps, seed, opts);
          }
          return py::make_tuple(r.labelling.label, report_dict(r.report));
        },
        py::arg("tree"), py::arg("epsilon"), py::arg("seed") = 0, py::arg("bijective") = false);

  m.def("solve_graceful", [](const Tree& t, long long budget) -> py::object {
    const GracefulSearch g = solve_graceful(t, budget);
    if (!g.labelling) return py::none();
    return py::cast(g.labelling->label);
  }, py::arg("tree"), py::arg("budget") = 2'000'000);

  m.def("interval_matching", [](int i, int j, int ell, int n) {
    return interval_matching(i, j, ell, n).pairs;
  }, py::arg("i"), py::arg("j"), py::arg("ell"), py::arg("n"));
}
