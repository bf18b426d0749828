// neargrace: generate trees, label them near-gracefully, verify, search exactly, benchmark.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "neargrace/bench.hpp"
#include "neargrace/embedder.hpp"
#include "neargrace/exact.hpp"
#include "neargrace/families.hpp"
#include "neargrace/io.hpp"

using namespace neargrace;

namespace {

struct Failure {
  std::string kind;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"io", "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"io", "cannot write " + path};
  out << text;
}

struct TreeSource {
  std::string in;
  std::string family = "random";
  std::optional<int> n;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--in", in, "edge-list file ('-' for stdin)");
    app->add_option("--family", family, "random|path|star|caterpillar|spider|binary|broom");
    app->add_option("--n", n, "vertex count for --family");
    app->add_option("--seed", seed, "seed");
  }

  Tree load() const {
    if (!in.empty()) {
      if (in == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return parse_tree(buf.str());
      }
      return parse_tree(slurp(in));
    }
    if (!n) throw Failure{"usage", "give --in or --n"};
    if (*n < 1) throw Failure{"usage", "--n must be >= 1"};
    return gen_family(family, *n, seed);
  }
};

// Parses "a,b,c" into values.
template <class T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::istringstream conv(item);
    T value{};
    if (!(conv >> value)) throw Failure{"usage", "bad list entry '" + item + "'"};
    out.push_back(value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"near-graceful tree labelling"};
  app.require_subcommand(1);

  TreeSource gen_src;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a family tree as an edge list");
  gen_src.attach(gen);
  gen->add_option("--out", gen_out, "output file");

  TreeSource label_src;
  double label_eps = 0.2;
  std::string label_out, label_report;
  bool bijective = false;
  auto* label = app.add_subcommand("label", "near-graceful labelling with a report");
  label_src.attach(label);
  label->add_option("--epsilon", label_eps, "epsilon in (0,1)");
  label->add_option("--out", label_out, "labelling document");
  label->add_option("--report", label_report, "report JSON (default stdout)");
  label->add_flag("--bijective", bijective, "labels exactly 1..n");

  TreeSource verify_src;
  std::string verify_labels, verify_require;
  double verify_eps = 0.2;
  auto* verify = app.add_subcommand("verify", "recompute a report from tree and labelling");
  verify_src.attach(verify);
  verify->add_option("--labels", verify_labels, "labelling document")->required();
  verify->add_option("--epsilon", verify_eps, "epsilon in (0,1)");
  verify->add_option("--require", verify_require, "graceful|near-graceful: exit 1 unless the verdict holds");

  TreeSource exact_src;
  long long budget = 2'000'000;
  bool all = false;
  std::string exact_out;
  auto* exact = app.add_subcommand("solve-exact", "exact graceful search");
  exact_src.attach(exact);
  exact->add_option("--budget", budget, "node budget per tree");
  exact->add_flag("--all", all, "every isomorphism class with --n vertices");
  exact->add_option("--out", exact_out, "labelling document of the single tree");

  std::string bench_families = "random,caterpillar,spider,binary", bench_sizes = "1000,10000,100000";
  int bench_seeds = 10, bench_threads = 1;
  double bench_eps = 0.2;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "family x n x seed sweep to CSV");
  bench->add_option("--families", bench_families, "comma-separated families");
  bench->add_option("--n", bench_sizes, "comma-separated sizes");
  bench->add_option("--seeds", bench_seeds, "seeds 0..k-1");
  bench->add_option("--epsilon", bench_eps, "epsilon");
  bench->add_option("--threads", bench_threads, "worker threads");
  bench->add_option("--out", bench_out, "CSV file");

  TreeSource dot_src;
  std::string dot_labels, dot_out;
  auto* dot = app.add_subcommand("export-dot", "DOT with labels and colours as captions");
  dot_src.attach(dot);
  dot->add_option("--labels", dot_labels, "labelling document")->required();
  dot->add_option("--out", dot_out, "DOT file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen) {
      emit(gen_out, to_edge_list(gen_src.load()));
    } else if (*label) {
      const Tree tree = label_src.load();
      NearGracefulOptions opts;
      opts.bijective = bijective;
      const NearGracefulResult r = near_graceful(tree, label_eps, label_src.seed, opts);
      // Independent recount before anything leaves the process.
      const EmbeddingReport check = check_report(tree, r.labelling, label_eps);
      if (check.distinct != r.report.distinct || check.max_label != r.report.max_label ||
          check.repeated != r.report.repeated) {
        throw Failure{"verification", "report disagrees with recount"};
      }
      if (!label_out.empty()) emit(label_out, to_labelling_document(r.labelling));
      emit(label_report, report_to_json(r.report) + "\n");
    } else if (*verify) {
      const Tree tree = verify_src.load();
      const Labelling lab = parse_labelling(slurp(verify_labels), tree.order());
      const EmbeddingReport report = check_report(tree, lab, verify_eps);
      std::cout << report_to_json(report) << '\n';
      if (verify_require == "graceful" && !report.graceful) return 1;
      if (verify_require == "near-graceful" && !report.near_graceful) return 1;
      if (!verify_require.empty() && verify_require != "graceful" && verify_require != "near-graceful") {
        throw Failure{"usage", "--require takes graceful or near-graceful"};
      }
    } else if (*exact) {
      if (all) {
        if (!exact_src.n) throw Failure{"usage", "--all needs --n"};
        const int n = *exact_src.n;
        const auto trees = enumerate_trees(n);
        int graceful = 0;
        long long nodes = 0;
        for (const Tree& t : trees) {
          const GracefulSearch g = solve_graceful(t, budget);
          nodes += g.stats.nodes_expanded;
          if (g.labelling && is_graceful(t, *g.labelling)) ++graceful;
        }
        std::cout << "n=" << n << " classes=" << trees.size() << " graceful=" << graceful
                  << " nodes=" << nodes << '\n';
        if (graceful != static_cast<int>(trees.size())) return 1;
      } else {
        const Tree tree = exact_src.load();
        const GracefulSearch g = solve_graceful(tree, budget);
        std::cout << "nodes=" << g.stats.nodes_expanded << " found=" << (g.labelling ? 1 : 0)
                  << " budget_exhausted=" << (g.stats.budget_exhausted ? 1 : 0) << '\n';
        if (!g.labelling) return 1;
        emit(exact_out.empty() ? "-" : exact_out, to_labelling_document(*g.labelling));
      }
    } else if (*bench) {
      BenchGrid grid;
      grid.families = split_list<std::string>(bench_families);
      grid.sizes = split_list<int>(bench_sizes);
      for (int s = 0; s < bench_seeds; ++s) grid.seeds.push_back(static_cast<std::uint64_t>(s));
      grid.epsilon = bench_eps;
      grid.threads = bench_threads;
      emit(bench_out, to_csv(run_bench(grid)));
    } else if (*dot) {
      const Tree tree = dot_src.load();
      emit(dot_out, to_dot(tree, parse_labelling(slurp(dot_labels), tree.order())));
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.kind << ": " << f.message << '\n';
    return 2;
  } catch (const TreeError& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 2;
  } catch (const LabellingError& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid-argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
