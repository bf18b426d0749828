#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "neargrace/embedder.hpp"
#include "neargrace/exact.hpp"
#include "neargrace/rng.hpp"

namespace neargrace {

namespace {

std::string fmt_eps(double eps) {
  std::ostringstream out;
  out << eps;
  return out.str();
}

// W (and anything else still unlabelled) goes, by ascending id, onto the
// ascending unused labels of [1, bound].
void place_rest(Labelling& lab, Label bound) {
  std::vector<char> used(bound + 1, 0);
  for (Label x : lab.label)
    if (x != kUnlabelled) used[x] = 1;
  Label next = 1;
  for (Label& x : lab.label) {
    if (x != kUnlabelled) continue;
    while (next <= bound && used[next]) ++next;
    if (next > bound) throw std::logic_error("no free label left for the waste set");
    x = next;
    used[next] = 1;
  }
}

Labelling random_injective(int n, Label bound, std::uint64_t seed) {
  Rng rng = make_rng(seed, "fallback-placement");
  std::vector<Label> pool(bound);
  std::iota(pool.begin(), pool.end(), 1);
  shuffle(std::span<Label>(pool), rng);
  Labelling lab = Labelling::unassigned(n, bound);
  std::copy(pool.begin(), pool.begin() + n, lab.label.begin());
  return lab;
}

struct Attempt {
  bool ok = false;
  Labelling labelling;
  std::vector<StageEntry> log;
};

// Degree window, split, rooted embedding, W placement: every stage under the
// internal epsilon, all labels within `cap`.
Attempt constructive(const Tree& tree, double eps_in, Label cap, std::uint64_t seed,
                     const NearGracefulOptions& options) {
  Attempt out;
  const int n = tree.order();
  const DegreeWindow dw = degree_window(tree, eps_in);
  {
    std::ostringstream msg;
    msg << "eps'=" << eps_in << " window=[" << dw.delta << "," << dw.delta_next << ") |U|=" << dw.window.size()
        << " edges=" << dw.window_edges << " |S_high|=" << dw.s_high.size();
    out.log.push_back({"degree-window", msg.str()});
  }
  std::vector<SplitResult> splits;
  for (int m : options.split_orders) {
    SplitResult split = split_structure(tree, dw.s_high, std::nullopt, {m, options.split_delta});
    out.log.push_back({"split", "m=" + std::to_string(m) + " " + (split.feasible ? "" : "infeasible: ") +
                                    split.diagnostics});
    if (split.feasible) splits.push_back(std::move(split));
  }
  if (splits.empty()) return out;

  for (int attempt = 0; attempt < std::max(1, options.seed_retries); ++attempt) {
    bool random_failure = false;
    for (std::size_t k = 0; k < splits.size(); ++k) {
      const SplitResult& split = splits[k];
      const int m = n - static_cast<int>(split.w.size());
      RootedConfig rc = options.rooted;
      rc.label_cap = std::min(cap, max_label_for(m, eps_in));
      EmbedResult er = embed_rooted_structure(tree, split, eps_in,
                                              derive_seed(seed, "rooted", attempt * 64 + k), rc);
      if (!er.ok) {
        // Only hub-embedding failures depend on the seed.
        random_failure = random_failure || er.failure.find("copies") != std::string::npos;
        out.log.push_back({"rooted-structure", "attempt " + std::to_string(attempt + 1) + " m=" +
                                                   std::to_string(split.config.m) + ": " + er.failure});
        continue;
      }
      out.log.insert(out.log.end(), er.log.begin(), er.log.end());
      out.labelling = std::move(er.labelling);
      out.labelling.label_bound = cap;
      place_rest(out.labelling, cap);
      out.log.push_back({"waste-placement", std::to_string(split.w.size()) + " vertices in ascending order"});
      out.ok = true;
      return out;
    }
    if (!random_failure) break;
  }
  return out;
}

NearGracefulResult finish(const Tree& tree, Labelling lab, double epsilon, int budget,
                          std::vector<StageEntry> log) {
  RepairTrace trace;
  lab = repair_pass(tree, std::move(lab), budget, &trace);
  log.push_back({"repair", "distinct " + std::to_string(trace.distinct.front()) + " -> " +
                               std::to_string(trace.distinct.back()) + " in " +
                               std::to_string(trace.distinct.size() - 1) + " moves"});
  NearGracefulResult result;
  result.report = check_report(tree, lab, epsilon);
  result.report.stage_log = std::move(log);
  result.labelling = std::move(lab);
  return result;
}

NearGracefulResult run(const Tree& tree, double epsilon, std::uint64_t seed,
                       const NearGracefulOptions& options, Label cap) {
  const int n = tree.order();
  std::vector<StageEntry> log;
  if (n <= options.exact_up_to) {
    const GracefulSearch gs = solve_graceful(tree, options.exact_budget);
    if (gs.labelling) {
      log.push_back({"exact", "graceful after " + std::to_string(gs.stats.nodes_expanded) + " nodes"});
      Labelling lab = *gs.labelling;
      lab.label_bound = cap;
      return finish(tree, std::move(lab), epsilon, options.repair_budget, std::move(log));
    }
    log.push_back({"exact", "no graceful labelling within " + std::to_string(options.exact_budget) + " nodes"});
  }

  // Internal epsilon relaxed from eps/2 up to eps.
  for (double eps_in : {epsilon / 2, epsilon}) {
    Attempt a = constructive(tree, eps_in, cap, seed, options);
    log.insert(log.end(), a.log.begin(), a.log.end());
    if (a.ok) return finish(tree, std::move(a.labelling), epsilon, options.repair_budget, std::move(log));
  }
  log.push_back({"fallback", "random injective placement into [1," + std::to_string(cap) + "] + repair"});
  return finish(tree, random_injective(n, cap, derive_seed(seed, "fallback")), epsilon,
                options.repair_budget, std::move(log));
}

}  // namespace

std::vector<int> degree_ladder(int n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const int steps = static_cast<int>(std::ceil(4.0 / epsilon - 1e-9));
  std::vector<int> ladder;
  long long delta = 8;
  for (int i = 0; i <= steps; ++i) {
    ladder.push_back(static_cast<int>(std::min<long long>(delta, std::max(n, 1))));
    delta = std::min<long long>(delta * 4, 1LL << 40);
  }
  return ladder;
}

DegreeWindow degree_window(const Tree& tree, double epsilon, int min_index) {
  const int n = tree.order();
  const std::vector<int> ladder = degree_ladder(n, epsilon);
  for (int i = std::max(0, min_index); i + 1 < static_cast<int>(ladder.size()); ++i) {
    DegreeWindow dw;
    dw.index = i;
    dw.delta = ladder[i];
    dw.delta_next = ladder[i + 1];
    std::vector<char> in_u(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      const int d = tree.degree(v);
      if (d >= dw.delta && d < dw.delta_next) {
        dw.window.push_back(v);
        in_u[v] = 1;
      }
      if (d >= dw.delta_next) dw.s_high.push_back(v);
    }
    for (const Edge& e : tree.edges()) dw.window_edges += (in_u[e.u] || in_u[e.v]) ? 1 : 0;
    if (2.0 * dw.window_edges <= epsilon * n) return dw;
  }
  throw std::logic_error("no degree window is light enough");
}

NearGracefulResult near_graceful(const Tree& tree, double epsilon, std::uint64_t seed,
                                 const NearGracefulOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const int n = tree.order();
  if (!options.bijective) return run(tree, epsilon, seed, options, max_label_for(n, epsilon));

  // Trim floor(eps n / 2) leaves, label the rest with eps / 2 inside [n], then
  // put the trimmed leaves on the labels still free.
  const int trim = static_cast<int>(std::floor(epsilon * n / 2.0 + 1e-9));
  std::vector<char> gone(n, 0);
  std::vector<int> degree(n);
  for (Vertex v = 0; v < n; ++v) degree[v] = tree.degree(v);
  for (int k = 0; k < trim && n - k > 2; ++k) {
    Vertex leaf = -1;
    for (Vertex v = 0; v < n && leaf < 0; ++v)
      if (!gone[v] && degree[v] == 1) leaf = v;
    gone[leaf] = 1;
    for (Vertex y : tree.neighbours(leaf))
      if (!gone[y]) --degree[y];
  }
  std::vector<Vertex> keep;
  std::vector<int> index(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (gone[v]) continue;
    index[v] = static_cast<int>(keep.size());
    keep.push_back(v);
  }
  std::vector<Edge> sub_edges;
  for (const Edge& e : tree.edges())
    if (!gone[e.u] && !gone[e.v]) sub_edges.push_back({index[e.u], index[e.v]});
  const Tree sub(static_cast<int>(keep.size()), std::move(sub_edges));
  const double half = epsilon / 2;
  NearGracefulResult inner = run(sub, half, seed, options, std::min<Label>(n, max_label_for(sub.order(), half)));

  Labelling lab = Labelling::unassigned(n, n);
  for (std::size_t k = 0; k < keep.size(); ++k) lab.label[keep[k]] = inner.labelling.label[k];
  place_rest(lab, n);
  std::vector<StageEntry> log{{"leaf-trim", std::to_string(n - sub.order()) + " leaves removed, eps'=" + fmt_eps(half)}};
  for (auto& e : inner.report.stage_log) log.push_back({"inner:" + e.stage, e.detail});
  log.push_back({"leaf-return", "trimmed leaves on the free labels of [1," + std::to_string(n) + "]"});
  return finish(tree, std::move(lab), epsilon, options.repair_budget, std::move(log));
}

}  // namespace neargrace
