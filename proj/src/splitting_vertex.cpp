#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "neargrace/embedder.hpp"
#include "neargrace/matching.hpp"
#include "neargrace/rng.hpp"

namespace neargrace {

namespace {

struct ComponentClass {
  std::vector<int> members;  // indices into the component list
  int order = 0;
};

// One vertex of F-hat, in rooted order.
struct HatVertex {
  int component = 0;  // F-hat component
  int position = 0;   // canonical preorder position inside it
  int parent = -1;    // index of the parent F-hat vertex
};

struct HatForest {
  std::vector<int> component_class;
  std::vector<std::vector<int>> component_parent;  // parent positions per component
  std::vector<HatVertex> vertices;
  std::vector<std::vector<int>> index_of;  // [component][position] -> vertex index
  int padded_order = 0;                    // n' = |F-hat| * d
};

HatForest build_hat(const std::vector<ComponentClass>& classes,
                    const std::vector<RootedComponent>& comps, int d) {
  HatForest hat;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const int copies = (static_cast<int>(classes[c].members.size()) + d - 1) / d;
    const RootedComponent& rep = comps[classes[c].members.front()];
    for (int k = 0; k < copies; ++k) {
      hat.component_class.push_back(static_cast<int>(c));
      hat.component_parent.push_back(rep.parent);
    }
    hat.padded_order += copies * d * classes[c].order;
  }
  struct Key {
    int depth, component, position;
  };
  std::vector<Key> keys;
  for (std::size_t fc = 0; fc < hat.component_parent.size(); ++fc) {
    const auto& parent = hat.component_parent[fc];
    std::vector<int> depth(parent.size(), 0);
    for (std::size_t p = 1; p < parent.size(); ++p) depth[p] = depth[parent[p]] + 1;
    for (std::size_t p = 0; p < parent.size(); ++p)
      keys.push_back({depth[p], static_cast<int>(fc), static_cast<int>(p)});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
    return std::tie(x.depth, x.component, x.position) < std::tie(y.depth, y.component, y.position);
  });
  hat.index_of.resize(hat.component_parent.size());
  for (std::size_t fc = 0; fc < hat.component_parent.size(); ++fc)
    hat.index_of[fc].assign(hat.component_parent[fc].size(), -1);
  for (const Key& k : keys) {
    hat.index_of[k.component][k.position] = static_cast<int>(hat.vertices.size());
    hat.vertices.push_back({k.component, k.position, -1});
  }
  for (auto& v : hat.vertices) {
    const int pp = hat.component_parent[v.component][v.position];
    if (pp >= 0) v.parent = hat.index_of[v.component][pp];
  }
  return hat;
}

struct Candidate {
  int d = 0;
  int padded = 0;
  double slack = 0.0;  // spare labels per part
};

}  // namespace

EmbedResult embed_splitting_vertex_tree(const Tree& tree, Vertex hub, double epsilon,
                                        std::uint64_t seed, const SplittingConfig& config) {
  const int total = tree.order();
  const int n = total - 1;
  if (!tree.contains(hub)) throw TreeError(TreeErrorKind::kIdOutOfRange, "hub not in tree");
  const Label cap = config.label_cap ? *config.label_cap : max_label_for(n, epsilon);
  EmbedResult result;
  result.labelling = Labelling::unassigned(total, cap);
  auto fail = [&](const std::string& why) {
    result.ok = false;
    result.failure = why;
    result.log.push_back({"hub-embedding", "failed: " + why});
    return result;
  };
  result.labelling.label[hub] = 0;
  if (n == 0) {
    result.ok = true;
    return result;
  }

  VertexMask removed(total, 0);
  removed[hub] = 1;
  std::vector<RootedComponent> comps;
  bool all_single = true;
  for (Vertex r : tree.neighbours(hub)) {
    comps.push_back(make_component(tree, r, removed));
    const int size = static_cast<int>(comps.back().vertices.size());
    if (size > config.max_component) {
      return fail("component of order " + std::to_string(size) + " exceeds " +
                  std::to_string(config.max_component));
    }
    all_single = all_single && size == 1;
  }

  if (all_single) {
    if (n + 1 > cap) return fail("star needs labels up to n + 1");
    std::vector<Vertex> leaves(tree.neighbours(hub).begin(), tree.neighbours(hub).end());
    std::sort(leaves.begin(), leaves.end());
    for (std::size_t k = 0; k < leaves.size(); ++k) result.labelling.label[leaves[k]] = static_cast<Label>(k) + 2;
    result.ok = true;
    result.log.push_back({"hub-embedding", "star: leaves on 2.." + std::to_string(n + 1)});
    return result;
  }

  std::map<std::string, int> class_of_code;
  std::vector<ComponentClass> classes;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    auto [it, fresh] = class_of_code.emplace(comps[k].code, static_cast<int>(classes.size()));
    if (fresh) classes.push_back({{}, static_cast<int>(comps[k].vertices.size())});
    classes[it->second].members.push_back(static_cast<int>(k));
  }

  const int n_tilde = cap - (cap % 2);
  std::vector<Candidate> candidates;
  int max_count = 0;
  for (const auto& c : classes) max_count = std::max(max_count, static_cast<int>(c.members.size()));
  for (int d = 1; d <= max_count; ++d) {
    long long padded = 0;
    long long hat_order = 0;
    for (const auto& c : classes) {
      const long long copies = (static_cast<long long>(c.members.size()) + d - 1) / d;
      padded += copies * d * c.order;
      hat_order += copies * c.order;
    }
    if (padded > n_tilde) continue;
    const double part = static_cast<double>(n_tilde) / static_cast<double>(hat_order);
    candidates.push_back({d, static_cast<int>(padded), part - d});
  }
  if (candidates.empty()) return fail("padding exceeds the label range for every multiplicity");
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.slack > y.slack; });
  const int tried = std::min<int>(std::max(1, config.multiplicity_candidates), candidates.size());
  const int per_candidate = std::max(1, config.retries / tried);

  std::string last_failure;
  for (int ci = 0; ci < tried; ++ci) {
    const int d = candidates[ci].d;
    const HatForest hat = build_hat(classes, comps, d);
    const int parts = static_cast<int>(hat.vertices.size());
    std::vector<char> is_root(parts, 0);
    for (int k = 0; k < parts; ++k) is_root[k] = hat.vertices[k].parent < 0;
    const int first_non_root =
        static_cast<int>(std::find(is_root.begin(), is_root.end(), 0) - is_root.begin());

    for (int attempt = 0; attempt < per_candidate; ++attempt) {
      const std::uint64_t run = static_cast<std::uint64_t>(ci) * 1000 + attempt;
      Rng rng = make_rng(seed, "label-partition", run);
      std::vector<Label> pool(n_tilde);
      std::iota(pool.begin(), pool.end(), 1);
      shuffle(std::span<Label>(pool), rng);
      std::vector<std::vector<Label>> part(parts);
      std::vector<int> part_of(n_tilde + 1, -1);
      for (int k = 0, at = 0; k < parts; ++k) {
        const int size = n_tilde / parts + (k < n_tilde % parts ? 1 : 0);
        part[k].assign(pool.begin() + at, pool.begin() + at + size);
        at += size;
      }
      for (int k = 0; k < parts; ++k) {
        if (std::find(part[k].begin(), part[k].end(), 1) != part[k].end() && is_root[k]) {
          std::swap(part[k], part[first_non_root]);
          break;
        }
      }
      for (int k = 0; k < parts; ++k) {
        std::sort(part[k].begin(), part[k].end());
        for (Label l : part[k]) part_of[l] = k;
      }

      // copies[fc][copy][position]; a copy is alive while every placed vertex
      // found a partner.
      const int hat_components = static_cast<int>(hat.component_parent.size());
      std::vector<std::vector<std::vector<Label>>> copies(hat_components);
      std::vector<std::vector<char>> alive(hat_components);
      for (int fc = 0; fc < hat_components; ++fc) {
        const int root_part = hat.index_of[fc][0];
        const int size = static_cast<int>(hat.component_parent[fc].size());
        for (Label l : part[root_part]) {
          copies[fc].push_back(std::vector<Label>(size, kUnlabelled));
          copies[fc].back()[0] = l;
        }
        alive[fc].assign(copies[fc].size(), 1);
      }

      bool short_of_copies = false;
      for (int k = 0; k < parts && !short_of_copies; ++k) {
        const HatVertex& hv = hat.vertices[k];
        if (hv.parent < 0) continue;
        const int fc = hv.component;
        const int pp = hat.component_parent[fc][hv.position];
        std::vector<Label> parents;
        for (std::size_t t = 0; t < copies[fc].size(); ++t)
          if (alive[fc][t]) parents.push_back(copies[fc][t][pp]);
        std::sort(parents.begin(), parents.end());

        PairMatchingConfig pmc;
        pmc.s = config.gadget_s > 0 ? config.gadget_s : n_tilde / 2;
        pmc.retries = 2;
        const auto pm = random_pair_rainbow_matching(n_tilde, parents, part[k], config.mu,
                                                     derive_seed(seed, "pair", run * 4096 + k), pmc);
        // Everything the gadget matching missed is retried on the full
        // parent x part hypergraph, starting from the gadget matching.
        std::map<Label, Label> partner;
        for (auto [a, b] : pm.matching.pairs) partner[a] = b;
        if (static_cast<int>(partner.size()) < static_cast<int>(parents.size())) {
          TripartiteHypergraph full;
          full.part_a = parents;
          full.part_b = part[k];
          for (Label c : part[k])
            if (c >= 2) full.part_c.push_back(c);
          std::vector<int> initial;
          for (Label a : parents) {
            for (Label b : part[k]) {
              const Colour c = std::abs(b - a);
              if (c < 2 || part_of[c] != k) continue;
              auto it = partner.find(a);
              if (it != partner.end() && it->second == b) initial.push_back(static_cast<int>(full.edges.size()));
              // Parent labels may exceed child labels; the parts keep roles apart.
              full.edges.push_back({a, b, c});
            }
          }
          MatchingConfig mc;
          mc.walk_steps = config.walk_factor * static_cast<long long>(full.vertex_count());
          const auto hm = hypergraph_matching(full, 0.0, derive_seed(seed, "pair-full", run * 4096 + k),
                                              mc, initial);
          partner.clear();
          for (int e : hm.edges) partner[full.edges[e].a] = full.edges[e].b;
        }
        int still_alive = 0;
        for (std::size_t t = 0; t < copies[fc].size(); ++t) {
          if (!alive[fc][t]) continue;
          auto it = partner.find(copies[fc][t][pp]);
          if (it == partner.end()) {
            alive[fc][t] = 0;
          } else {
            copies[fc][t][hv.position] = it->second;
            ++still_alive;
          }
        }
        if (still_alive < d) short_of_copies = true;
      }
      if (short_of_copies) {
        last_failure = "d=" + std::to_string(d) + ": fewer than d complete copies survive";
        continue;
      }

      // Hand out the first d live copies of each F-hat component to the real
      // components of its class.
      std::vector<std::vector<int>> hat_of_class(classes.size());
      for (int fc = 0; fc < hat_components; ++fc) hat_of_class[hat.component_class[fc]].push_back(fc);
      for (std::size_t c = 0; c < classes.size(); ++c) {
        std::vector<const std::vector<Label>*> chosen;
        for (int fc : hat_of_class[c]) {
          int taken = 0;
          for (std::size_t t = 0; t < copies[fc].size() && taken < d; ++t) {
            if (!alive[fc][t]) continue;
            chosen.push_back(&copies[fc][t]);
            ++taken;
          }
        }
        for (std::size_t q = 0; q < classes[c].members.size(); ++q) {
          const RootedComponent& comp = comps[classes[c].members[q]];
          const auto& labels = *chosen[q];
          for (std::size_t p = 0; p < comp.vertices.size(); ++p) result.labelling.label[comp.vertices[p]] = labels[p];
        }
      }

      const PartialCensus census = partial_census(tree, result.labelling);
      for (const Edge& e : tree.edges()) {
        if (std::abs(result.labelling.label[e.u] - result.labelling.label[e.v]) == 1) {
          throw std::logic_error("hub embedding produced colour 1");
        }
      }
      if (!census.rainbow() || census.labelled_edges != tree.size() || result.labelling.max_label() > cap) {
        throw std::logic_error("hub embedding is not rainbow within its range");
      }
      std::ostringstream msg;
      msg << "d=" << d << " parts=" << parts << " n~=" << n_tilde << " attempt=" << attempt + 1;
      result.log.push_back({"hub-embedding", msg.str()});
      result.ok = true;
      return result;
    }
  }
  return fail(last_failure.empty() ? "no attempt succeeded" : last_failure);
}

}  // namespace neargrace
