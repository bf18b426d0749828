#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "neargrace/embedder.hpp"
#include "neargrace/matching.hpp"
#include "neargrace/rng.hpp"

namespace neargrace {

namespace {

int ceil_half(int x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

// One vertex of F: the position `pos` of F-component `comp`.
struct FVertex {
  int comp = 0;
  int pos = 0;
  int parent = -1;  // F-vertex index, -1 for roots
  int depth = 0;
};

struct BlockChoice {
  int block = 0;
  int rounds = 0;  // R: blocks per F-vertex
  Label eta_cap = 0;
  double slack = 0.0;
};

}  // namespace

IntervalLayout IntervalLayout::make(int block, int s_size, int eta) {
  if (block < 1 || s_size < 0 || eta < 0) throw std::invalid_argument("bad interval layout");
  IntervalLayout layout;
  layout.block = block;
  layout.s_size = s_size;
  layout.ell = block + 3 * s_size;
  if (layout.ell % 2 == 0) throw std::invalid_argument("interval length must be odd");
  layout.eta = eta;
  layout.total = (eta + 1) * layout.ell;
  return layout;
}

std::pair<Label, Label> IntervalLayout::s_window() const {
  return {ceil_half(block - 3 * s_size), ceil_half(block + 3 * s_size)};
}

std::pair<Label, Label> IntervalLayout::root_window(int j) const {
  return {j * ell + 1, (j + 1) * ell - 3 * s_size};
}

std::pair<Colour, Colour> IntervalLayout::colours(int i, int j) const {
  return interval_colours(std::min(i, j), std::max(i, j), ell);
}

std::optional<std::string> IntervalLayout::check_disjointness(
    std::span<const std::pair<int, int>> used) const {
  // C_ij depends only on j - i and the sets are intervals, so adjacent
  // differences are the only ones that can collide.
  std::set<int> gaps;
  for (auto [i, j] : used) {
    if (i >= j) return "index pair (" + std::to_string(i) + ", " + std::to_string(j) + ") not increasing";
    gaps.insert(j - i);
  }
  int prev = -1;
  for (int g : gaps) {
    const auto [lo, hi] = colours(0, g);
    if (prev > 0 && colours(0, prev).second >= lo) {
      return "colour blocks for gaps " + std::to_string(prev) + " and " + std::to_string(g) + " overlap";
    }
    if (g >= 2 && lo <= s_colours().second) {
      return "colour block for gap " + std::to_string(g) + " meets the S colours";
    }
    (void)hi;
    prev = g;
  }
  return std::nullopt;
}

EmbedResult embed_rooted_structure(const Tree& tree, const SplitResult& split, double epsilon,
                                   std::uint64_t seed, const RootedConfig& config) {
  if (!split.feasible) throw std::invalid_argument("split is not feasible");
  const int n = tree.order();
  const int m = n - static_cast<int>(split.w.size());
  const Label cap = config.label_cap ? *config.label_cap : max_label_for(m, epsilon);
  EmbedResult result;
  result.labelling = Labelling::unassigned(n, cap);
  auto fail = [&](const std::string& why) {
    result.ok = false;
    result.failure = why;
    result.log.push_back({"rooted-structure", "failed: " + why});
    return result;
  };
  const std::vector<Vertex>& s = split.s;
  const int s_size = static_cast<int>(s.size());
  const int big_d = split.multiplicity;
  auto& psi = result.labelling.label;

  // F and the copy index of every real component.
  std::vector<FVertex> fv;
  std::vector<int> f_root_of;  // F-component -> index of its root in fv
  std::vector<std::vector<int>> real_of;  // F-component -> real component per copy t
  {
    std::map<std::string, std::vector<int>> by_code;
    for (std::size_t k = 0; k < split.components.size(); ++k) by_code[split.components[k].code].push_back(static_cast<int>(k));
    for (const auto& [code, count] : split.shape) {
      const auto& members = by_code[code];
      if (static_cast<int>(members.size()) != count * big_d) {
        throw std::logic_error("split components disagree with shape x multiplicity");
      }
      for (int q = 0; q < count; ++q) {
        const int fc = static_cast<int>(real_of.size());
        real_of.emplace_back(members.begin() + q * big_d, members.begin() + (q + 1) * big_d);
        const RootedComponent& rep = split.components[members[q * big_d]];
        const int base = static_cast<int>(fv.size());
        f_root_of.push_back(base);
        for (std::size_t p = 0; p < rep.vertices.size(); ++p) {
          FVertex v{fc, static_cast<int>(p), -1, 0};
          if (rep.parent[p] >= 0) {
            v.parent = base + rep.parent[p];
            v.depth = fv[v.parent].depth + 1;
          }
          fv.push_back(v);
        }
      }
    }
  }
  const int f_order = static_cast<int>(fv.size());
  auto real_vertex = [&](int f, int t) {
    return split.components[real_of[fv[f].comp][t]].vertices[fv[f].pos];
  };

  if (f_order == 0) {
    if (s_size > cap) return fail("S alone needs more labels than the cap");
  }

  // Block sizes: ell = block + 3|S| odd, and block >= 3|S| + 2 keeps the S
  // window inside [1, ell].
  const int min_block = s_size > 0 ? 3 * s_size + 2 : 1;
  const int offset = s_size > 0 ? 0 : 1;
  std::vector<BlockChoice> choices;
  if (f_order > 0) {
    for (int b = min_block; b <= std::max(min_block, big_d); ++b) {
      const int ell = b + 3 * s_size;
      if (ell % 2 == 0) continue;
      const int rounds = (big_d + b - 1) / b;
      const Label eta_cap = cap / ell - 1 + offset;
      const long long aux = static_cast<long long>(f_order) * rounds;
      if (eta_cap < aux + 1) continue;
      choices.push_back({b, rounds, eta_cap, static_cast<double>(eta_cap) / static_cast<double>(aux)});
    }
    if (choices.empty()) return fail("no block size fits the label cap");
    // Among blocks keeping at least half the best slack, the smallest first:
    // more rounds give the hub embedding more copies per class.
    double best_slack = 0.0;
    for (const auto& c : choices) best_slack = std::max(best_slack, c.slack);
    std::erase_if(choices, [&](const BlockChoice& c) { return c.slack - 1.0 < (best_slack - 1.0) / 2; });
  } else {
    const int b = min_block + ((min_block + 3 * s_size) % 2 == 0 ? 1 : 0);
    if (b + 3 * s_size > cap) return fail("S window exceeds the label cap");
    choices.push_back({b, 0, 0, 0.0});
  }

  std::vector<int> f_order_idx(f_order);
  std::iota(f_order_idx.begin(), f_order_idx.end(), 0);
  std::stable_sort(f_order_idx.begin(), f_order_idx.end(),
                   [&](int x, int y) { return fv[x].depth < fv[y].depth; });

  const int tried = std::min<int>(std::max(1, config.block_candidates), choices.size());
  std::string last_failure;
  for (int ci = 0; ci < tried; ++ci) {
    const BlockChoice& choice = choices[ci];
    std::fill(psi.begin(), psi.end(), kUnlabelled);
    result.log.clear();

    // The auxiliary tree: hub 0, block (r, f) -> 1 + r |F| + f.
    std::vector<Label> phi;
    if (f_order > 0) {
      const int aux_n = 1 + f_order * choice.rounds;
      std::vector<Edge> aux_edges;
      int biggest = 1;
      for (int r = 0; r < choice.rounds; ++r) {
        for (int f = 0; f < f_order; ++f) {
          const int id = 1 + r * f_order + f;
          aux_edges.push_back({fv[f].parent < 0 ? 0 : 1 + r * f_order + fv[f].parent, id});
        }
      }
      for (std::size_t fc = 0; fc < real_of.size(); ++fc) {
        const int next = fc + 1 < f_root_of.size() ? f_root_of[fc + 1] : f_order;
        biggest = std::max(biggest, next - f_root_of[fc]);
      }
      const Tree aux(aux_n, std::move(aux_edges));
      SplittingConfig hub = config.hub;
      hub.label_cap = choice.eta_cap;
      hub.max_component = std::max(hub.max_component, biggest);
      EmbedResult he = embed_splitting_vertex_tree(aux, 0, epsilon / 2, derive_seed(seed, "aux", ci), hub);
      result.log.insert(result.log.end(), he.log.begin(), he.log.end());
      if (!he.ok) {
        last_failure = "block " + std::to_string(choice.block) + ": " + he.failure;
        continue;
      }
      phi = std::move(he.labelling.label);
    }
    auto block_label = [&](int r, int f) { return phi[1 + r * f_order + f] - offset; };
    const int eta = phi.empty() ? 0 : *std::max_element(phi.begin(), phi.end()) - offset;
    const IntervalLayout layout = IntervalLayout::make(choice.block, s_size, eta);
    if (layout.total > cap) throw std::logic_error("interval layout overruns the label cap");

    // S, greedily into the S window: BFS order inside T[S], minimal label
    // whose colour to the one earlier neighbour is still free.
    if (s_size > 0) {
      VertexMask in_s = mask_of(n, s);
      VertexMask seen(n, 0);
      std::set<Colour> s_colours;
      std::vector<char> taken(layout.total + 1, 0);
      const auto [lo, hi] = layout.s_window();
      for (Vertex start : s) {
        if (seen[start]) continue;
        std::vector<Vertex> queue{start};
        seen[start] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
          const Vertex w = queue[q];
          Vertex earlier = -1;
          for (Vertex y : tree.neighbours(w)) {
            if (!in_s[y]) continue;
            if (psi[y] != kUnlabelled) earlier = y;
            if (!seen[y]) {
              seen[y] = 1;
              queue.push_back(y);
            }
          }
          Label pick = kUnlabelled;
          for (Label x = lo; x <= hi && pick == kUnlabelled; ++x) {
            if (taken[x]) continue;
            if (earlier >= 0 && s_colours.count(std::abs(x - psi[earlier]))) continue;
            pick = x;
          }
          if (pick == kUnlabelled) throw std::logic_error("S window exhausted");
          psi[w] = pick;
          taken[pick] = 1;
          if (earlier >= 0) s_colours.insert(std::abs(pick - psi[earlier]));
        }
      }
    }

    std::vector<std::pair<int, int>> used;
    std::map<std::pair<int, int>, std::map<Label, Label>> matchings;
    auto partner = [&](int i, int j, Label x) {
      const auto key = std::minmax(i, j);
      auto it = matchings.find(key);
      if (it == matchings.end()) {
        std::map<Label, Label> both;
        for (auto [a, b] : interval_matching(key.first, key.second, layout.ell, layout.total).pairs) {
          both[a] = b;
          both[b] = a;
        }
        it = matchings.emplace(key, std::move(both)).first;
      }
      return it->second.at(x);
    };

    for (int f : f_order_idx) {
      for (int r = 0; r < choice.rounds; ++r) {
        const int t0 = r * choice.block;
        const int t1 = std::min(big_d, t0 + choice.block);
        const int j = block_label(r, f);
        if (fv[f].parent < 0) {
          std::vector<Vertex> members;
          for (int t = t0; t < t1; ++t) members.push_back(real_vertex(f, t));
          if (s_size == 0) {
            for (std::size_t k = 0; k < members.size(); ++k) psi[members[k]] = layout.interval(j).first + static_cast<int>(k);
            continue;
          }
          used.push_back({0, j});
          // Virtual edges send S-free roots to the first S vertex.
          auto s_label = [&](Vertex root) {
            for (Vertex y : tree.neighbours(root))
              if (std::binary_search(s.begin(), s.end(), y)) return psi[y];
            return psi[s.front()];
          };
          std::vector<std::pair<Label, Vertex>> keyed;
          for (Vertex v : members) keyed.push_back({s_label(v), v});
          std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
            return x.first != y.first ? x.first > y.first : x.second < y.second;
          });
          Colour last = 0;
          for (std::size_t k = 0; k < keyed.size(); ++k) {
            const Label x = layout.root_window(j).first + static_cast<int>(k);
            psi[keyed[k].second] = x;
            const Colour c = x - keyed[k].first;
            if (c <= last) throw std::logic_error("root block colours not strictly increasing");
            last = c;
          }
        } else {
          const int i = block_label(r, fv[f].parent);
          used.push_back(std::minmax(i, j));
          for (int t = t0; t < t1; ++t) psi[real_vertex(f, t)] = partner(i, j, psi[real_vertex(fv[f].parent, t)]);
        }
      }
    }

    if (auto bad = layout.check_disjointness(used)) throw std::logic_error(*bad);
    const PartialCensus census = partial_census(tree, result.labelling);
    int labelled = 0;
    for (Label x : psi) labelled += x != kUnlabelled ? 1 : 0;
    if (!census.rainbow() || labelled != m || result.labelling.max_label() > cap) {
      throw std::logic_error("rooted-structure labelling is not rainbow within its range");
    }
    std::ostringstream msg;
    msg << "block=" << choice.block << " ell=" << layout.ell << " rounds=" << choice.rounds
        << " eta=" << eta << " labels<=" << layout.total << " cap=" << cap;
    result.log.push_back({"rooted-structure", msg.str()});
    result.ok = true;
    return result;
  }
  return fail(last_failure.empty() ? "no block size succeeded" : last_failure);
}

}  // namespace neargrace
