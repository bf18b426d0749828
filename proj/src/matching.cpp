#include "neargrace/matching.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "neargrace/rng.hpp"

namespace neargrace {

Hyperedge theta(Label a, Label b) {
  if (a == b) throw std::invalid_argument("theta of a loop");
  if (a > b) std::swap(a, b);
  return {a, b, b - a};
}

LabelPair theta_inverse(const Hyperedge& e) {
  if (e.b - e.a != e.c) throw std::invalid_argument("hyperedge colour is not b - a");
  return {e.a, e.b};
}

ColouredBipartiteView ColouredBipartiteView::complete(std::vector<Label> a, std::vector<Label> b,
                                                      std::vector<Colour> c) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::sort(c.begin(), c.end());
  for (Label x : a) {
    if (std::binary_search(b.begin(), b.end(), x)) {
      throw std::invalid_argument("A and B must be disjoint");
    }
  }
  ColouredBipartiteView view{std::move(a), std::move(b), std::move(c), {}};
  for (Label x : view.a) {
    for (Label y : view.b) {
      if (std::binary_search(view.c.begin(), view.c.end(), std::abs(y - x))) {
        view.edges.emplace_back(x, y);
      }
    }
  }
  return view;
}

bool ColouredBipartiteView::has_edge(Label x, Label y) const {
  return std::binary_search(a.begin(), a.end(), x) && std::binary_search(b.begin(), b.end(), y) &&
         std::binary_search(c.begin(), c.end(), std::abs(y - x));
}

TripartiteHypergraph TripartiteHypergraph::from_view(const ColouredBipartiteView& view) {
  TripartiteHypergraph h{view.a, view.b, view.c, {}};
  h.edges.reserve(view.edges.size());
  for (auto [x, y] : view.edges) h.edges.push_back(theta(x, y));
  return h;
}

bool TripartiteHypergraph::is_linear() const {
  // Two edges sharing two vertices share a pair among (a,b), (a,c), (b,c).
  std::set<std::pair<Label, Label>> ab, ac, bc;
  for (const Hyperedge& e : edges) {
    if (!ab.emplace(e.a, e.b).second) return false;
    if (!ac.emplace(e.a, e.c).second) return false;
    if (!bc.emplace(e.b, e.c).second) return false;
  }
  return true;
}

void RainbowMatching::add(Label x, Label y) {
  pairs.emplace_back(x, y);
  colours.push_back(std::abs(y - x));
}

bool is_rainbow_matching(std::span<const LabelPair> pairs) {
  std::unordered_set<Label> ends;
  std::unordered_set<Colour> colours;
  for (auto [x, y] : pairs) {
    if (x == y) return false;
    if (!ends.insert(x).second || !ends.insert(y).second) return false;
    if (!colours.insert(std::abs(y - x)).second) return false;
  }
  return true;
}

bool is_hypergraph_matching(std::span<const Hyperedge> edges) {
  std::unordered_set<Label> as, bs;
  std::unordered_set<Colour> cs;
  for (const Hyperedge& e : edges) {
    if (!as.insert(e.a).second || !bs.insert(e.b).second || !cs.insert(e.c).second) return false;
  }
  return true;
}

std::pair<bool, bool> rainbow_iff_matching_check(std::span<const LabelPair> m,
                                                 const ColouredBipartiteView& view) {
  std::vector<Hyperedge> image;
  for (auto [x, y] : m) {
    if (!view.has_edge(x, y)) {
      throw std::invalid_argument("pair (" + std::to_string(x) + ", " + std::to_string(y) +
                                  ") is not an edge of the view");
    }
    image.push_back(theta(x, y));
  }
  return {is_rainbow_matching(m), is_hypergraph_matching(image)};
}

namespace {

void check_gadget_args(int n, int s) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("gadget needs an even n >= 2");
  if (s < 1 || s > n / 2) throw std::invalid_argument("gadget needs 1 <= s <= n/2");
}

}  // namespace

std::pair<Label, Label> gadget_neighbour_range(int n, int s, Label a) {
  // b = a + c with a + b = n + i, i in [1, 2s]; colour 1 would need n + i odd
  // with a = (n - 1 + i) / 2, excluded by b - a >= 2.
  Label lo = std::max({n / 2 + 1, n + 1 - a, a + 2});
  Label hi = std::min(n, n + 2 * s - a);
  return {lo, hi};
}

ColouredBipartiteView spanning_difference_graph(int n, int s) {
  check_gadget_args(n, s);
  ColouredBipartiteView view;
  for (Label a = 1; a <= n / 2; ++a) view.a.push_back(a);
  for (Label b = n / 2 + 1; b <= n; ++b) view.b.push_back(b);
  for (Colour c = 2; c < n; ++c) view.c.push_back(c);
  for (Colour c = 2; c < n; ++c) {
    for (int i = 1; i <= 2 * s; ++i) {
      if ((n - c + i) % 2 != 0) continue;
      const Label a = (n - c + i) / 2;
      const Label b = (n + c + i) / 2;
      if (a >= 1 && a <= n / 2 && b > n / 2 && b <= n) view.edges.emplace_back(a, b);
    }
  }
  std::sort(view.edges.begin(), view.edges.end());
  return view;
}

std::pair<Colour, Colour> interval_colours(int i, int j, int ell) {
  const int centre = (j - i) * ell;
  return {centre - ell / 2, centre + ell / 2};
}

RainbowMatching interval_matching(int i, int j, int ell, int n) {
  if (ell < 1 || ell % 2 == 0) throw std::invalid_argument("interval length must be odd");
  if (i < 0 || i >= j) throw std::invalid_argument("need 0 <= i < j");
  if (static_cast<long long>(j + 1) * ell > n) throw std::invalid_argument("interval overflow");
  const int up = (ell + 1) / 2;
  const int down = ell / 2;
  RainbowMatching m;
  for (int y = 1; y <= up; ++y) m.add(i * ell + y, j * ell + up + 1 - y);
  for (int z = 1; z <= down; ++z) m.add(i * ell + up + z, (j + 1) * ell + 1 - z);
  return m;
}

namespace {

class MatchingEngine {
 public:
  explicit MatchingEngine(const TripartiteHypergraph& h) : h_(h) {
    auto index = [](const std::vector<Label>& part, int offset) {
      std::unordered_map<Label, int> ids;
      for (std::size_t k = 0; k < part.size(); ++k) ids.emplace(part[k], offset + static_cast<int>(k));
      return ids;
    };
    const int na = static_cast<int>(h.part_a.size());
    const int nb = static_cast<int>(h.part_b.size());
    auto ia = index(h.part_a, 0);
    auto ib = index(h.part_b, na);
    auto ic = index(h.part_c, na + nb);
    vertices_ = h.vertex_count();
    incidence_.assign(vertices_, {});
    ends_.reserve(h.edges.size());
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
      const Hyperedge& x = h.edges[e];
      auto fa = ia.find(x.a), fb = ib.find(x.b), fc = ic.find(x.c);
      if (fa == ia.end() || fb == ib.end() || fc == ic.end()) {
        throw std::invalid_argument("hyperedge outside the declared parts");
      }
      ends_.push_back({fa->second, fb->second, fc->second});
      for (int v : ends_.back()) incidence_[v].push_back(static_cast<int>(e));
    }
    owner_.assign(vertices_, -1);
    in_matching_.assign(h.edges.size(), 0);
  }

  int covered() const { return covered_; }

  bool seed_edge(int e) {
    if (e < 0 || e >= static_cast<int>(ends_.size()) || !free_edge(e)) return false;
    insert(e);
    return true;
  }
  int vertices() const { return vertices_; }

  void greedy(Rng& rng) {
    std::vector<int> order(ends_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    shuffle(std::span<int>(order), rng);
    for (int e : order)
      if (free_edge(e)) insert(e);
  }

  // One sweep of (1,0) and (2,1) improvements started from uncovered
  // vertices. Returns whether the matching grew.
  bool improve(Rng& rng) {
    std::vector<int> starts;
    for (int v = 0; v < vertices_; ++v)
      if (owner_[v] == -1 && !incidence_[v].empty()) starts.push_back(v);
    shuffle(std::span<int>(starts), rng);
    bool grew = false;
    for (int x : starts) {
      if (owner_[x] != -1) continue;
      for (int f : incidence_[x]) {
        if (in_matching_[f]) continue;
        int blocker = -1;
        bool too_many = false;
        for (int v : ends_[f]) {
          const int o = owner_[v];
          if (o == -1 || o == blocker) continue;
          if (blocker == -1) {
            blocker = o;
          } else {
            too_many = true;
            break;
          }
        }
        if (too_many) continue;
        if (blocker == -1) {
          insert(f);
          grew = true;
          break;
        }
        remove(blocker);
        insert(f);
        int partner = -1;
        for (int r : ends_[blocker]) {
          if (owner_[r] != -1) continue;
          for (int g : incidence_[r]) {
            if (g != blocker && free_edge(g)) {
              partner = g;
              break;
            }
          }
          if (partner != -1) break;
        }
        if (partner != -1) {
          insert(partner);
          grew = true;
          break;
        }
        remove(f);
        insert(blocker);
      }
    }
    return grew;
  }

  // Plateau walk: cover a random free vertex with its least-blocked edge,
  // evicting at most one matched edge. Never shrinks the matching.
  void walk(Rng& rng, long long steps) {
    std::vector<int> free_list;
    for (int v = 0; v < vertices_; ++v)
      if (owner_[v] == -1 && !incidence_[v].empty()) free_list.push_back(v);
    for (long long step = 0; step < steps && !free_list.empty(); ++step) {
      const std::size_t at = uniform_below(rng, free_list.size());
      const int x = free_list[at];
      if (owner_[x] != -1) {
        free_list[at] = free_list.back();
        free_list.pop_back();
        continue;
      }
      const auto& inc = incidence_[x];
      int best = -1, best_blockers = 3, ties = 0;
      for (int f : inc) {
        int blockers = 0;
        for (int v : ends_[f]) blockers += owner_[v] != -1 ? 1 : 0;
        if (blockers < best_blockers) {
          best = f;
          best_blockers = blockers;
          ties = 1;
        } else if (blockers == best_blockers && uniform_below(rng, ++ties) == 0) {
          best = f;
        }
      }
      if (best < 0 || best_blockers > 1) continue;
      if (best_blockers == 1) {
        for (int v : ends_[best]) {
          if (owner_[v] == -1) continue;
          const int evicted = owner_[v];
          remove(evicted);
          for (int r : ends_[evicted])
            if (r != v) free_list.push_back(r);
          break;
        }
      }
      insert(best);
      if (best_blockers == 0) {
        free_list[at] = free_list.back();
        free_list.pop_back();
      }
    }
  }

  std::vector<int> matching() const {
    std::vector<int> out;
    for (std::size_t e = 0; e < in_matching_.size(); ++e)
      if (in_matching_[e]) out.push_back(static_cast<int>(e));
    return out;
  }

 private:
  bool free_edge(int e) const {
    for (int v : ends_[e])
      if (owner_[v] != -1) return false;
    return true;
  }
  void insert(int e) {
    for (int v : ends_[e]) owner_[v] = e;
    in_matching_[e] = 1;
    covered_ += 3;
  }
  void remove(int e) {
    for (int v : ends_[e]) owner_[v] = -1;
    in_matching_[e] = 0;
    covered_ -= 3;
  }

  const TripartiteHypergraph& h_;
  int vertices_ = 0;
  int covered_ = 0;
  std::vector<std::array<int, 3>> ends_;
  std::vector<std::vector<int>> incidence_;
  std::vector<int> owner_;
  std::vector<char> in_matching_;
};

}  // namespace

HypergraphMatching hypergraph_matching(const TripartiteHypergraph& h, double target_uncovered,
                                       std::uint64_t seed, const MatchingConfig& config) {
  return hypergraph_matching(h, target_uncovered, seed, config, {});
}

HypergraphMatching hypergraph_matching(const TripartiteHypergraph& h, double target_uncovered,
                                       std::uint64_t seed, const MatchingConfig& config,
                                       std::span<const int> initial) {
  MatchingEngine engine(h);
  Rng rng = make_rng(seed, "hypergraph-matching");
  for (int e : initial) {
    if (!engine.seed_edge(e)) throw std::invalid_argument("initial edges are not a matching");
  }
  engine.greedy(rng);
  HypergraphMatching result;
  const int total = engine.vertices();
  auto uncovered_fraction = [&] {
    return total == 0 ? 0.0 : static_cast<double>(total - engine.covered()) / total;
  };
  while (result.rounds < config.max_rounds && uncovered_fraction() > target_uncovered) {
    ++result.rounds;
    if (!engine.improve(rng)) break;
  }
  if (config.walk_steps > 0 && uncovered_fraction() > target_uncovered) {
    engine.walk(rng, config.walk_steps);
  }
  result.edges = engine.matching();
  result.uncovered = total - engine.covered();
  result.uncovered_fraction = uncovered_fraction();
  return result;
}

PairMatchingResult random_pair_rainbow_matching(int n, std::span<const Label> s1,
                                                std::span<const Label> s2, double mu,
                                                std::uint64_t seed,
                                                const PairMatchingConfig& config) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("pair matching needs an even n");
  PairMatchingResult best;
  best.allowance = 2.0 * mu * static_cast<double>(std::max(s1.size(), s2.size()));
  best.uncovered_s1 = static_cast<int>(s1.size());
  best.uncovered_s2 = static_cast<int>(s2.size());
  if (s1.empty() || s2.empty()) {
    best.within_target = static_cast<double>(std::max(best.uncovered_s1, best.uncovered_s2)) <=
                         best.allowance;
    return best;
  }

  std::vector<char> in1(n + 1, 0), in2(n + 1, 0);
  for (Label x : s1) {
    if (x < 1 || x > n) throw std::invalid_argument("S1 label outside [n]");
    in1[x] = 1;
  }
  for (Label x : s2) {
    if (x < 1 || x > n) throw std::invalid_argument("S2 label outside [n]");
    if (in1[x]) throw std::invalid_argument("S1 and S2 must be disjoint");
    in2[x] = 1;
  }
  int s = config.s;
  if (s <= 0) {
    const double p = static_cast<double>(s2.size()) / n;
    s = static_cast<int>(std::ceil(mu * 3.0 * p * n / 20.0));
  }
  s = std::clamp(s, 1, n / 2);
  best.s = s;

  const int half = n / 2;
  const int attempts = std::max(1, config.retries);
  bool have_best = false;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Rng coin_rng = make_rng(seed, "colour-coin", attempt);
    std::vector<char> in_p(n + 1, 0);
    for (Label c : s2) in_p[c] = coin(coin_rng) ? 1 : 0;

    // H_P on (A n S1, B n S2, P n S2), H_Q on (A n S2, B n S1, Q n S2).
    auto build = [&](const std::vector<char>& lower, const std::vector<char>& upper, bool want_p) {
      TripartiteHypergraph h;
      std::vector<char> colour_seen(n + 1, 0);
      for (Label a = 1; a <= half; ++a) {
        if (!lower[a]) continue;
        h.part_a.push_back(a);
        auto [lo, hi] = gadget_neighbour_range(n, s, a);
        for (Label b = lo; b <= hi; ++b) {
          if (!upper[b]) continue;
          const Colour c = b - a;
          if (!in2[c] || (in_p[c] != 0) != want_p) continue;
          h.edges.push_back({a, b, c});
          colour_seen[c] = 1;
        }
      }
      for (Label b = half + 1; b <= n; ++b)
        if (upper[b]) h.part_b.push_back(b);
      for (Colour c = 1; c <= n; ++c)
        if (in2[c] && (in_p[c] != 0) == want_p) h.part_c.push_back(c);
      return h;
    };
    const TripartiteHypergraph hp = build(in1, in2, true);
    const TripartiteHypergraph hq = build(in2, in1, false);
    const double target = 2.0 * mu;
    const auto mp = hypergraph_matching(hp, target, derive_seed(seed, "match-p", attempt), config.engine);
    const auto mq = hypergraph_matching(hq, target, derive_seed(seed, "match-q", attempt), config.engine);

    PairMatchingResult current;
    current.allowance = best.allowance;
    current.s = s;
    current.attempts = attempt + 1;
    // Pairs are reported as (S1 label, S2 label).
    for (int e : mp.edges) current.matching.add(hp.edges[e].a, hp.edges[e].b);
    for (int e : mq.edges) current.matching.add(hq.edges[e].b, hq.edges[e].a);
    current.uncovered_s1 = static_cast<int>(s1.size()) - current.matching.size();
    current.uncovered_s2 = static_cast<int>(s2.size()) - current.matching.size();
    current.within_target =
        static_cast<double>(std::max(current.uncovered_s1, current.uncovered_s2)) <= current.allowance;
    if (!have_best || current.matching.size() > best.matching.size()) {
      best = std::move(current);
      have_best = true;
    }
    best.attempts = attempt + 1;
    if (best.within_target) break;
  }
  return best;
}

}  // namespace neargrace
