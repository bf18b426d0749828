#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "neargrace/exact.hpp"
#include "neargrace/rng.hpp"
#include "oracles.hpp"

using namespace neargrace;

namespace {

int brute_gracesize(const Tree& t) {
  std::vector<Label> perm(t.order());
  std::iota(perm.begin(), perm.end(), 1);
  int best = 0;
  do best = std::max(best, oracle::distinct_colours(t, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool bijective_onto_n(const Labelling& lab) {
  std::vector<Label> sorted = lab.label;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < lab.size(); ++k)
    if (sorted[k] != k + 1) return false;
  return true;
}

}  // namespace

TEST_CASE("graceful search on P5 and a star") {
  const Tree p5 = parse_tree("5\n0 1\n1 2\n2 3\n3 4");
  const GracefulSearch a = solve_graceful(p5, 1000);
  REQUIRE(a.labelling);
  CHECK(is_graceful(p5, *a.labelling));
  CHECK(a.stats.proven_optimal);
  CHECK(a.stats.best_found == 4);

  const Tree k15 = parse_tree("6\n0 1\n0 2\n0 3\n0 4\n0 5");
  const GracefulSearch b = solve_graceful(k15, 1000);
  REQUIRE(b.labelling);
  CHECK(is_graceful(k15, *b.labelling));
  // The centre of a graceful star is forced to an extreme label.
  const Label centre = b.labelling->label[0];
  CHECK((centre == 1 || centre == 6));
}

TEST_CASE("graceful search budget") {
  const Tree t = random_tree(10, 3);
  CHECK_THROWS_AS(solve_graceful(t, 0), std::invalid_argument);
  const GracefulSearch tiny = solve_graceful(t, 2);
  CHECK(tiny.stats.nodes_expanded <= 2);
  if (!tiny.labelling) {
    CHECK(tiny.stats.budget_exhausted);
    CHECK_FALSE(tiny.stats.proven_optimal);
  }
}

TEST_CASE("every tree with n <= 8 is graceful") {
  for (int n = 1; n <= 8; ++n)
    for (const Tree& t : enumerate_trees(n)) {
      const GracefulSearch s = solve_graceful(t, 1'000'000);
      REQUIRE(s.labelling);
      CHECK(is_graceful(t, *s.labelling));
      CHECK(bijective_onto_n(*s.labelling));
      CHECK(s.stats.best_found <= std::max(0, n - 1));
    }
}

TEST_CASE("gracesize of tiny paths") {
  CHECK(max_gracesize(parse_tree("2\n0 1")).gracesize == 1);
  const GracesizeSearch p3 = max_gracesize(parse_tree("3\n0 1\n1 2"));
  CHECK(p3.gracesize == 2);
  CHECK(gracesize_of(parse_tree("3\n0 1\n1 2"), p3.labelling) == 2);
  CHECK(max_gracesize(Tree(1, {})).gracesize == 0);
}

TEST_CASE("gracesize matches a permutation sweep up to n = 7") {
  for (int n = 2; n <= 7; ++n)
    for (const Tree& t : enumerate_trees(n)) {
      const GracesizeSearch g = max_gracesize(t);
      CHECK(g.gracesize == brute_gracesize(t));
      CHECK(bijective_onto_n(g.labelling));
      CHECK(gracesize_of(t, g.labelling) == g.gracesize);
    }
}

TEST_CASE("gracesize is n - 1 for every tree up to n = 9") {
  for (int n = 2; n <= 9; ++n)
    for (const Tree& t : enumerate_trees(n)) {
      const GracesizeSearch g = max_gracesize(t);
      CHECK(g.gracesize == n - 1);
      CHECK(g.stats.best_found <= n - 1);
      // 7 gs >= 5 (n - 1)
      CHECK(7 * g.gracesize >= 5 * (n - 1));
    }
}

TEST_CASE("gracesize dominates random bijections") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 8);
    const Tree t = random_tree(n, seed);
    const int best = max_gracesize(t).gracesize;
    Rng rng = make_rng(seed, "perm");
    std::vector<Label> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    for (int k = 0; k < 50; ++k) {
      shuffle(std::span<Label>(perm), rng);
      CHECK(best >= gracesize_of(t, Labelling{perm, n}));
    }
  }
}

TEST_CASE("exact gracesize refuses large trees") {
  try {
    max_gracesize(random_tree(12, 0));
    FAIL("accepted n = 12");
  } catch (const TreeError& e) {
    CHECK(e.kind() == TreeErrorKind::kUnsupported);
  }
}

TEST_CASE("searches are deterministic") {
  const Tree t = random_tree(11, 42);
  const GracefulSearch a = solve_graceful(t, 5'000'000);
  const GracefulSearch b = solve_graceful(t, 5'000'000);
  CHECK(a.stats.nodes_expanded == b.stats.nodes_expanded);
  REQUIRE(a.labelling);
  REQUIRE(b.labelling);
  CHECK(a.labelling->label == b.labelling->label);
  const GracesizeSearch c = max_gracesize(t);
  const GracesizeSearch d = max_gracesize(t);
  CHECK(c.stats.nodes_expanded == d.stats.nodes_expanded);
  CHECK(c.labelling.label == d.labelling.label);
}
