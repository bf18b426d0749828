#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "neargrace/tree.hpp"
#include "oracles.hpp"

using namespace neargrace;

namespace {

TreeErrorKind parse_error(const char* text) {
  try {
    parse_tree(text);
  } catch (const TreeError& e) {
    return e.kind();
  }
  FAIL("parse accepted " << text);
  return TreeErrorKind::kMalformed;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("parse single edge and path") {
  const Tree t = parse_tree("2\n0 1");
  CHECK(t.order() == 2);
  REQUIRE(t.size() == 1);
  CHECK(t.edges()[0] == Edge{0, 1});

  const Tree p5 = parse_tree("5\n0 1\n1 2\n2 3\n3 4");
  CHECK(p5.order() == 5);
  CHECK(p5.max_degree() == 2);
  CHECK(p5.degree(0) == 1);
  CHECK(p5.degree(4) == 1);
}

TEST_CASE("parse skips comments and blank lines") {
  const Tree t = parse_tree("# header\n3\n\n0 1\n# between\n1 2\n");
  CHECK(t.order() == 3);
  CHECK(t.size() == 2);
}

TEST_CASE("parse rejects bad documents") {
  CHECK(parse_error("4\n0 1\n1 2\n0 2") == TreeErrorKind::kNotATree);
  CHECK(parse_error("4\n0 1\n2 3\n1 0") == TreeErrorKind::kDuplicateEdge);
  CHECK(parse_error("3\n0 1\n1 3") == TreeErrorKind::kIdOutOfRange);
  CHECK(parse_error("4\n0 1\n2 3") == TreeErrorKind::kNotATree);
  CHECK(parse_error("3\n0 1\n1") == TreeErrorKind::kMalformed);
  CHECK(parse_error("") == TreeErrorKind::kMalformed);
  CHECK(parse_error("0") == TreeErrorKind::kMalformed);
}

TEST_CASE("edge list round trip") {
  const Tree t = random_tree(40, 9);
  const Tree back = parse_tree(to_edge_list(t));
  CHECK(back.order() == t.order());
  CHECK(back.edges() == t.edges());
}

TEST_CASE("random tree small cases and shape") {
  for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
    CHECK(random_tree(1, seed).order() == 1);
    CHECK(random_tree(1, seed).size() == 0);
    const Tree t2 = random_tree(2, seed);
    REQUIRE(t2.size() == 1);
    CHECK(std::min(t2.edges()[0].u, t2.edges()[0].v) == 0);
    CHECK(std::max(t2.edges()[0].u, t2.edges()[0].v) == 1);
  }
  for (int n : {3, 10, 257, 5000}) {
    const Tree t = random_tree(n, n);
    CHECK(t.size() == n - 1);
    CHECK(oracle::connected(t));
    CHECK(random_tree(n, n).edges() == t.edges());
  }
}

TEST_CASE("prufer code inverts decoding") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 30);
    const auto seq = random_prufer(n, seed);
    CHECK(prufer_code(tree_from_prufer(n, seq)) == seq);
    CHECK(random_tree(n, seed).edges() == tree_from_prufer(n, seq).edges());
  }
}

TEST_CASE("random prufer sequences are uniform for n = 8") {
  // 10^5 draws over 8^6 cells: chi-square against the exact uniform law, using
  // the Poisson variance 2 + 1/E per cell. Per-position marginals are tested
  // separately with 7 degrees of freedom.
  const int cells = 1 << 18;
  const int draws = 100000;
  std::vector<int> count(cells, 0);
  std::vector<std::vector<int>> position(6, std::vector<int>(8, 0));
  for (int s = 0; s < draws; ++s) {
    const auto seq = random_prufer(8, s);
    REQUIRE(seq.size() == 6);
    int key = 0;
    for (int k = 0; k < 6; ++k) {
      key = key * 8 + seq[k];
      ++position[k][seq[k]];
    }
    ++count[key];
  }
  const double expect = static_cast<double>(draws) / cells;
  double chi = 0;
  for (int c : count) chi += (c - expect) * (c - expect) / expect;
  const double z = (chi - (cells - 1)) / std::sqrt(cells * (2.0 + 1.0 / expect));
  CHECK(std::abs(z) < 5.0);

  for (const auto& row : position) {
    double x2 = 0;
    for (int c : row) x2 += (c - draws / 8.0) * (c - draws / 8.0) / (draws / 8.0);
    CHECK(x2 < 29.9);  // chi-square(7) upper 1e-4 point is about 29.88
  }
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_trees(1).size() == 1);
  CHECK(enumerate_trees(2).size() == 1);
  CHECK(enumerate_trees(3).size() == 1);
  const auto four = enumerate_trees(4);
  REQUIRE(four.size() == 2);
  std::multiset<int> maxdeg{four[0].max_degree(), four[1].max_degree()};
  CHECK(maxdeg == std::multiset<int>{2, 3});
  CHECK(enumerate_trees(7).size() == 11);
  CHECK_THROWS_AS(enumerate_trees(0), TreeError);
  CHECK_THROWS_AS(enumerate_trees(13), TreeError);
}

TEST_CASE("enumeration is complete and duplicate free up to n = 9") {
  // Sum of n!/|Aut T| over the classes counts labelled trees, which is n^(n-2).
  for (int n = 2; n <= 9; ++n) {
    const auto trees = enumerate_trees(n);
    long long labelled = 0;
    for (const Tree& t : trees) {
      CHECK(t.size() == n - 1);
      CHECK(oracle::connected(t));
      labelled += factorial(n) / oracle::automorphisms(t);
    }
    long long cayley = 1;
    for (int k = 0; k < n - 2; ++k) cayley *= n;
    CHECK_MESSAGE(labelled == cayley, "n=" << n);
    if (n <= 7) {
      for (std::size_t a = 0; a < trees.size(); ++a)
        for (std::size_t b = a + 1; b < trees.size(); ++b)
          CHECK_FALSE(oracle::isomorphic(n, trees[a].edges(), trees[b].edges()));
    }
  }
}

TEST_CASE("rooted codes on P3") {
  const Tree p3 = parse_tree("3\n0 1\n1 2");
  CHECK(rooted_code(p3, 1) != rooted_code(p3, 0));
  CHECK(rooted_code(p3, 0) == rooted_code(p3, 2));
  CHECK_THROWS_AS(rooted_code(p3, 3), TreeError);
}

TEST_CASE("rooted codes agree with brute-force rooted isomorphism") {
  struct Rooted {
    Tree tree;
    Vertex root;
    std::string code;
  };
  for (int limit : {4, 6}) {
    std::vector<Rooted> all;
    for (int n = 1; n <= limit; ++n)
      for (const Tree& t : enumerate_trees(n))
        for (Vertex r = 0; r < n; ++r) all.push_back({t, r, rooted_code(t, r)});
    std::set<std::string> codes;
    for (std::size_t a = 0; a < all.size(); ++a) {
      codes.insert(all[a].code);
      for (std::size_t b = a + 1; b < all.size(); ++b) {
        const bool same = all[a].tree.order() == all[b].tree.order() &&
                          oracle::isomorphic(all[a].tree.order(), all[a].tree.edges(), all[b].tree.edges(),
                                             all[a].root, all[b].root);
        CHECK((all[a].code == all[b].code) == same);
      }
    }
    // Rooted unlabelled trees: 1, 1, 2, 4, 9, 20 for orders 1..6.
    CHECK(codes.size() == (limit == 4 ? 8u : 37u));
  }
}

TEST_CASE("free code is an isomorphism invariant") {
  for (int n = 1; n <= 8; ++n) {
    std::set<std::string> codes;
    for (const Tree& t : enumerate_trees(n)) codes.insert(free_code(t));
    CHECK(codes.size() == enumerate_trees(n).size());
  }
  const Tree a = parse_tree("4\n0 1\n1 2\n2 3");
  const Tree b = parse_tree("4\n2 0\n0 3\n3 1");
  CHECK(free_code(a) == free_code(b));
}

TEST_CASE("components and shapes") {
  const Tree t = parse_tree("7\n0 1\n1 2\n1 3\n3 4\n4 5\n4 6");
  const VertexMask removed = mask_of(7, std::vector<Vertex>{1, 4});
  auto comps = components(t, removed);
  std::multiset<std::size_t> sizes;
  for (const auto& c : comps) sizes.insert(c.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 1, 1, 1, 1});

  std::vector<std::pair<Tree, Vertex>> parts{{parse_tree("2\n0 1"), 0}, {parse_tree("2\n0 1"), 1},
                                             {parse_tree("3\n0 1\n1 2"), 1}};
  const RootedForest forest = RootedForest::from_trees(parts);
  CHECK(forest.vertex_count() == 7);
  const ForestShape shape = shape_of(forest);
  CHECK(shape.size() == 2);
  CHECK(shape_order(shape) == 7);
  CHECK(forest.components[1].root == 3);
}

TEST_CASE("enumeration counts match the counting formula up to n = 12") {
  for (int n = 1; n <= 12; ++n) CHECK(static_cast<long long>(enumerate_trees(n).size()) == oracle::free_tree_count(n));
}
