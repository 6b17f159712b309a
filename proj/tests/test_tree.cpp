#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "m0n/tree.hpp"
#include "oracles.hpp"

using m0n::PhylogeneticTree;
using m0n::Split;
using m0n::SplitSystem;

namespace {

// Caterpillar on four taxa: one internal edge separating {1,2} from {3,4}.
PhylogeneticTree quartet_12_34() {
  return {4, {{0, 4}, {1, 4}, {4, 5}, {2, 5}, {3, 5}}};
}

PhylogeneticTree fold_splits(int n, const std::vector<Split>& order) {
  PhylogeneticTree t = m0n::star_tree(n);
  for (const Split& s : order) t = m0n::pop_split(t, s);
  return t;
}

bool no_degree_two(const PhylogeneticTree& t) {
  for (int v = t.taxon_count(); v < t.vertex_count(); ++v)
    if (t.degree(v) < 3) return false;
  return true;
}

}  // namespace

TEST_CASE("star_tree shape") {
  const auto star3 = m0n::star_tree(3);
  CHECK(star3.vertex_count() == 4);
  CHECK(star3.edges().size() == 3);
  CHECK(star3.internal_edge_count() == 0);

  const auto star5 = m0n::star_tree(5);
  CHECK(star5.vertex_count() == 6);
  CHECK(star5.edges().size() == 5);
  CHECK(m0n::splits_of_tree(star5).empty());

  CHECK_THROWS_AS(m0n::star_tree(2), m0n::TaxonCountTooSmall);
}

TEST_CASE("tree construction validates the invariants") {
  // Internal vertex of degree two.
  CHECK_THROWS_AS(PhylogeneticTree(3, {{0, 3}, {3, 4}, {1, 4}, {2, 4}}), m0n::DegreeViolation);
  // A leaf with two edges.
  CHECK_THROWS_AS(PhylogeneticTree(3, {{0, 3}, {1, 3}, {2, 3}, {0, 3}}), m0n::InvalidTree);
  // Wrong edge count.
  CHECK_THROWS_AS(PhylogeneticTree(3, {{0, 3}, {1, 3}}), m0n::InvalidTree);
  CHECK_THROWS_AS(PhylogeneticTree(3, {{0, 3}, {1, 3}, {2, 3}, {3, 3}}), m0n::InvalidTree);
}

TEST_CASE("splits_of_tree reads internal edges") {
  const auto sys = m0n::splits_of_tree(quartet_12_34());
  REQUIRE(sys.size() == 1);
  CHECK(sys.splits()[0] == m0n::make_split(4, {1, 2}));

  CHECK(m0n::splits_of_tree(m0n::star_tree(6)).empty());
}

TEST_CASE("binary five-leaf trees carry two compatible splits") {
  for (const auto& t : m0n::enumerate_trees(5)) {
    if (!m0n::is_binary(t)) continue;
    const auto sys = m0n::splits_of_tree(t);
    CHECK(sys.size() == 2);
    CHECK(m0n::is_pairwise_compatible(sys));
    for (const Split& s : sys) CHECK(s.is_stable());
  }
}

TEST_CASE("pop_split refines the star into the quartet") {
  const auto popped = m0n::pop_split(m0n::star_tree(4), m0n::make_split(4, {1, 2}));
  CHECK(m0n::to_newick(popped) == "(1,2,(3,4));");
  CHECK(m0n::to_newick(popped) == m0n::to_newick(quartet_12_34()));
}

TEST_CASE("pop_split has set semantics") {
  const auto t = quartet_12_34();
  const auto again = m0n::pop_split(t, m0n::make_split(4, {3, 4}));
  CHECK(m0n::to_newick(again) == m0n::to_newick(t));
  CHECK(again.vertex_count() == t.vertex_count());
}

TEST_CASE("pop_split rejects a conflicting split") {
  const auto t = m0n::pop_split(m0n::star_tree(4), m0n::make_split(4, {1, 2}));
  CHECK_THROWS_AS(m0n::pop_split(t, m0n::make_split(4, {1, 3})), m0n::IncompatibleSplit);
  CHECK_THROWS_AS(m0n::pop_split(t, m0n::make_split(5, {1, 2})), m0n::TaxonCountMismatch);
  CHECK_THROWS_AS(m0n::pop_split(t, m0n::make_split(4, {1})), m0n::NotStable);
}

TEST_CASE("tree_from_splits base cases") {
  CHECK(m0n::to_newick(m0n::tree_from_splits(4, SplitSystem(4))) == "(1,2,3,4);");

  SplitSystem caterpillar(5);
  caterpillar.insert(m0n::make_split(5, {1, 2}));
  caterpillar.insert(m0n::make_split(5, {4, 5}));
  const auto t = m0n::tree_from_splits(5, caterpillar);
  CHECK(m0n::to_newick(t) == "(1,2,(3,(4,5)));");
  CHECK(m0n::splits_of_tree(t) == caterpillar);
}

TEST_CASE("tree_from_splits reports the offending pair") {
  SplitSystem clashing(4);
  clashing.insert(m0n::make_split(4, {1, 2}));
  clashing.insert(m0n::make_split(4, {1, 3}));
  try {
    m0n::tree_from_splits(4, clashing);
    FAIL("expected IncompatibleSystem");
  } catch (const m0n::IncompatibleSystem& e) {
    CHECK(e.first == m0n::make_split(4, {1, 2}));
    CHECK(e.second == m0n::make_split(4, {1, 3}));
  }
}

TEST_CASE("is_binary") {
  CHECK(m0n::is_binary(m0n::star_tree(3)));
  CHECK_FALSE(m0n::is_binary(m0n::star_tree(5)));
}

TEST_CASE("is_binary is equivalent to |splits| = n-3, n <= 7") {
  for (int n = 4; n <= 7; ++n)
    for (const auto& t : m0n::enumerate_trees(n)) {
      const auto sys = m0n::splits_of_tree(t);
      CHECK(static_cast<int>(sys.size()) <= n - 3);
      CHECK(m0n::is_binary(t) == (static_cast<int>(sys.size()) == n - 3));
      CHECK(static_cast<int>(sys.size()) == t.internal_edge_count());
    }
}

TEST_CASE("enumerate_trees counts") {
  CHECK(m0n::enumerate_trees(3).size() == 1);
  CHECK(m0n::enumerate_trees(4).size() == 4);
  CHECK(m0n::enumerate_trees(5).size() == 26);

  // Codimension profile at n=5: the star, one tree per stable split, and
  // the binary trees.
  std::vector<int> by_codim(3, 0);
  for (const auto& t : m0n::enumerate_trees(5)) ++by_codim[t.internal_edge_count()];
  CHECK(by_codim == std::vector<int>{1, 10, 15});

  for (int n = 5; n <= 7; ++n) {
    long long binary = 0;
    for (const auto& t : m0n::enumerate_trees(n))
      if (m0n::is_binary(t)) ++binary;
    CHECK(binary == oracles::binary_tree_count(n));
  }
}

TEST_CASE("enumerate_trees output is sorted and duplicate-free") {
  for (int n = 4; n <= 6; ++n) {
    const auto trees = m0n::enumerate_trees(n);
    CHECK(std::is_sorted(trees.begin(), trees.end(), m0n::TreeIterationOrder{}));
    std::vector<std::string> keys;
    for (const auto& t : trees) keys.push_back(m0n::to_newick(t));
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  }
}

TEST_CASE("enumerate_trees honors the ceiling") {
  CHECK_THROWS_AS(m0n::enumerate_trees(11), m0n::EnumerationTooLarge);
  CHECK_THROWS_AS(m0n::enumerate_trees(5, 4), m0n::EnumerationTooLarge);
  CHECK_THROWS_AS(m0n::enumerate_trees(2), m0n::TaxonCountTooSmall);
}

TEST_CASE("splits of any tree are pairwise compatible, n <= 7") {
  for (int n = 4; n <= 7; ++n)
    for (const auto& t : m0n::enumerate_trees(n))
      CHECK(m0n::is_pairwise_compatible(m0n::splits_of_tree(t)));
}

TEST_CASE("reconstruction inverts the split map, n <= 6") {
  for (int n = 4; n <= 6; ++n)
    for (const auto& t : m0n::enumerate_trees(n)) {
      const auto sys = m0n::splits_of_tree(t);
      const auto rebuilt = m0n::tree_from_splits(n, sys);
      CHECK(m0n::to_newick(rebuilt) == m0n::to_newick(t));
      CHECK(m0n::splits_of_tree(rebuilt) == sys);
    }
}

TEST_CASE("popping order does not change the tree") {
  std::mt19937_64 rng(424242);
  for (const auto& t : m0n::enumerate_trees(6)) {
    const auto sys = m0n::splits_of_tree(t);
    if (sys.size() < 2) continue;
    std::vector<Split> order(sys.begin(), sys.end());
    const std::string expected = m0n::to_newick(fold_splits(6, order));
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(order.begin(), order.end(), rng);
      const auto folded = fold_splits(6, order);
      CHECK(m0n::to_newick(folded) == expected);
      CHECK(no_degree_two(folded));
    }
  }
}

TEST_CASE("to_newick canonical form") {
  CHECK(m0n::to_newick(m0n::star_tree(4)) == "(1,2,3,4);");
  CHECK(m0n::to_newick(m0n::star_tree(3)) == "(1,2,3);");
}

TEST_CASE("parse_newick reads the caterpillar") {
  const auto t = m0n::parse_newick("(2,(3,(4,5)),1);");
  const auto sys = m0n::splits_of_tree(t);
  REQUIRE(sys.size() == 2);
  CHECK(sys.contains(m0n::make_split(5, {1, 2})));
  CHECK(sys.contains(m0n::make_split(5, {4, 5})));
  CHECK(m0n::to_newick(t) == "(1,2,(3,(4,5)));");
}

TEST_CASE("parse_newick ignores lengths and internal names") {
  const auto t = m0n::parse_newick("( 1:0.5, 2:1e-3, (3:1,4:2)anc:7 );");
  CHECK(m0n::to_newick(t) == "(1,2,(3,4));");
}

TEST_CASE("parse_newick suppresses a degree-two root by default") {
  const auto t = m0n::parse_newick("((1,2),(3,4));");
  CHECK(m0n::to_newick(t) == "(1,2,(3,4));");
  CHECK_THROWS_AS(m0n::parse_newick("((1,2),(3,4));", true), m0n::DegreeViolation);
  // Unrooted input passes strict mode untouched.
  CHECK(m0n::to_newick(m0n::parse_newick("(1,2,(3,4));", true)) == "(1,2,(3,4));");
}

TEST_CASE("parse_newick error cases") {
  CHECK_THROWS_AS(m0n::parse_newick("((1,2);"), m0n::ParseError);     // unbalanced
  CHECK_THROWS_AS(m0n::parse_newick("(1,1,2);"), m0n::ParseError);    // duplicate leaf
  CHECK_THROWS_AS(m0n::parse_newick("(1,2,4);"), m0n::ParseError);    // label gap
  CHECK_THROWS_AS(m0n::parse_newick("(1,a,3);"), m0n::ParseError);    // non-decimal leaf
  CHECK_THROWS_AS(m0n::parse_newick("(1);"), m0n::ParseError);        // single child
  CHECK_THROWS_AS(m0n::parse_newick("(1,2,3)"), m0n::ParseError);     // missing ';'
  CHECK_THROWS_AS(m0n::parse_newick("(1,2,3);x"), m0n::ParseError);   // trailing text
  CHECK_THROWS_AS(m0n::parse_newick("(1,2);"), m0n::TaxonCountTooSmall);
  CHECK_THROWS_AS(m0n::parse_newick("1;"), m0n::TaxonCountTooSmall);
}

TEST_CASE("newick round trip on all trees, n <= 5") {
  for (int n = 3; n <= 5; ++n)
    for (const auto& t : m0n::enumerate_trees(n)) {
      const std::string text = m0n::to_newick(t);
      CHECK(m0n::to_newick(m0n::parse_newick(text)) == text);
    }
}
