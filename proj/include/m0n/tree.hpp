#pragma once

#include <string>
#include <utility>
#include <vector>

#include "m0n/split.hpp"

namespace m0n {

/// Unrooted tree with n leaves labeled 1..n and no degree-two vertices.
///
/// Vertices 0..n-1 are the leaves (vertex v carries label v+1); every vertex
/// from n upward is internal and has degree >= 3.  Values are immutable after
/// construction; the constructor validates all invariants.
class PhylogeneticTree {
 public:
  PhylogeneticTree(int taxon_count, const std::vector<std::pair<int, int>>& edges);

  int taxon_count() const { return n_; }
  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int internal_vertex_count() const { return vertex_count() - n_; }
  bool is_leaf(int v) const { return v < n_; }
  int leaf_label(int v) const { return v + 1; }

  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }

  /// All edges as (min, max) pairs in ascending order.
  std::vector<std::pair<int, int>> edges() const;

  /// Edges between two internal vertices; equals |Σ(T)|.
  int internal_edge_count() const;

 private:
  int n_;
  std::vector<std::vector<int>> adj_;  // neighbor lists, each ascending
};

/// The unique tree with one internal vertex adjacent to all n leaves; Σ = ∅.
PhylogeneticTree star_tree(int n);

/// Σ(T): one canonical split per internal edge.  Always stable and pairwise
/// compatible.
SplitSystem splits_of_tree(const PhylogeneticTree& t);

/// One step of Buneman's constructive proof ("tree popping").  Returns t
/// itself when s is already in Σ(t); otherwise splits the unique vertex all
/// of whose branches lie on one side of s into a new internal edge realizing
/// s, so that Σ(result) = Σ(t) ∪ {s}.  Throws IncompatibleSplit when no such
/// vertex exists (exactly when s conflicts with a split of t).
PhylogeneticTree pop_split(const PhylogeneticTree& t, const Split& s);

/// The tree with Σ(T) equal to the given system, built by popping splits in
/// ascending block order from the star tree.  Throws IncompatibleSystem with
/// a witness pair when the system is not pairwise compatible.
PhylogeneticTree tree_from_splits(int n, const SplitSystem& sys);

/// Every internal vertex has degree exactly 3; equivalently |Σ(t)| = n-3.
bool is_binary(const PhylogeneticTree& t);

inline constexpr int kDefaultEnumerationCeiling = 10;

/// Total order on trees by canonical Newick string; the order enumerations
/// are emitted in.
struct TreeIterationOrder {
  bool operator()(const PhylogeneticTree& a, const PhylogeneticTree& b) const;
};

/// Every leaf-labeled phylogenetic tree on taxa 1..n, exactly once, in
/// TreeIterationOrder.  Grows trees by leaf addition: each tree on n arises
/// from a unique tree on n-1 by subdividing an edge or attaching the new
/// leaf to an internal vertex.
std::vector<PhylogeneticTree> enumerate_trees(int n, int ceiling = kDefaultEnumerationCeiling);

/// Parses a Newick string over decimal leaf labels.  Edge lengths and
/// internal vertex names are accepted and discarded.  A degree-two root
/// (rooted input) is suppressed unless `strict` is set, in which case it
/// raises DegreeViolation.
PhylogeneticTree parse_newick(const std::string& text, bool strict = false);

/// Canonical Newick form: rooted at the internal vertex adjacent to leaf 1,
/// children ordered by the minimum label in their subtree, no lengths or
/// internal names.  Two trees are leaf-label isomorphic iff their canonical
/// strings are equal.
std::string to_newick(const PhylogeneticTree& t);

}  // namespace m0n
