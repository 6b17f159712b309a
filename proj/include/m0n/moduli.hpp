#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "m0n/split.hpp"
#include "m0n/tree.hpp"

namespace m0n {

/// The boundary divisor D_{I,J} of M̄₀,ₙ indexed by a stable split; the split
/// canonicalization makes D_{I,J} and D_{J,I} the same value.
struct BoundaryDivisor {
  explicit BoundaryDivisor(const Split& s);
  Split split;
  friend auto operator<=>(const BoundaryDivisor&, const BoundaryDivisor&) = default;
};

/// One divisor per stable split, ascending by block bitmask.  Empty for
/// n = 3; 2^(n-1) - n - 1 entries for n >= 4.
std::vector<BoundaryDivisor> boundary_divisors(int n);

/// Keel's criterion: D_{I,J} ∩ D_{K,L} ≠ ∅ iff one side of one split
/// contains a side of the other.
bool divisors_intersect(const BoundaryDivisor& a, const BoundaryDivisor& b);

/// A boundary stratum, identified by the dual tree of its generic point.
struct Stratum {
  PhylogeneticTree tree;
  int codimension;  // = number of internal edges of the dual tree
};

/// The stratum cut out by the given divisors, or nullopt when the
/// intersection is empty.  Realization is checked, not assumed: a tree is
/// built by popping and must induce exactly the requested splits.
std::optional<Stratum> stratum_of_divisor_set(int n, const std::vector<BoundaryDivisor>& divisors);

struct StrataEnumeration {
  std::vector<Stratum> strata;                   // one per tree, in enumerate_trees order
  std::vector<long long> counts_by_codimension;  // index c = strata of codimension c
};

/// One stratum per phylogenetic tree on n taxa.
StrataEnumeration enumerate_strata(int n, int ceiling = kDefaultEnumerationCeiling);

/// Abstract simplicial complex on vertices 0..V-1, stored by its maximal
/// faces.  Construction accepts any face family, closes it downward
/// implicitly, and keeps every vertex as a face.
class SimplicialComplex {
 public:
  SimplicialComplex(int vertex_count, std::vector<std::vector<int>> faces);

  int vertex_count() const { return vertex_count_; }
  const std::vector<std::vector<int>>& maximal_faces() const { return maximal_; }

  bool has_face(std::vector<int> face) const;
  int max_face_size() const;
  int dimension() const { return max_face_size() - 1; }

  /// The 1-skeleton: all faces of size two, ascending.
  std::vector<std::pair<int, int>> skeleton_edges() const;

  /// Every nonempty face, smallest-first within the usual lexicographic
  /// order.  Intended for desk-scale complexes; face counts explode.
  std::vector<std::vector<int>> all_faces() const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&);

 private:
  int vertex_count_;
  std::vector<std::vector<int>> maximal_;  // sorted faces in sorted order
};

/// The clique complex: faces are exactly the cliques of the graph.  Clique
/// enumeration is exact (Bron–Kerbosch with pivoting).
SimplicialComplex flag_complex_of_graph(int vertex_count,
                                        const std::vector<std::pair<int, int>>& edges);

/// True iff the complex equals the clique complex of its own 1-skeleton.
bool is_flag(const SimplicialComplex& c);

/// Entry k counts the faces of size k+1 (dimension k).
std::vector<long long> f_vector(const SimplicialComplex& c);

inline constexpr int kDefaultVerificationCeiling = 8;

/// Dual complex of the divisorial boundary: one vertex per boundary divisor,
/// one face per divisor set with nonempty intersection.  Faces are accepted
/// through stratum_of_divisor_set (tree realization), so whether the result
/// is flag remains a genuinely checked statement.
SimplicialComplex dual_complex(int n, int ceiling = kDefaultVerificationCeiling);

/// Outcome of the exhaustive verification at one n.
struct FlagReport {
  int n = 0;
  int divisor_count = 0;
  std::vector<long long> clique_counts_by_size;  // index k = cliques of size k+1
  std::vector<long long> face_counts;            // realized faces by size (the f-vector)
  std::vector<long long> strata_by_codimension;
  int max_face_size = 0;
  bool is_flag = false;
  std::optional<std::vector<Split>> witness;  // lexicographically least unrealized clique
};

/// Enumerates every clique of the divisor intersection graph and checks that
/// a tree realizes it; the verdict is computed, never assumed.  Also reports
/// strata counts from the independent tree enumeration.
FlagReport verify_flag_theorem(int n, int ceiling = kDefaultVerificationCeiling);

/// Versioned JSON document shared by the `verify` and `dual-complex`
/// commands.  Divisors appear as canonical split text.
std::string report_to_json(const FlagReport& report);

}  // namespace m0n
