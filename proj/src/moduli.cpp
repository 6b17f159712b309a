#include "m0n/moduli.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>

#include <json.hpp>

namespace m0n {

BoundaryDivisor::BoundaryDivisor(const Split& s) : split(s) {
  if (!split.is_stable()) throw NotStable();
}

std::vector<BoundaryDivisor> boundary_divisors(int n) {
  check_taxon_count(n);
  std::vector<BoundaryDivisor> out;
  for (const Split& s : enumerate_stable_splits(n)) out.emplace_back(s);
  return out;
}

bool divisors_intersect(const BoundaryDivisor& a, const BoundaryDivisor& b) {
  return keel_intersects(a.split, b.split);
}

std::optional<Stratum> stratum_of_divisor_set(int n,
                                              const std::vector<BoundaryDivisor>& divisors) {
  check_taxon_count(n);
  SplitSystem sys(n);
  for (const BoundaryDivisor& d : divisors) {
    if (d.split.taxon_count() != n) throw TaxonCountMismatch(d.split.taxon_count(), n);
    sys.insert(d.split);
  }
  if (!is_pairwise_compatible(sys)) return std::nullopt;
  PhylogeneticTree tree = tree_from_splits(n, sys);
  // Realization check: the intersection is a stratum only if the popped tree
  // induces exactly the requested splits.
  if (!(splits_of_tree(tree) == sys)) return std::nullopt;
  return Stratum{std::move(tree), static_cast<int>(sys.size())};
}

StrataEnumeration enumerate_strata(int n, int ceiling) {
  StrataEnumeration out;
  out.counts_by_codimension.assign(std::max(1, n - 2), 0);
  std::vector<PhylogeneticTree> trees = enumerate_trees(n, ceiling);
  out.strata.reserve(trees.size());
  for (PhylogeneticTree& tree : trees) {
    const int codim = tree.internal_edge_count();
    ++out.counts_by_codimension[codim];
    out.strata.push_back(Stratum{std::move(tree), codim});
  }
  return out;
}

namespace {

using FaceMask = std::vector<std::uint64_t>;

FaceMask face_mask(const std::vector<int>& face, int words) {
  FaceMask mask(static_cast<std::size_t>(words), 0);
  for (int v : face) mask[v / 64] |= std::uint64_t{1} << (v % 64);
  return mask;
}

bool mask_subset(const FaceMask& a, const FaceMask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

}  // namespace

SimplicialComplex::SimplicialComplex(int vertex_count, std::vector<std::vector<int>> faces)
    : vertex_count_(vertex_count) {
  if (vertex_count_ < 0) throw Error("vertex count must be nonnegative");
  std::set<std::vector<int>> unique;
  for (std::vector<int>& face : faces) {
    std::sort(face.begin(), face.end());
    face.erase(std::unique(face.begin(), face.end()), face.end());
    if (face.empty()) continue;
    if (face.front() < 0 || face.back() >= vertex_count_)
      throw Error("face vertex out of range");
    unique.insert(std::move(face));
  }
  for (int v = 0; v < vertex_count_; ++v) unique.insert({v});

  // Keep maximal faces only; larger faces are confirmed first.
  std::vector<std::vector<int>> candidates(unique.begin(), unique.end());
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  const int words = (vertex_count_ + 63) / 64;
  std::vector<FaceMask> kept_masks;
  for (const std::vector<int>& face : candidates) {
    const FaceMask mask = face_mask(face, words);
    bool dominated = false;
    for (const FaceMask& larger : kept_masks)
      if (mask_subset(mask, larger)) {
        dominated = true;
        break;
      }
    if (!dominated) {
      kept_masks.push_back(mask);
      maximal_.push_back(face);
    }
  }
  std::sort(maximal_.begin(), maximal_.end());
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
  return a.vertex_count_ == b.vertex_count_ && a.maximal_ == b.maximal_;
}

bool SimplicialComplex::has_face(std::vector<int> face) const {
  std::sort(face.begin(), face.end());
  face.erase(std::unique(face.begin(), face.end()), face.end());
  if (face.empty()) return true;
  if (face.front() < 0 || face.back() >= vertex_count_)
    throw Error("face vertex out of range");
  const int words = (vertex_count_ + 63) / 64;
  const FaceMask mask = face_mask(face, words);
  for (const std::vector<int>& maximal : maximal_)
    if (maximal.size() >= face.size() && mask_subset(mask, face_mask(maximal, words)))
      return true;
  return false;
}

int SimplicialComplex::max_face_size() const {
  std::size_t best = 0;
  for (const std::vector<int>& face : maximal_) best = std::max(best, face.size());
  return static_cast<int>(best);
}

std::vector<std::pair<int, int>> SimplicialComplex::skeleton_edges() const {
  std::set<std::pair<int, int>> edges;
  for (const std::vector<int>& face : maximal_)
    for (std::size_t i = 0; i < face.size(); ++i)
      for (std::size_t j = i + 1; j < face.size(); ++j) edges.insert({face[i], face[j]});
  return {edges.begin(), edges.end()};
}

std::vector<std::vector<int>> SimplicialComplex::all_faces() const {
  std::set<std::vector<int>> faces;
  for (const std::vector<int>& face : maximal_) {
    if (face.size() > 25) throw Error("face too large to expand");
    const std::uint32_t limit = std::uint32_t{1} << face.size();
    for (std::uint32_t bits = 1; bits < limit; ++bits) {
      std::vector<int> subset;
      for (std::size_t i = 0; i < face.size(); ++i)
        if ((bits >> i) & 1) subset.push_back(face[i]);
      faces.insert(std::move(subset));
    }
  }
  return {faces.begin(), faces.end()};
}

namespace {

void check_graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
      throw Error("edge endpoint out of range");
    if (a == b) throw Error("loops are not allowed");
  }
}

}  // namespace

SimplicialComplex flag_complex_of_graph(int vertex_count,
                                        const std::vector<std::pair<int, int>>& edges) {
  check_graph(vertex_count, edges);
  std::vector<std::vector<char>> adj(vertex_count, std::vector<char>(vertex_count, 0));
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = 1;

  // Bron–Kerbosch with pivoting; P and X stay sorted.
  std::vector<std::vector<int>> cliques;
  std::vector<int> current;
  std::function<void(std::vector<int>, std::vector<int>)> expand =
      [&](std::vector<int> candidates, std::vector<int> excluded) {
        if (candidates.empty() && excluded.empty()) {
          if (!current.empty()) cliques.push_back(current);
          return;
        }
        int pivot = -1, best = -1;
        for (const std::vector<int>* side : {&candidates, &excluded})
          for (int u : *side) {
            int hits = 0;
            for (int v : candidates) hits += adj[u][v];
            if (hits > best) {
              best = hits;
              pivot = u;
            }
          }
        std::vector<int> frontier;
        for (int v : candidates)
          if (!adj[pivot][v]) frontier.push_back(v);
        for (int v : frontier) {
          std::vector<int> next_candidates, next_excluded;
          for (int w : candidates)
            if (adj[v][w]) next_candidates.push_back(w);
          for (int w : excluded)
            if (adj[v][w]) next_excluded.push_back(w);
          current.push_back(v);
          expand(std::move(next_candidates), std::move(next_excluded));
          current.pop_back();
          candidates.erase(std::find(candidates.begin(), candidates.end(), v));
          excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
        }
      };
  std::vector<int> all(static_cast<std::size_t>(vertex_count));
  for (int v = 0; v < vertex_count; ++v) all[v] = v;
  expand(std::move(all), {});
  return {vertex_count, std::move(cliques)};
}

bool is_flag(const SimplicialComplex& c) {
  return flag_complex_of_graph(c.vertex_count(), c.skeleton_edges()) == c;
}

std::vector<long long> f_vector(const SimplicialComplex& c) {
  std::vector<long long> counts(static_cast<std::size_t>(c.max_face_size()), 0);
  for (const std::vector<int>& face : c.all_faces()) ++counts[face.size() - 1];
  return counts;
}

namespace {

// Visits every nonempty clique of the graph exactly once, in lexicographic
// order of the sorted vertex tuple (depth-first extension by larger ids).
void for_each_clique(const std::vector<std::vector<char>>& adj,
                     const std::function<void(const std::vector<int>&)>& visit) {
  const int vertex_count = static_cast<int>(adj.size());
  std::vector<int> clique;
  std::function<void(int)> extend = [&](int start) {
    for (int v = start; v < vertex_count; ++v) {
      bool joins = true;
      for (int u : clique)
        if (!adj[u][v]) {
          joins = false;
          break;
        }
      if (!joins) continue;
      clique.push_back(v);
      visit(clique);
      extend(v + 1);
      clique.pop_back();
    }
  };
  extend(0);
}

std::vector<std::vector<char>> intersection_graph(const std::vector<BoundaryDivisor>& divisors) {
  const int count = static_cast<int>(divisors.size());
  std::vector<std::vector<char>> adj(count, std::vector<char>(count, 0));
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      adj[i][j] = adj[j][i] = divisors_intersect(divisors[i], divisors[j]) ? 1 : 0;
  return adj;
}

void bump(std::vector<long long>& counts, std::size_t size) {
  if (counts.size() < size) counts.resize(size, 0);
  ++counts[size - 1];
}

}  // namespace

SimplicialComplex dual_complex(int n, int ceiling) {
  if (n < 4) throw TaxonCountTooSmall(n, 4);
  check_taxon_count(n);
  if (n > ceiling) throw EnumerationTooLarge(n, ceiling);

  const std::vector<BoundaryDivisor> divisors = boundary_divisors(n);
  const auto adj = intersection_graph(divisors);
  std::vector<std::vector<int>> faces;
  for_each_clique(adj, [&](const std::vector<int>& clique) {
    std::vector<BoundaryDivisor> members;
    members.reserve(clique.size());
    for (int v : clique) members.push_back(divisors[v]);
    if (stratum_of_divisor_set(n, members)) faces.push_back(clique);
  });
  return {static_cast<int>(divisors.size()), std::move(faces)};
}

FlagReport verify_flag_theorem(int n, int ceiling) {
  if (n < 4) throw TaxonCountTooSmall(n, 4);
  check_taxon_count(n);
  if (n > ceiling) throw EnumerationTooLarge(n, ceiling);

  FlagReport report;
  report.n = n;
  const std::vector<BoundaryDivisor> divisors = boundary_divisors(n);
  report.divisor_count = static_cast<int>(divisors.size());
  const auto adj = intersection_graph(divisors);

  for_each_clique(adj, [&](const std::vector<int>& clique) {
    bump(report.clique_counts_by_size, clique.size());
    SplitSystem sys(n);
    for (int v : clique) sys.insert(divisors[v].split);
    bool realized = false;
    try {
      // Faces come from tree reconstruction, not from the pairwise
      // compatibility shortcut: the tree must exist and induce exactly the
      // clique's splits.
      realized = splits_of_tree(tree_from_splits(n, sys)) == sys;
    } catch (const Error&) {
      realized = false;
    }
    if (realized) {
      bump(report.face_counts, clique.size());
    } else if (!report.witness) {
      // First failure in lexicographic DFS order is the least witness.
      std::vector<Split> splits;
      for (int v : clique) splits.push_back(divisors[v].split);
      report.witness = std::move(splits);
    }
  });

  report.max_face_size = static_cast<int>(report.face_counts.size());
  report.is_flag = !report.witness.has_value();
  report.strata_by_codimension = enumerate_strata(n, n).counts_by_codimension;
  return report;
}

std::string report_to_json(const FlagReport& report) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["n"] = report.n;
  doc["divisor_count"] = report.divisor_count;
  doc["f_vector"] = report.face_counts;
  doc["max_face_size"] = report.max_face_size;
  doc["strata_by_codim"] = report.strata_by_codimension;
  doc["is_flag"] = report.is_flag;
  if (report.witness) {
    std::vector<std::string> texts;
    texts.reserve(report.witness->size());
    for (const Split& s : *report.witness) texts.push_back(format_split(s));
    doc["witness"] = texts;
  }
  return doc.dump();
}

}  // namespace m0n
