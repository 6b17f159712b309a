#include "m0n/tree.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace m0n {

PhylogeneticTree::PhylogeneticTree(int taxon_count,
                                   const std::vector<std::pair<int, int>>& edges)
    : n_(taxon_count) {
  check_taxon_count(n_);
  int max_id = -1;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0) throw InvalidTree("negative vertex id");
    if (a == b) throw InvalidTree("self-loop");
    max_id = std::max(max_id, std::max(a, b));
  }
  const int vertex_total = max_id + 1;
  if (vertex_total < n_ + 1) throw InvalidTree("tree needs an internal vertex");
  if (static_cast<int>(edges.size()) != vertex_total - 1)
    throw InvalidTree("edge count must be vertex count - 1");

  adj_.assign(vertex_total, {});
  for (auto [a, b] : edges) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw InvalidTree("duplicate edge");
  }

  for (int v = 0; v < vertex_total; ++v) {
    if (is_leaf(v)) {
      if (degree(v) != 1)
        throw DegreeViolation("leaf " + std::to_string(leaf_label(v)) +
                              " has degree " + std::to_string(degree(v)));
    } else if (degree(v) < 3) {
      throw DegreeViolation("internal vertex " + std::to_string(v) +
                            " has degree " + std::to_string(degree(v)));
    }
  }

  // Connected with |E| = |V| - 1, so a tree.
  std::vector<char> seen(vertex_total, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++reached;
    for (int u : adj_[v])
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  if (reached != vertex_total) throw InvalidTree("graph is not connected");
}

std::vector<std::pair<int, int>> PhylogeneticTree::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < vertex_count(); ++v)
    for (int u : adj_[v])
      if (v < u) out.emplace_back(v, u);
  std::sort(out.begin(), out.end());
  return out;
}

int PhylogeneticTree::internal_edge_count() const {
  int count = 0;
  for (int v = n_; v < vertex_count(); ++v)
    for (int u : adj_[v])
      if (u > v) ++count;  // both endpoints internal, counted once
  return count;
}

PhylogeneticTree star_tree(int n) {
  check_taxon_count(n);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int leaf = 0; leaf < n; ++leaf) edges.emplace_back(leaf, n);
  return {n, edges};
}

namespace {

// Rooted orientation of a tree: parent pointers and, per vertex, the bitmask
// of leaf labels in its subtree.  Root is the internal vertex next to leaf 1.
struct RootedView {
  int root = -1;
  std::vector<int> parent;
  std::vector<std::uint64_t> below;
};

RootedView rooted_view(const PhylogeneticTree& t) {
  const int vertex_total = t.vertex_count();
  RootedView rv;
  rv.root = t.neighbors(0).front();
  rv.parent.assign(vertex_total, -1);
  rv.below.assign(vertex_total, 0);

  std::vector<int> order;
  order.reserve(vertex_total);
  std::vector<int> stack{rv.root};
  rv.parent[rv.root] = rv.root;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int u : t.neighbors(v))
      if (rv.parent[u] == -1) {
        rv.parent[u] = v;
        stack.push_back(u);
      }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (t.is_leaf(v)) rv.below[v] |= std::uint64_t{1} << v;
    if (v != rv.root) rv.below[rv.parent[v]] |= rv.below[v];
  }
  rv.parent[rv.root] = -1;
  return rv;
}

}  // namespace

SplitSystem splits_of_tree(const PhylogeneticTree& t) {
  SplitSystem sys(t.taxon_count());
  const RootedView rv = rooted_view(t);
  // Each internal edge is (parent, v) for exactly one internal non-root v;
  // the split block is the leaf set below v.
  for (int v = t.taxon_count(); v < t.vertex_count(); ++v)
    if (v != rv.root) sys.insert(Split(t.taxon_count(), rv.below[v]));
  return sys;
}

PhylogeneticTree pop_split(const PhylogeneticTree& t, const Split& s) {
  if (s.taxon_count() != t.taxon_count())
    throw TaxonCountMismatch(s.taxon_count(), t.taxon_count());
  if (!s.is_stable()) throw NotStable();

  const int n = t.taxon_count();
  const std::uint64_t all = full_mask(n);
  const RootedView rv = rooted_view(t);

  // Set semantics: an already-present split leaves the tree unchanged.
  for (int v = n; v < t.vertex_count(); ++v)
    if (v != rv.root && Split(n, rv.below[v]) == s) return t;

  const std::uint64_t block = s.block(), other = s.complement();
  const auto far_mask = [&](int v, int u) {
    return u == rv.parent[v] ? all ^ rv.below[v] : rv.below[u];
  };

  // The insertion point is the vertex all of whose branches are pure, i.e.
  // lie entirely on one side of s.  It exists iff s is compatible with every
  // split of t.
  int pivot = -1;
  for (int v = n; v < t.vertex_count() && pivot == -1; ++v) {
    bool pure = true;
    for (int u : t.neighbors(v)) {
      const std::uint64_t far = far_mask(v, u);
      if ((far & block) != 0 && (far & other) != 0) {
        pure = false;
        break;
      }
    }
    if (pure) pivot = v;
  }
  if (pivot == -1)
    throw IncompatibleSplit("no vertex admits the split " + format_split(s));

  // Split the pivot into an internal edge: branches on the block side stay,
  // the rest move to the new vertex.  Each side holds at least two branches
  // here (one branch per side would mean s is already an edge of t), so no
  // degree-two vertex can appear.
  const int fresh = t.vertex_count();
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : t.edges()) {
    if (a == pivot || b == pivot) {
      const int u = (a == pivot) ? b : a;
      const bool moves = (far_mask(pivot, u) & other) != 0;
      edges.emplace_back(moves ? fresh : pivot, u);
    } else {
      edges.emplace_back(a, b);
    }
  }
  edges.emplace_back(pivot, fresh);
  return {n, edges};
}

PhylogeneticTree tree_from_splits(int n, const SplitSystem& sys) {
  check_taxon_count(n);
  if (sys.taxon_count() != n) throw TaxonCountMismatch(sys.taxon_count(), n);
  for (const Split& s : sys)
    if (!s.is_stable()) throw NotStable();
  if (auto clash = first_incompatible_pair(sys))
    throw IncompatibleSystem(clash->first, clash->second);
  PhylogeneticTree t = star_tree(n);
  for (const Split& s : sys) t = pop_split(t, s);
  return t;
}

bool is_binary(const PhylogeneticTree& t) {
  for (int v = t.taxon_count(); v < t.vertex_count(); ++v)
    if (t.degree(v) != 3) return false;
  return true;
}

namespace {

std::vector<PhylogeneticTree> enumerate_unsorted(int n) {
  if (n == kMinTaxa) return {star_tree(kMinTaxa)};
  std::vector<PhylogeneticTree> out;
  const int leaf = n - 1;  // the new leaf's vertex id
  for (const PhylogeneticTree& parent : enumerate_unsorted(n - 1)) {
    const int parent_total = parent.vertex_count();
    // Internal ids shift by one to make room for the new leaf.
    const auto remap = [&](int v) { return v < n - 1 ? v : v + 1; };
    std::vector<std::pair<int, int>> base;
    for (auto [a, b] : parent.edges()) base.emplace_back(remap(a), remap(b));

    // Subdivide an edge and hang the leaf off the new vertex.
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::vector<std::pair<int, int>> edges = base;
      const auto [a, b] = edges[i];
      const int mid = parent_total + 1;
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
      edges.emplace_back(a, mid);
      edges.emplace_back(b, mid);
      edges.emplace_back(leaf, mid);
      out.emplace_back(n, edges);
    }
    // Attach the leaf directly to an internal vertex.
    for (int v = n - 1; v < parent_total; ++v) {
      std::vector<std::pair<int, int>> edges = base;
      edges.emplace_back(remap(v), leaf);
      out.emplace_back(n, edges);
    }
  }
  return out;
}

}  // namespace

bool TreeIterationOrder::operator()(const PhylogeneticTree& a, const PhylogeneticTree& b) const {
  return to_newick(a) < to_newick(b);
}

std::vector<PhylogeneticTree> enumerate_trees(int n, int ceiling) {
  check_taxon_count(n);
  if (n > ceiling) throw EnumerationTooLarge(n, ceiling);
  std::vector<PhylogeneticTree> trees = enumerate_unsorted(n);
  // Sorting by precomputed keys avoids re-serializing per comparison; the
  // result order matches TreeIterationOrder.
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) keys.emplace_back(to_newick(trees[i]), i);
  std::sort(keys.begin(), keys.end());
  std::vector<PhylogeneticTree> sorted;
  sorted.reserve(trees.size());
  for (const auto& [key, index] : keys) sorted.push_back(std::move(trees[index]));
  return sorted;
}

namespace {

// Newick ingestion builds this throwaway shape first; vertex ids are
// assigned only after the leaf label set has been checked.
struct NewickNode {
  int label = -1;  // leaves only
  std::vector<int> children;
};

class NewickParser {
 public:
  explicit NewickParser(const std::string& text) : text_(text) {}

  // Returns the node list and the root's index.
  std::pair<std::vector<NewickNode>, int> run() {
    const int root = parse_subtree();
    skip_whitespace();
    expect(';');
    skip_whitespace();
    if (pos_ != text_.size()) throw ParseError("trailing characters after ';'");
    return {std::move(nodes_), root};
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(pos_));
    ++pos_;
  }

  void skip_whitespace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Internal vertex names are parsed and discarded.
  void skip_name() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ',' || c == '(' || c == ')' || c == ':' || c == ';') break;
      if (std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
  }

  // ":<number>" suffixes are parsed and discarded.
  void skip_length() {
    if (peek() != ':') return;
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' ||
          c == 'e' || c == 'E')
        ++pos_;
      else
        break;
    }
    if (pos_ == start) throw ParseError("expected a branch length after ':'");
  }

  int parse_subtree() {
    skip_whitespace();
    if (peek() == '(') {
      ++pos_;
      NewickNode node;
      node.children.push_back(parse_subtree());
      skip_whitespace();
      if (peek() != ',') throw ParseError("subtree needs at least two children");
      while (peek() == ',') {
        ++pos_;
        node.children.push_back(parse_subtree());
        skip_whitespace();
      }
      expect(')');
      skip_name();
      skip_length();
      nodes_.push_back(std::move(node));
      return static_cast<int>(nodes_.size()) - 1;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      long label = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        label = label * 10 + (text_[pos_] - '0');
        if (label > kMaxTaxa + 1) break;
        ++pos_;
      }
      skip_length();
      NewickNode node;
      node.label = static_cast<int>(label);
      nodes_.push_back(std::move(node));
      return static_cast<int>(nodes_.size()) - 1;
    }
    throw ParseError("expected '(' or a decimal leaf label at position " + std::to_string(pos_));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::vector<NewickNode> nodes_;
};

}  // namespace

PhylogeneticTree parse_newick(const std::string& text, bool strict) {
  auto [nodes, root] = NewickParser(text).run();

  std::vector<int> labels;
  for (const NewickNode& node : nodes)
    if (node.children.empty()) labels.push_back(node.label);
  const int n = static_cast<int>(labels.size());
  if (n < kMinTaxa) throw TaxonCountTooSmall(n);
  if (n > kMaxTaxa) throw TaxonCountTooLarge(n);
  std::sort(labels.begin(), labels.end());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && labels[i] == labels[i - 1])
      throw ParseError("duplicate leaf label " + std::to_string(labels[i]));
    if (labels[i] != i + 1)
      throw ParseError("leaf labels must be exactly 1.." + std::to_string(n));
  }

  // Leaves take ids label-1; internal nodes are numbered from n on.
  std::vector<int> id(nodes.size(), -1);
  int next_internal = n;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    id[k] = nodes[k].children.empty() ? nodes[k].label - 1 : next_internal++;

  const bool suppress_root = nodes[root].children.size() == 2;
  if (suppress_root && strict)
    throw DegreeViolation("rooted input: root has degree 2");

  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (suppress_root && static_cast<int>(k) == root) continue;
    for (int child : nodes[k].children) edges.emplace_back(id[k], id[child]);
  }
  if (suppress_root) {
    const auto& kids = nodes[root].children;
    edges.emplace_back(id[kids[0]], id[kids[1]]);
    // Close the id gap the dropped root leaves behind.
    const int dropped = id[root];
    for (auto& [a, b] : edges) {
      if (a > dropped) --a;
      if (b > dropped) --b;
    }
  }
  return {n, edges};
}

namespace {

// Returns the subtree's text and the minimum leaf label in it.
std::pair<std::string, int> newick_subtree(const PhylogeneticTree& t, int v, int parent) {
  if (t.is_leaf(v)) return {std::to_string(t.leaf_label(v)), t.leaf_label(v)};
  std::vector<std::pair<int, std::string>> children;
  for (int u : t.neighbors(v)) {
    if (u == parent) continue;
    auto [text, min_label] = newick_subtree(t, u, v);
    children.emplace_back(min_label, std::move(text));
  }
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i > 0) out += ',';
    out += children[i].second;
  }
  out += ')';
  return {std::move(out), children.front().first};
}

}  // namespace

std::string to_newick(const PhylogeneticTree& t) {
  const int root = t.neighbors(0).front();
  return newick_subtree(t, root, -1).first + ";";
}

}  // namespace m0n
