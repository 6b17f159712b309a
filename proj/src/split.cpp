#include "m0n/split.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace m0n {

void check_taxon_count(int n) {
  if (n < kMinTaxa) throw TaxonCountTooSmall(n);
  if (n > kMaxTaxa) throw TaxonCountTooLarge(n);
}

std::uint64_t full_mask(int n) {
  if (n == 64) return ~std::uint64_t{0};
  return (std::uint64_t{1} << n) - 1;
}

Split::Split(int taxon_count, std::uint64_t side) : n_(taxon_count) {
  check_taxon_count(n_);
  const std::uint64_t all = full_mask(n_);
  side &= all;
  if (side == 0 || side == all) throw EmptyOrFullSubset();
  // Canonical block is the side without label n (bit n-1).
  const std::uint64_t top = std::uint64_t{1} << (n_ - 1);
  block_ = (side & top) ? (all ^ side) : side;
}

int Split::block_size() const { return std::popcount(block_); }

bool Split::is_stable() const {
  const int b = block_size();
  return b >= 2 && b <= n_ - 2;
}

bool Split::contains(int label) const {
  if (label < 1 || label > n_) throw LabelOutOfRange(label, n_);
  return (block_ >> (label - 1)) & 1;
}

Split make_split(int n, const std::vector<int>& labels) {
  check_taxon_count(n);
  std::uint64_t side = 0;
  for (int label : labels) {
    if (label < 1 || label > n) throw LabelOutOfRange(label, n);
    side |= std::uint64_t{1} << (label - 1);
  }
  return Split(n, side);
}

namespace {

void check_same_taxa(const Split& a, const Split& b) {
  if (a.taxon_count() != b.taxon_count())
    throw TaxonCountMismatch(a.taxon_count(), b.taxon_count());
}

}  // namespace

bool compatible(const Split& s1, const Split& s2) {
  check_same_taxa(s1, s2);
  const std::uint64_t i = s1.block(), j = s1.complement();
  const std::uint64_t k = s2.block(), l = s2.complement();
  return (i & k) == 0 || (i & l) == 0 || (j & k) == 0 || (j & l) == 0;
}

bool keel_intersects(const Split& s1, const Split& s2) {
  check_same_taxa(s1, s2);
  if (!s1.is_stable() || !s2.is_stable()) throw NotStable();
  const std::uint64_t i = s1.block();
  const std::uint64_t k = s2.block(), l = s2.complement();
  const auto subset = [](std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; };
  return subset(i, k) || subset(i, l) || subset(k, i) || subset(l, i);
}

std::vector<Split> enumerate_stable_splits(int n) {
  check_taxon_count(n);
  std::vector<Split> result;
  // Canonical blocks are exactly the subsets of {1..n-1}, so walking masks in
  // ascending order yields the required deterministic ordering.
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const int size = std::popcount(mask);
    if (size >= 2 && size <= n - 2) result.emplace_back(n, mask);
  }
  return result;
}

SplitSystem::SplitSystem(int taxon_count) : n_(taxon_count) { check_taxon_count(n_); }

SplitSystem::SplitSystem(int taxon_count, const std::vector<Split>& splits)
    : SplitSystem(taxon_count) {
  for (const Split& s : splits) insert(s);
}

bool SplitSystem::insert(const Split& s) {
  if (s.taxon_count() != n_) throw TaxonCountMismatch(s.taxon_count(), n_);
  auto it = std::lower_bound(splits_.begin(), splits_.end(), s);
  if (it != splits_.end() && *it == s) return false;
  splits_.insert(it, s);
  return true;
}

bool SplitSystem::contains(const Split& s) const {
  return std::binary_search(splits_.begin(), splits_.end(), s);
}

bool is_pairwise_compatible(const SplitSystem& sys) {
  return !first_incompatible_pair(sys).has_value();
}

std::optional<std::pair<Split, Split>> first_incompatible_pair(const SplitSystem& sys) {
  const auto& splits = sys.splits();
  for (std::size_t i = 0; i + 1 < splits.size(); ++i)
    for (std::size_t j = i + 1; j < splits.size(); ++j)
      if (!compatible(splits[i], splits[j])) return std::make_pair(splits[i], splits[j]);
  return std::nullopt;
}

IncompatibleSystem::IncompatibleSystem(const Split& a, const Split& b)
    : Error("incompatible splits: " + format_split(a) + " and " + format_split(b)),
      first(a),
      second(b) {}

namespace {

// Parses one side of the split grammar: an ascending comma-separated label
// list.  Returns the label mask.
std::uint64_t parse_side(const std::string& text, int n) {
  std::uint64_t mask = 0;
  int previous = 0;
  std::size_t pos = 0;
  while (true) {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected a label in split text: \"" + text + "\"");
    long label = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      label = label * 10 + (text[pos] - '0');
      if (label > kMaxTaxa) break;
      ++pos;
    }
    if (label < 1 || label > n)
      throw ParseError("label " + std::to_string(label) + " outside 1.." + std::to_string(n) +
                       " in split text: \"" + text + "\"");
    if (label == previous) throw ParseError("duplicate label in split text: \"" + text + "\"");
    if (label < previous) throw ParseError("labels must ascend in split text: \"" + text + "\"");
    previous = static_cast<int>(label);
    mask |= std::uint64_t{1} << (label - 1);
    if (pos == text.size()) return mask;
    if (text[pos] != ',') throw ParseError("unexpected character in split text: \"" + text + "\"");
    ++pos;
  }
}

}  // namespace

Split parse_split(const std::string& text, int n) {
  check_taxon_count(n);
  const auto bar = text.find('|');
  if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos)
    throw ParseError("split text needs exactly one '|': \"" + text + "\"");
  const std::uint64_t left = parse_side(text.substr(0, bar), n);
  const std::uint64_t right = parse_side(text.substr(bar + 1), n);
  if (left & right) throw ParseError("sides overlap in split text: \"" + text + "\"");
  if ((left | right) != full_mask(n))
    throw ParseError("sides do not partition 1.." + std::to_string(n) + ": \"" + text + "\"");
  return Split(n, left);
}

namespace {

std::string format_side(std::uint64_t mask) {
  std::string out;
  for (int bit = 0; bit < kMaxTaxa; ++bit) {
    if ((mask >> bit) & 1) {
      if (!out.empty()) out += ',';
      out += std::to_string(bit + 1);
    }
  }
  return out;
}

}  // namespace

std::string format_split(const Split& s) {
  return format_side(s.block()) + '|' + format_side(s.complement());
}

}  // namespace m0n
