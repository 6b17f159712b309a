#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "m0n/errors.hpp"

namespace m0n {

// Taxa carry the labels 1..n; label k maps to bit k-1 of a 64-bit mask.
inline constexpr int kMinTaxa = 3;
inline constexpr int kMaxTaxa = 64;

/// Throws TaxonCountTooSmall / TaxonCountTooLarge unless kMinTaxa <= n <= kMaxTaxa.
void check_taxon_count(int n);

/// Mask with the low n bits set (the whole taxon set).
std::uint64_t full_mask(int n);

/// A bipartition I | J of {1..n}.
///
/// Stored canonically: the retained side (the "block") is the one that does
/// not contain the largest label n, so complementary descriptions collapse to
/// the same value and equality is a plain bitmask comparison.
class Split {
 public:
  /// Either side of the bipartition may be passed; the constructor
  /// canonicalizes.  Throws EmptyOrFullSubset if `side` is empty or the
  /// whole taxon set.
  Split(int taxon_count, std::uint64_t side);

  int taxon_count() const { return n_; }
  std::uint64_t block() const { return block_; }
  std::uint64_t complement() const { return full_mask(n_) ^ block_; }
  int block_size() const;

  /// Both sides have at least two taxa.  Exactly the splits that index
  /// boundary divisors.
  bool is_stable() const;

  /// Is `label` on the canonical side?
  bool contains(int label) const;

  friend auto operator<=>(const Split&, const Split&) = default;

 private:
  int n_;
  std::uint64_t block_;
};

/// Canonical split with the given labels on one side.  make_split(n, S) and
/// make_split(n, complement of S) construct the same value.
Split make_split(int n, const std::vector<int>& labels);

/// Buneman compatibility: with sides I|J and K|L, at least one of the four
/// intersections I∩K, I∩L, J∩K, J∩L is empty.  Symmetric; every split is
/// compatible with itself.
bool compatible(const Split& s1, const Split& s2);

/// Divisor-intersection criterion for stable splits: at least one of the
/// containments I ⊆ K, I ⊆ L, K ⊆ I, L ⊆ I holds.  Requires both splits
/// stable; agreeing with compatible() on stable pairs is a theorem that the
/// test suite checks exhaustively, not an assumption made here.
bool keel_intersects(const Split& s1, const Split& s2);

/// Every canonical stable split on {1..n}, ascending by block bitmask.
/// Empty for n = 3; 2^(n-1) - n - 1 entries for n >= 4.
std::vector<Split> enumerate_stable_splits(int n);

/// A duplicate-free set of splits on a shared taxon set, kept in ascending
/// block order.
class SplitSystem {
 public:
  explicit SplitSystem(int taxon_count);
  SplitSystem(int taxon_count, const std::vector<Split>& splits);

  int taxon_count() const { return n_; }
  std::size_t size() const { return splits_.size(); }
  bool empty() const { return splits_.empty(); }

  /// Returns false if the split was already present.
  bool insert(const Split& s);
  bool contains(const Split& s) const;

  const std::vector<Split>& splits() const { return splits_; }
  auto begin() const { return splits_.begin(); }
  auto end() const { return splits_.end(); }

  friend bool operator==(const SplitSystem&, const SplitSystem&) = default;

 private:
  int n_;
  std::vector<Split> splits_;  // sorted, unique
};

/// True iff every unordered pair of members is compatible (vacuously true
/// for empty and singleton systems).
bool is_pairwise_compatible(const SplitSystem& sys);

/// First incompatible pair in enumeration order, if any.
std::optional<std::pair<Split, Split>> first_incompatible_pair(const SplitSystem& sys);

struct IncompatibleSystem : Error {
  IncompatibleSystem(const Split& a, const Split& b);
  Split first;
  Split second;
};

/// Text form "a,b,...|c,d,...": two ascending comma-separated sides that
/// partition {1..n}.  The formatter puts the canonical block first;
/// parse_split accepts either side order.
Split parse_split(const std::string& text, int n);
std::string format_split(const Split& s);

}  // namespace m0n
