#pragma once

#include <stdexcept>
#include <string>

namespace m0n {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TaxonCountTooSmall : Error {
  explicit TaxonCountTooSmall(int n)
      : Error("taxon count must be at least 3, got " + std::to_string(n)) {}
  TaxonCountTooSmall(int n, int minimum)
      : Error("taxon count must be at least " + std::to_string(minimum) +
              ", got " + std::to_string(n)) {}
};

struct TaxonCountTooLarge : Error {
  explicit TaxonCountTooLarge(int n)
      : Error("taxon count exceeds the 64-bit mask ceiling, got " + std::to_string(n)) {}
};

struct TaxonCountMismatch : Error {
  TaxonCountMismatch(int a, int b)
      : Error("taxon counts differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct EmptyOrFullSubset : Error {
  EmptyOrFullSubset()
      : Error("subset must be nonempty and proper to describe a bipartition") {}
};

struct LabelOutOfRange : Error {
  LabelOutOfRange(int label, int n)
      : Error("label " + std::to_string(label) + " outside 1.." + std::to_string(n)) {}
};

struct NotStable : Error {
  NotStable() : Error("split has a side with fewer than two taxa") {}
};

struct ParseError : Error {
  using Error::Error;
};

// Raised by pop_split when no vertex admits the requested refinement.
struct IncompatibleSplit : Error {
  using Error::Error;
};

struct DegreeViolation : Error {
  using Error::Error;
};

// Tree construction input does not describe a valid phylogenetic tree.
struct InvalidTree : Error {
  using Error::Error;
};

struct EnumerationTooLarge : Error {
  EnumerationTooLarge(int n, int ceiling)
      : Error("n = " + std::to_string(n) + " exceeds the enumeration ceiling " +
              std::to_string(ceiling)) {}
};

}  // namespace m0n
