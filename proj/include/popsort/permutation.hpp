#pragma once

// Permutations in one-line notation, pattern containment (classical and
// barred), and the structural decompositions used by the sorting machinery.

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace popsort {

// A bijection on {1..n} in one-line notation. The empty permutation (n = 0)
// is a valid value everywhere.
class Permutation {
 public:
  Permutation() = default;

  // Validates that `entries` is a bijection on {1..n}; throws
  // std::invalid_argument otherwise.
  explicit Permutation(std::vector<int> entries);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  // 1-based access; one-line notation is 1-indexed throughout.
  int operator()(int i) const { return entries_[static_cast<size_t>(i - 1)]; }

  const std::vector<int>& entries() const { return entries_; }
  std::vector<int>::const_iterator begin() const { return entries_.begin(); }
  std::vector<int>::const_iterator end() const { return entries_.end(); }

  bool is_identity() const;

  // Canonical text form: space-separated values.
  std::string str() const;
  // Compact digit string (requires n <= 9).
  std::string compact() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<int> entries_;
};

// Accepts whitespace/comma-separated positive integers, or a contiguous
// digit string when n <= 9. Throws std::invalid_argument naming the
// offending token on duplicates, gaps, or malformed input.
Permutation parse_permutation(std::string_view text);

// Rescales a sequence of distinct integers to a permutation of {1..n}.
Permutation flatten(std::span<const int> seq);

// A classical pattern is just a (usually short) permutation.
using Pattern = Permutation;

// A pattern with a set of barred positions (1-based). Avoidance means every
// occurrence of the unbarred part extends to an occurrence of the whole
// pattern.
struct BarredPattern {
  Pattern pattern;
  std::set<int> barred;

  BarredPattern() = default;
  BarredPattern(Pattern p, std::set<int> b);

  // The unbarred entries, flattened to an honest pattern.
  Pattern unbarred_part() const;

  // Compact form with '!' marking the barred entry it precedes: "3!5241" is
  // 35241 with the 5 barred.
  std::string str() const;

  friend bool operator==(const BarredPattern&, const BarredPattern&) = default;
  friend auto operator<=>(const BarredPattern&, const BarredPattern&) = default;
};

// Parses "3!5241" or "3 !5 2 4 1"; a pattern without '!' parses as purely
// classical (empty barred set).
BarredPattern parse_barred_pattern(std::string_view text);

struct PatternBasis {
  std::vector<Pattern> classical;
  std::vector<BarredPattern> barred;

  friend bool operator==(const PatternBasis&, const PatternBasis&) = default;
};

// True iff some subsequence of p is order-isomorphic to q. Backtracking over
// positions with value-window pruning; exponential worst case is fine at
// desk scale.
bool contains(const Permutation& p, const Pattern& q);

// True iff some occurrence of the unbarred entries of q in p cannot be
// extended to an occurrence of all entries of q.
bool contains_barred(const Permutation& p, const BarredPattern& q);

bool avoids(const Permutation& p, const PatternBasis& basis);
bool avoids(const Permutation& p, std::span<const Pattern> patterns);

// Left-to-right maxima as (1-based position, value) pairs, in order.
std::vector<std::pair<int, int>> ltr_maxima(const Permutation& p);
std::vector<std::pair<int, int>> ltr_maxima_seq(std::span<const int> seq);

Permutation direct_sum(const Permutation& a, const Permutation& b);
Permutation reverse(const Permutation& p);
Permutation inverse(const Permutation& p);

// All interleavings of a and b preserving each sequence's internal order.
// The value sets must be disjoint; throws std::invalid_argument otherwise.
std::vector<std::vector<int>> shuffles(std::span<const int> a,
                                       std::span<const int> b);

// True iff p maps no contiguous position interval of length strictly
// between 1 and n onto a contiguous value interval. Sizes 0, 1, 2 are
// simple by convention.
bool is_simple(const Permutation& p);

// One run per left-to-right maximum m_i: the longest decreasing chain of
// consecutive values m_i, m_i-1, ..., m_i-j_i located before the next
// maximum, plus the interleaved leftovers P_i.
struct Run {
  int maximum = 0;                // m_i
  int run_length = 0;             // j_i + 1
  std::vector<int> bypassers;     // P_i, in input order
  std::vector<int> block;         // A_i, everything after m_i up to m_{i+1}
};

struct RunDecomposition {
  std::vector<Run> runs;
};

RunDecomposition run_decomposition(const Permutation& p);

// Factorization into contiguous blocks: maximal runs of value-consecutive
// left-to-right maxima mu_i alternating with leftover blocks B_i. gaps[i]
// follows maxima_runs[i]; a trailing gap is nonempty only when p does not
// end with a left-to-right maximum run.
struct MaxSuffixDecomposition {
  std::vector<std::vector<int>> maxima_runs;
  std::vector<std::vector<int>> gaps;
};

MaxSuffixDecomposition max_suffix_decomposition(const Permutation& p);

// Start index (0-based) of the maximal suffix m, m+1, ..., max at the end of
// seq; returns seq.size() for an empty sequence.
size_t max_suffix_start(std::span<const int> seq);

}  // namespace popsort
