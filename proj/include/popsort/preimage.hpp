#pragma once

// Inverse images of the pop-stack-with-bypass map: the structural preimage
// algorithm, the exhaustive oracle, and the characterizations and counting
// formulas for permutations with zero, one, or two preimages.

#include <span>
#include <vector>

#include "popsort/bigint.hpp"
#include "popsort/permutation.hpp"

namespace popsort {

// All sequences mapping to s under the pop-stack-with-bypass sorter, for any
// sequence of distinct integers (original values; prefixes arising in the
// recursion are not permutations). Candidates come from the structural
// insertion rules and every candidate is validated by running the sorter, so
// the result is sound unconditionally; completeness is checked exhaustively
// against brute_preimages in the test suites. Results sorted, deduplicated.
std::vector<std::vector<int>> preimages_seq(std::span<const int> s);

std::vector<Permutation> preimages(const Permutation& s);

// {p in S_n : psb(p) = s} by exhaustive sweep; guard |s| <= 9 unless force.
std::vector<Permutation> brute_preimages(const Permutation& s, bool force = false);

// Structural membership tests for the zero/one/two-preimage sets, exactly as
// characterized: C0 = does not end with its maximum; C1 = ends with n, LTR
// maxima form a value interval {n-k..n} and are pairwise nonadjacent; C2 =
// ends with n, LTR maxima are {p_1} followed by the interval {n-k..n} with
// p_1 nonconsecutive with n-k and the interval part pairwise nonadjacent.
// Beware: the C2 test (and c2 below) reproduce the source characterization
// verbatim; the exhaustive suites show it undercounts the true
// two-preimage set from n = 4 on (first witness 2314).
bool in_C0(const Permutation& s);
bool in_C1(const Permutation& s);
bool in_C2(const Permutation& s);

// Closed-form counts: c0 = (n-1)(n-1)!,
// c1 = sum_{k=2}^{ceil(n/2)} (n-k)! C(n-k-1, k-2)   (n >= 3),
// c2 = sum_{k=3}^{n} sum_{j=1}^{n-k} C(n-k,j)(j-1)!(n-j-k+1)! C(n-j-k, k-3)
// (n >= 4); smaller n fall back to direct counts over S_n.
BigInt c0(int n);
BigInt c1(int n);
BigInt c2(int n);

// CSV rows "n,c0,c1,c2,brute_c0,brute_c1,brute_c2" for n = 1..max_n, with
// header; the brute columns come from the exhaustive preimage histogram.
// Guard max_n <= 9 unless force.
std::string preimage_count_csv(int max_n, bool force = false);

}  // namespace popsort
