#pragma once

// Sorting words over {0,1,2}, the restricted Motzkin paths they map to, and
// the conversions between permutations, words, and paths. Words are plain
// strings over "012", paths plain strings over "UDH".

#include <string>
#include <string_view>
#include <vector>

#include "popsort/bigint.hpp"
#include "popsort/permutation.hpp"

namespace popsort {

// Letter per input entry: 0 = push, 1 = bypass, 2 = pop-then-push. Total on
// every permutation; only sortable inputs are claimed to land in W.
std::string perm_to_word(const Permutation& p);

// W: begins with 0, ends with 0 or 2, no adjacent factor "12". The empty
// word is in W (size-0 case).
bool word_in_W(std::string_view w);

// The unique sortable permutation with sorting word w, via the factorization
// at every '2' and the two-phase numbering (bypass letters first
// left-to-right, then the rest right-to-left). Throws std::invalid_argument
// when w is not in W.
Permutation word_to_perm(std::string_view w);

std::string perm_to_path(const Permutation& p);

// Letter translation, total on any ternary word: 0 -> U, 1 -> H,
// 2 -> descend to the axis then U; completion descends to the axis.
std::string word_to_path(std::string_view w);

// M: starts with U, ends with D, no H adjacent to a D, every maximal D-run
// returns to the x-axis. The empty path is in M.
bool path_in_M(std::string_view m);

// Inverse of word_to_path on M; throws std::invalid_argument off M.
std::string path_to_word(std::string_view m);

// |W_n| and |M_n| (paths counted by total U+H steps). Explicit enumeration
// up to n = 14, the Fibonacci recurrence beyond.
BigInt count_W(int n);
BigInt count_M(int n);

// Independent routes, exposed for cross-checks.
BigInt count_W_enum(int n);   // backtracking enumeration, n <= 14
BigInt count_M_enum(int n);   // backtracking enumeration, n <= 14
BigInt count_WM_recurrence(int n);  // M_n = 2 M_{n-1} + sum_{i=1}^{n-2} M_i

// All words of W_n in lexicographic order (test and CLI helper; n <= 14).
std::vector<std::string> enumerate_W(int n);

// CSV rows "n,count_W,count_M,F(2n-1)" for n = 0..max_n, with header.
std::string word_count_csv(int max_n);

}  // namespace popsort
