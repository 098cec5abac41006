#pragma once

// Exact counting: Fibonacci targets, rational generating function expansion,
// brute-force avoidance and sortability counts, and the sequence reports the
// verification suites print.

#include <optional>
#include <string>
#include <vector>

#include "popsort/bigint.hpp"
#include "popsort/machines.hpp"
#include "popsort/permutation.hpp"

namespace popsort {

// Thrown when an exhaustive sweep exceeds its size guard and --force was not
// given; the CLI maps it to exit code 3.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fibonacci with F(-1) = 1, F(0) = 0, F(1) = 1. Throws for n < -1.
BigInt fib(long n);

// Numerator/denominator coefficient lists, ascending powers; den[0] != 0.
struct RationalGF {
  std::vector<long long> num;
  std::vector<long long> den;
};

// First `count` Taylor coefficients by the exact linear recurrence; throws
// std::invalid_argument if a coefficient fails to divide exactly (which
// signals a transcribed-GF bug).
std::vector<BigInt> gf_expand(const RationalGF& gf, int count);

// The generating functions shipped with the artifact.
RationalGF gf_sorting_words();    // x(1-x) / (1-3x+x^2)
RationalGF gf_bub_after_psb();    // (3x-1)(x^2+2x-1)(x-1)^2 / (5x^5+6x^4-24x^3+22x^2-8x+1)
RationalGF gf_psb_after_bubble(); // (1-3x) / (1-4x+2x^2)
RationalGF gf_parallel_bypass();  // (1-x)(1-2x)(1-4x) / (1-8x+20x^2-18x^3+3x^4)

// |Av_n(basis)| by exhaustive scan; guard n <= 10 unless force.
BigInt count_av(const PatternBasis& basis, int n, bool force = false,
                int workers = 1);

// Number of p in S_n sorted by the deterministic machine (or by the DFS
// oracle in oracle mode); guard n <= 10 unless force.
BigInt count_sortable_by(const MachineConfig& config, int n,
                         bool oracle_mode = false, bool force = false,
                         int workers = 1);

struct SequenceReport {
  std::string label;
  int start_n = 1;  // size counted by computed[0]
  std::vector<BigInt> computed;
  std::vector<BigInt> reference;
  bool agree = false;
  std::optional<int> first_divergence;  // index into computed (0-based)

  std::string csv() const;   // label,n,computed,reference,match
  std::string text() const;
};

SequenceReport make_report(std::string label, std::vector<BigInt> computed,
                           std::vector<BigInt> reference, int start_n = 1);

enum class CompositionId {
  stack_after_psb,   // Stacksort(psb(.))
  queue_after_psb,
  bubble_after_psb,
  psb_after_queue,   // psb(Queuesort(.))
  psb_after_bubble,
};

std::string composition_name(CompositionId id);
CompositionId parse_composition(std::string_view name);
std::vector<MachineConfig> composition_machines(CompositionId id);

// Sweep counts of composition-sortable permutations against the reference
// the source text pins (printed prefix and/or GF expansion). Size-n counts
// sit at index n-1. Also checks that counting inverses gives the same
// numbers (the shipped GFs enumerate the inverse classes). Guard max_n <= 8
// unless force.
SequenceReport composition_counts(CompositionId id, int max_n,
                                  bool force = false, int workers = 1);

// Counts of simple permutations sortable by two parallel pop stacks with
// bypass (via basis avoidance) against the conjectured closed form
// a_0 = a_1 = 1, a_2 = 2, F(2n-5) - 1 for odd n >= 3, F(2n-5) for even
// n > 3. Report-only. Guard max_n <= 9 unless force.
SequenceReport conjecture_simple_psbp(int max_n, bool force = false,
                                      int workers = 1);

}  // namespace popsort
