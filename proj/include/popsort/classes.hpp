#pragma once

// Bases for preimages of principal classes, the non-class witness templates,
// the composition and parallel-machine bases, empirical basis discovery, and
// the direct-sum decomposition of sortable permutations.

#include <optional>
#include <utility>
#include <vector>

#include "popsort/machines.hpp"
#include "popsort/permutation.hpp"

namespace popsort {

// For rho = n alpha: B = {n(n+1)alpha} u {(n+2)n tau : tau in (n+1) shuffle
// alpha, tau != (n+1)alpha}, flattened. Throws unless rho begins with its
// maximum and |rho| >= 2.
PatternBasis basis_preimage_max_first(const Pattern& rho);

// For rho = (n-1) alpha n: B = {(n-1)n alpha} u {(n+1)(n-1) tau : tau in
// n shuffle alpha, tau != n alpha}, flattened. Throws unless rho starts with
// its second maximum, ends with its maximum, and |rho| >= 3.
PatternBasis basis_preimage_secondmax_first(const Pattern& rho);

struct BasisVerdict {
  bool is_class = false;
  PatternBasis basis;  // when is_class
  // when not a class: (sigma, pi) with sigma <= pi, rho <= psb(sigma),
  // rho not<= psb(pi)
  std::optional<std::pair<Permutation, Permutation>> witness;
};

// Instantiates the witness template for rho of one of the non-class shapes
// (alpha n beta; alpha (n-1) beta n; alpha (n-1) n with n >= 4; rho = 123)
// and verifies it by running the sorter. Throws std::invalid_argument for
// class-shaped rho, directing the caller to the basis operations.
BasisVerdict nonclass_witness(const Pattern& rho);

// Dispatches on the shape of rho: basis for the two class shapes, witness
// otherwise.
BasisVerdict preimage_class_verdict(const Pattern& rho);

enum class CompositionBasisId {
  stack_after_psb,
  queue_after_psb,
  bubble_after_psb,
  psb_after_queue,
  psb_after_bubble,
};

// The literal bases of the composition propositions. stack-psb carries the
// barred pattern 3!5241; the exhaustive suites show that basis is strictly
// smaller than the true sortable set (first witness 53241), and the checks
// report it as such.
PatternBasis composition_basis(CompositionBasisId id);

PatternBasis psbp_basis();               // 9 patterns, two of length 6
PatternBasis parallel_nobypass_basis();  // the corrected 7-pattern basis

// Minimal unsortable patterns for the device: p with |p| <= max_len such
// that the DFS oracle rejects p and accepts every proper pattern of p.
// Guard max_len <= 8 unless force.
std::vector<Pattern> discover_basis(const MachineConfig& config, int max_len,
                                    bool force = false);

// The unique direct-sum decomposition of a sortable permutation into
// summands beginning with their maximum (each avoiding 231 and 213),
// rescaled. Throws std::invalid_argument on unsortable input.
std::vector<Permutation> sortable_decomposition(const Permutation& p);

}  // namespace popsort
