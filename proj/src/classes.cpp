#include "popsort/classes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "popsort/enumeration.hpp"
#include "popsort/sweep.hpp"

namespace popsort {

namespace {

Pattern flatten_vec(std::vector<int> v) { return flatten(v); }

}  // namespace

PatternBasis basis_preimage_max_first(const Pattern& rho) {
  const int n = rho.size();
  if (n < 2 || rho(1) != n)
    throw std::invalid_argument(
        "basis_preimage_max_first: rho must begin with its maximum, |rho| >= 2");
  std::vector<int> alpha(rho.entries().begin() + 1, rho.entries().end());

  PatternBasis b;
  {
    std::vector<int> first{n, n + 1};
    first.insert(first.end(), alpha.begin(), alpha.end());
    b.classical.push_back(flatten_vec(std::move(first)));
  }
  std::vector<int> np1{n + 1};
  std::vector<int> skip{n + 1};
  skip.insert(skip.end(), alpha.begin(), alpha.end());
  for (const auto& tau : shuffles(np1, alpha)) {
    if (tau == skip) continue;
    std::vector<int> pat{n + 2, n};
    pat.insert(pat.end(), tau.begin(), tau.end());
    b.classical.push_back(flatten_vec(std::move(pat)));
  }
  std::sort(b.classical.begin(), b.classical.end());
  return b;
}

PatternBasis basis_preimage_secondmax_first(const Pattern& rho) {
  const int n = rho.size();
  if (n < 3 || rho(1) != n - 1 || rho(n) != n)
    throw std::invalid_argument(
        "basis_preimage_secondmax_first: rho must be (n-1) alpha n, |rho| >= 3");
  std::vector<int> alpha(rho.entries().begin() + 1, rho.entries().end() - 1);

  PatternBasis b;
  {
    std::vector<int> first{n - 1, n};
    first.insert(first.end(), alpha.begin(), alpha.end());
    b.classical.push_back(flatten_vec(std::move(first)));
  }
  std::vector<int> nn{n};
  std::vector<int> skip{n};
  skip.insert(skip.end(), alpha.begin(), alpha.end());
  for (const auto& tau : shuffles(nn, alpha)) {
    if (tau == skip) continue;
    std::vector<int> pat{n + 1, n - 1};
    pat.insert(pat.end(), tau.begin(), tau.end());
    b.classical.push_back(flatten_vec(std::move(pat)));
  }
  std::sort(b.classical.begin(), b.classical.end());
  return b;
}

BasisVerdict nonclass_witness(const Pattern& rho) {
  const int n = rho.size();
  if (n < 2)
    throw std::invalid_argument("nonclass_witness: rho too short");
  if (rho(1) == n)
    throw std::invalid_argument(
        "nonclass_witness: rho begins with its maximum; use basis_preimage_max_first");

  std::vector<int> sigma_v, pi_v;
  if (rho == Pattern(std::vector<int>{1, 2, 3})) {
    sigma_v = {3, 2, 1};
    pi_v = {3, 4, 2, 1};
  } else {
    int max_pos = 0;
    for (int i = 1; i <= n; ++i)
      if (rho(i) == n) max_pos = i;
    if (max_pos < n) {
      // rho = alpha n beta with alpha, beta nonempty
      std::vector<int> alpha(rho.entries().begin(), rho.entries().begin() + max_pos - 1);
      std::vector<int> beta(rho.entries().begin() + max_pos, rho.entries().end());
      sigma_v.push_back(n + 1);
      sigma_v.insert(sigma_v.end(), alpha.begin(), alpha.end());
      sigma_v.push_back(n + 2);
      sigma_v.insert(sigma_v.end(), beta.begin(), beta.end());
      sigma_v.push_back(n);
      pi_v.push_back(n + 1);
      pi_v.push_back(n + 3);
      pi_v.insert(pi_v.end(), alpha.begin(), alpha.end());
      pi_v.push_back(n + 2);
      pi_v.insert(pi_v.end(), beta.begin(), beta.end());
      pi_v.push_back(n);
    } else {
      // rho ends with its maximum
      if (rho(1) == n - 1)
        throw std::invalid_argument(
            "nonclass_witness: rho = (n-1) alpha n is a class shape; use "
            "basis_preimage_secondmax_first");
      int m1_pos = 0;
      for (int i = 1; i <= n; ++i)
        if (rho(i) == n - 1) m1_pos = i;
      if (m1_pos == n - 1) {
        // rho = alpha (n-1) n, n >= 4 (123 handled above)
        if (n < 4)
          throw std::invalid_argument("nonclass_witness: no template for rho = " + rho.str());
        std::vector<int> alpha(rho.entries().begin(), rho.entries().end() - 2);
        sigma_v = {n - 1, n + 1, n};
        sigma_v.insert(sigma_v.end(), alpha.begin(), alpha.end());
        pi_v = {n - 1, n + 1, n + 2, n};
        pi_v.insert(pi_v.end(), alpha.begin(), alpha.end());
      } else {
        // rho = alpha (n-1) beta n with alpha, beta nonempty
        std::vector<int> alpha(rho.entries().begin(), rho.entries().begin() + m1_pos - 1);
        std::vector<int> beta(rho.entries().begin() + m1_pos, rho.entries().end() - 1);
        sigma_v.push_back(n);
        sigma_v.insert(sigma_v.end(), alpha.begin(), alpha.end());
        sigma_v.push_back(n + 1);
        sigma_v.insert(sigma_v.end(), beta.begin(), beta.end());
        sigma_v.push_back(n - 1);
        pi_v.push_back(n);
        pi_v.push_back(n + 2);
        pi_v.insert(pi_v.end(), alpha.begin(), alpha.end());
        pi_v.push_back(n + 1);
        pi_v.insert(pi_v.end(), beta.begin(), beta.end());
        pi_v.push_back(n - 1);
      }
    }
  }

  BasisVerdict v;
  v.is_class = false;
  Permutation sigma = flatten(sigma_v);
  Permutation pi = flatten(pi_v);
  if (!contains(pi, sigma) || !contains(psb(sigma).output, rho) ||
      contains(psb(pi).output, rho))
    throw std::logic_error("nonclass_witness: template failed to verify for rho = " +
                           rho.str());
  v.witness = {std::move(sigma), std::move(pi)};
  return v;
}

BasisVerdict preimage_class_verdict(const Pattern& rho) {
  const int n = rho.size();
  BasisVerdict v;
  if (n >= 2 && rho(1) == n) {
    v.is_class = true;
    v.basis = basis_preimage_max_first(rho);
    return v;
  }
  if (n >= 3 && rho(1) == n - 1 && rho(n) == n) {
    v.is_class = true;
    v.basis = basis_preimage_secondmax_first(rho);
    return v;
  }
  return nonclass_witness(rho);
}

namespace {

PatternBasis classical_basis(std::initializer_list<const char*> pats) {
  PatternBasis b;
  for (const char* s : pats) b.classical.push_back(parse_permutation(s));
  return b;
}

}  // namespace

PatternBasis composition_basis(CompositionBasisId id) {
  switch (id) {
    case CompositionBasisId::stack_after_psb: {
      PatternBasis b = classical_basis({"2341", "25314", "52314", "45231", "42531"});
      b.barred.push_back(parse_barred_pattern("3!5241"));
      std::sort(b.classical.begin(), b.classical.end());
      return b;
    }
    case CompositionBasisId::queue_after_psb:
      return classical_basis({"3421", "53241", "53214"});
    case CompositionBasisId::bubble_after_psb:
      return classical_basis({"2341", "3421", "3241", "25314", "52314", "53214"});
    case CompositionBasisId::psb_after_queue:
      return classical_basis({"4231", "2431", "54213"});
    case CompositionBasisId::psb_after_bubble:
      return classical_basis({"2341", "2431", "3241", "4231", "45213", "54213"});
  }
  throw std::invalid_argument("bad composition basis id");
}

PatternBasis psbp_basis() {
  return classical_basis(
      {"2341", "25314", "42513", "42531", "45213", "45231", "52314", "642135", "642153"});
}

PatternBasis parallel_nobypass_basis() {
  return classical_basis(
      {"2341", "3412", "25314", "42531", "52314", "53124", "53142"});
}

std::vector<Pattern> discover_basis(const MachineConfig& config, int max_len,
                                    bool force) {
  if (max_len > 8 && !force)
    throw GuardError("discover_basis: max_len = " + std::to_string(max_len) +
                     " exceeds guard 8 (use force to override)");
  // sortability of every pattern of size <= max_len, memoized
  std::map<Permutation, bool> sortable;
  auto is_sortable = [&](const Permutation& p) {
    auto it = sortable.find(p);
    if (it != sortable.end()) return it->second;
    bool s = dfs_sortable(p, config);
    sortable.emplace(p, s);
    return s;
  };

  std::vector<Pattern> basis;
  for (int n = 1; n <= max_len; ++n) {
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (is_sortable(p)) return;
      // minimal iff every proper pattern is sortable; since sortable(q)
      // fails upward only through some one-entry deletion chain, checking
      // all single deletions recursively via the memo is exact
      for (int drop = 0; drop < n; ++drop) {
        std::vector<int> sub;
        sub.reserve(static_cast<size_t>(n - 1));
        for (int i = 0; i < n; ++i)
          if (i != drop) sub.push_back(v[static_cast<size_t>(i)]);
        if (!is_sortable(flatten(sub))) return;  // a smaller unsortable pattern exists
      }
      // all one-entry deletions are sortable; deeper patterns are patterns
      // of those deletions, hence sortable as well once the one-deletion
      // closure holds at every level below (established inductively by the
      // sweep running in increasing size order)
      basis.push_back(p);
    });
  }
  return basis;
}

std::vector<Permutation> sortable_decomposition(const Permutation& p) {
  if (!psb(p).sorted)
    throw std::invalid_argument("sortable_decomposition: input is not sortable");
  std::vector<Permutation> out;
  int start = 0;
  int seen_max = 0;
  for (int i = 1; i <= p.size(); ++i) {
    seen_max = std::max(seen_max, p(i));
    if (seen_max == i) {
      std::vector<int> block(p.entries().begin() + start, p.entries().begin() + i);
      Permutation summand = flatten(block);
      if (summand(1) != summand.size())
        throw std::logic_error("sortable_decomposition: summand not max-first");
      out.push_back(std::move(summand));
      start = i;
    }
  }
  return out;
}

}  // namespace popsort
