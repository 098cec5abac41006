#include "popsort/enumeration.hpp"

#include <sstream>
#include <stdexcept>

#include "popsort/classes.hpp"
#include "popsort/sweep.hpp"

namespace popsort {

BigInt fib(long n) {
  if (n < -1) throw std::invalid_argument("fib: need n >= -1");
  if (n == -1) return 1;
  BigInt a = 0, b = 1;  // F(0), F(1)
  for (long i = 0; i < n; ++i) {
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return a;
}

std::vector<BigInt> gf_expand(const RationalGF& gf, int count) {
  if (gf.den.empty() || gf.den[0] == 0)
    throw std::invalid_argument("gf_expand: denominator constant term must be nonzero");
  std::vector<BigInt> a;
  a.reserve(static_cast<size_t>(count));
  const BigInt q0 = gf.den[0];
  for (int n = 0; n < count; ++n) {
    BigInt num = n < static_cast<int>(gf.num.size()) ? BigInt(gf.num[static_cast<size_t>(n)]) : BigInt(0);
    for (int i = 1; i < static_cast<int>(gf.den.size()) && i <= n; ++i)
      num -= BigInt(gf.den[static_cast<size_t>(i)]) * a[static_cast<size_t>(n - i)];
    if (num % q0 != 0)
      throw std::invalid_argument("gf_expand: non-integer coefficient at index " +
                                  std::to_string(n));
    a.push_back(num / q0);
  }
  return a;
}

RationalGF gf_sorting_words() { return {{0, 1, -1}, {1, -3, 1}}; }

RationalGF gf_bub_after_psb() {
  // (3x-1)(x^2+2x-1)(x-1)^2 expanded
  return {{1, -7, 16, -12, -1, 3}, {1, -8, 22, -24, 6, 5}};
}

RationalGF gf_psb_after_bubble() { return {{1, -3}, {1, -4, 2}}; }

RationalGF gf_parallel_bypass() {
  // (1-x)(1-2x)(1-4x) expanded
  return {{1, -7, 14, -8}, {1, -8, 20, -18, 3}};
}

namespace {

void check_guard(int n, int limit, bool force, const char* what) {
  if (n > limit && !force)
    throw GuardError(std::string(what) + ": n = " + std::to_string(n) +
                     " exceeds guard " + std::to_string(limit) +
                     " (use force to override)");
}

}  // namespace

BigInt count_av(const PatternBasis& basis, int n, bool force, int workers) {
  check_guard(n, 10, force, "count_av");
  uint64_t c = count_perms(n, workers, [&](const std::vector<int>& v) {
    return avoids(Permutation(v), basis);
  });
  return c;
}

BigInt count_sortable_by(const MachineConfig& config, int n, bool oracle_mode,
                         bool force, int workers) {
  check_guard(n, 10, force, "count_sortable_by");
  uint64_t c = count_perms(n, workers, [&](const std::vector<int>& v) {
    Permutation p(v);
    return oracle_mode ? dfs_sortable(p, config) : run_machine(config, p).sorted;
  });
  return c;
}

std::string SequenceReport::csv() const {
  std::ostringstream os;
  os << "label,n,computed,reference,match\n";
  for (size_t i = 0; i < computed.size(); ++i) {
    os << label << ',' << start_n + static_cast<int>(i) << ',' << computed[i] << ',';
    if (i < reference.size())
      os << reference[i] << ',' << (computed[i] == reference[i] ? "yes" : "NO");
    else
      os << ",";
    os << '\n';
  }
  return os.str();
}

std::string SequenceReport::text() const {
  std::ostringstream os;
  os << label << " (n = " << start_n << "..):\n  computed:  ";
  for (const auto& v : computed) os << v << ' ';
  os << "\n  reference: ";
  for (const auto& v : reference) os << v << ' ';
  os << "\n  " << (agree ? "agree" : "DIVERGE");
  if (first_divergence)
    os << " (first divergence at n = " << start_n + *first_divergence << ")";
  os << '\n';
  return os.str();
}

SequenceReport make_report(std::string label, std::vector<BigInt> computed,
                           std::vector<BigInt> reference, int start_n) {
  SequenceReport r;
  r.label = std::move(label);
  r.start_n = start_n;
  r.computed = std::move(computed);
  r.reference = std::move(reference);
  r.agree = true;
  for (size_t i = 0; i < r.computed.size() && i < r.reference.size(); ++i) {
    if (r.computed[i] != r.reference[i]) {
      r.agree = false;
      r.first_divergence = static_cast<int>(i);
      break;
    }
  }
  return r;
}

std::string composition_name(CompositionId id) {
  switch (id) {
    case CompositionId::stack_after_psb: return "stack-psb";
    case CompositionId::queue_after_psb: return "que-psb";
    case CompositionId::bubble_after_psb: return "bub-psb";
    case CompositionId::psb_after_queue: return "psb-que";
    case CompositionId::psb_after_bubble: return "psb-bub";
  }
  return "?";
}

CompositionId parse_composition(std::string_view name) {
  if (name == "stack-psb") return CompositionId::stack_after_psb;
  if (name == "que-psb") return CompositionId::queue_after_psb;
  if (name == "bub-psb") return CompositionId::bubble_after_psb;
  if (name == "psb-que") return CompositionId::psb_after_queue;
  if (name == "psb-bub") return CompositionId::psb_after_bubble;
  throw std::invalid_argument("unknown composition: " + std::string(name));
}

std::vector<MachineConfig> composition_machines(CompositionId id) {
  switch (id) {
    case CompositionId::stack_after_psb:
      return {MachineConfig::psb(), MachineConfig::classic_stack()};
    case CompositionId::queue_after_psb:
      return {MachineConfig::psb(), MachineConfig::queue_bypass()};
    case CompositionId::bubble_after_psb:
      return {MachineConfig::psb(), MachineConfig::bubble()};
    case CompositionId::psb_after_queue:
      return {MachineConfig::queue_bypass(), MachineConfig::psb()};
    case CompositionId::psb_after_bubble:
      return {MachineConfig::bubble(), MachineConfig::psb()};
  }
  throw std::invalid_argument("bad composition id");
}

namespace {

std::vector<BigInt> composition_reference(CompositionId id, int max_n) {
  // Printed prefixes from the source text; the two GF-backed compositions
  // use the expansion (coefficient n counts size n, index 0 is the empty
  // permutation).
  switch (id) {
    case CompositionId::queue_after_psb:
      return {1, 2, 6, 23, 101, 480, 2400, 12434, 66142, 359112, 1981904, 11085198};
    case CompositionId::psb_after_queue:
      return {1, 2, 6, 22, 89, 380, 1679, 7602, 35072, 164266, 779022, 3733444};
    case CompositionId::bubble_after_psb: {
      auto coeffs = gf_expand(gf_bub_after_psb(), max_n + 1);
      return {coeffs.begin() + 1, coeffs.end()};
    }
    case CompositionId::psb_after_bubble: {
      auto coeffs = gf_expand(gf_psb_after_bubble(), max_n + 1);
      return {coeffs.begin() + 1, coeffs.end()};
    }
    case CompositionId::stack_after_psb:
      return {};  // the source gives no counting sequence for this one
  }
  return {};
}

}  // namespace

SequenceReport composition_counts(CompositionId id, int max_n, bool force,
                                  int workers) {
  check_guard(max_n, 8, force, "composition_counts");
  const auto machines = composition_machines(id);
  std::vector<BigInt> computed;
  for (int n = 1; n <= max_n; ++n) {
    uint64_t direct = count_perms(n, workers, [&](const std::vector<int>& v) {
      return compose(machines, Permutation(v)).sorted;
    });
    uint64_t inv = count_perms(n, workers, [&](const std::vector<int>& v) {
      return compose(machines, inverse(Permutation(v))).sorted;
    });
    if (direct != inv)
      throw std::runtime_error("composition_counts: direct and inverse counts differ at n = " +
                               std::to_string(n));
    computed.emplace_back(direct);
  }
  auto reference = composition_reference(id, max_n);
  if (static_cast<int>(reference.size()) > max_n) reference.resize(static_cast<size_t>(max_n));
  return make_report(composition_name(id), std::move(computed), std::move(reference));
}

SequenceReport conjecture_simple_psbp(int max_n, bool force, int workers) {
  check_guard(max_n, 9, force, "conjecture_simple_psbp");
  const PatternBasis basis = psbp_basis();
  std::vector<BigInt> computed, conjectured;
  for (int n = 0; n <= max_n; ++n) {
    if (n == 0) {
      computed.emplace_back(1);
    } else {
      uint64_t c = count_perms(n, workers, [&](const std::vector<int>& v) {
        Permutation p(v);
        return is_simple(p) && avoids(p, basis);
      });
      computed.emplace_back(c);
    }
    if (n <= 1) conjectured.emplace_back(1);
    else if (n == 2) conjectured.emplace_back(2);
    else if (n % 2 == 1) conjectured.push_back(fib(2 * n - 5) - 1);
    else conjectured.push_back(fib(2 * n - 5));
  }
  return make_report("simple-psbp-conjecture", std::move(computed),
                     std::move(conjectured), /*start_n=*/0);
}

}  // namespace popsort
