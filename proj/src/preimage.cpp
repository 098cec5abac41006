#include "popsort/preimage.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "popsort/enumeration.hpp"
#include "popsort/machines.hpp"
#include "popsort/sweep.hpp"

namespace popsort {

namespace {

// Candidate generation for one choice of removed suffix and one insertion
// point of the largest removed value: interleave the remaining removed
// values (strictly decreasing) into the part of the prefix after that
// insertion point, in all ways.
void interleave_tail(const std::vector<int>& post, const std::vector<int>& tail,
                     size_t pi, size_t ti, std::vector<int>& cur,
                     const std::function<void(const std::vector<int>&)>& emit) {
  if (ti == tail.size()) {
    std::vector<int> full = cur;
    full.insert(full.end(), post.begin() + static_cast<std::ptrdiff_t>(pi), post.end());
    emit(full);
    return;
  }
  if (pi < post.size()) {
    cur.push_back(post[pi]);
    interleave_tail(post, tail, pi + 1, ti, cur, emit);
    cur.pop_back();
  }
  cur.push_back(tail[ti]);
  interleave_tail(post, tail, pi, ti + 1, cur, emit);
  cur.pop_back();
}

}  // namespace

std::vector<std::vector<int>> preimages_seq(std::span<const int> s) {
  if (s.empty()) return {{}};
  int mx = *std::max_element(s.begin(), s.end());
  if (s.back() != mx) return {};

  std::set<std::vector<int>> result;
  const size_t suffix_start = max_suffix_start(s);
  const std::vector<int> seq(s.begin(), s.end());

  for (size_t mi = suffix_start; mi < seq.size(); ++mi) {
    // remove the suffix m, m+1, ..., mx starting at mi
    std::vector<int> prefix(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(mi));
    std::vector<int> tail;  // mx-1 down to m, reinserted in decreasing order
    for (size_t t = seq.size() - 1; t > mi; --t) tail.push_back(seq[t - 1]);
    const int m = seq[mi];

    // the largest value goes at the front or right after a left-to-right
    // maximum of the remaining prefix
    std::vector<size_t> slots{0};
    for (auto [pos, val] : ltr_maxima_seq(prefix)) {
      (void)val;
      slots.push_back(static_cast<size_t>(pos));
    }
    for (size_t slot : slots) {
      std::vector<int> pre(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(slot));
      std::vector<int> post(prefix.begin() + static_cast<std::ptrdiff_t>(slot), prefix.end());

      // position of value m-1 inside post, if any; m must land to its right
      auto m1 = std::find(post.begin(), post.end(), m - 1);

      std::vector<int> cur;
      auto emit = [&](const std::vector<int>& mid) {
        // enforce: m (the last tail value) appears right of m-1 when m-1
        // is in the post part; when it is in pre (or absent) any slot works
        if (m1 != post.end() && !tail.empty()) {
          auto pm = std::find(mid.begin(), mid.end(), m);
          auto pm1 = std::find(mid.begin(), mid.end(), m - 1);
          if (pm < pm1) return;
        }
        for (const auto& left : preimages_seq(pre)) {
          std::vector<int> cand;
          cand.reserve(seq.size());
          cand.insert(cand.end(), left.begin(), left.end());
          cand.push_back(mx);
          cand.insert(cand.end(), mid.begin(), mid.end());
          if (psb_sequence(cand) == seq) result.insert(std::move(cand));
        }
      };
      interleave_tail(post, tail, 0, 0, cur, emit);
    }
  }
  return {result.begin(), result.end()};
}

std::vector<Permutation> preimages(const Permutation& s) {
  std::vector<Permutation> out;
  for (auto& v : preimages_seq(s.entries())) out.emplace_back(std::move(v));
  return out;
}

std::vector<Permutation> brute_preimages(const Permutation& s, bool force) {
  if (s.size() > 9 && !force)
    throw GuardError("brute_preimages: |s| = " + std::to_string(s.size()) +
                     " exceeds guard 9 (use force to override)");
  std::vector<Permutation> out;
  for_each_perm(s.size(), [&](const std::vector<int>& v) {
    if (psb_sequence(v) == s.entries()) out.emplace_back(v);
  });
  return out;
}

bool in_C0(const Permutation& s) {
  return s.size() > 0 && s(s.size()) != s.size();
}

bool in_C1(const Permutation& s) {
  const int n = s.size();
  if (n == 0 || s(n) != n) return false;
  auto maxima = ltr_maxima(s);
  const int t = static_cast<int>(maxima.size());
  // values form the interval {n-t+1 .. n}
  for (int i = 0; i < t; ++i)
    if (maxima[static_cast<size_t>(i)].second != n - t + 1 + i) return false;
  for (int i = 0; i + 1 < t; ++i)
    if (maxima[static_cast<size_t>(i + 1)].first -
            maxima[static_cast<size_t>(i)].first <= 1)
      return false;
  return true;
}

bool in_C2(const Permutation& s) {
  const int n = s.size();
  if (n == 0 || s(n) != n) return false;
  auto maxima = ltr_maxima(s);
  const int t = static_cast<int>(maxima.size());
  if (t < 2) return false;
  // all maxima except the first form the interval {n-t+2 .. n}
  for (int i = 1; i < t; ++i)
    if (maxima[static_cast<size_t>(i)].second != n - t + 1 + i) return false;
  // first maximum nonconsecutive with the second
  if (maxima[0].second == maxima[1].second - 1) return false;
  // interval part pairwise nonadjacent (the first may touch the second)
  for (int i = 1; i + 1 < t; ++i)
    if (maxima[static_cast<size_t>(i + 1)].first -
            maxima[static_cast<size_t>(i)].first <= 1)
      return false;
  return true;
}

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// direct count over S_n, used below the formulas' validity thresholds
BigInt direct_count(int n, int k) {
  std::map<std::vector<int>, int> hist;
  for_each_perm(n, [&](const std::vector<int>& v) { hist[psb_sequence(v)]++; });
  uint64_t c = 0;
  for_each_perm(n, [&](const std::vector<int>& v) {
    auto it = hist.find(v);
    int cnt = it == hist.end() ? 0 : it->second;
    if (cnt == k) ++c;
  });
  return c;
}

}  // namespace

BigInt c0(int n) {
  if (n < 0) throw std::invalid_argument("c0: need n >= 0");
  if (n == 0) return 0;
  return BigInt(n - 1) * factorial(n - 1);
}

BigInt c1(int n) {
  if (n < 0) throw std::invalid_argument("c1: need n >= 0");
  if (n < 3) return direct_count(n, 1);
  BigInt total = 0;
  const int top = (n + 1) / 2;  // ceil(n/2)
  for (int k = 2; k <= top; ++k)
    total += factorial(n - k) * binom(n - k - 1, k - 2);
  return total;
}

BigInt c2(int n) {
  if (n < 0) throw std::invalid_argument("c2: need n >= 0");
  if (n < 4) return direct_count(n, 2);
  BigInt total = 0;
  for (int k = 3; k <= n; ++k)
    for (int j = 1; j <= n - k; ++j)
      total += binom(n - k, j) * factorial(j - 1) * factorial(n - j - k + 1) *
               binom(n - j - k, k - 3);
  return total;
}

std::string preimage_count_csv(int max_n, bool force) {
  if (max_n > 9 && !force)
    throw GuardError("preimage_count_csv: max_n = " + std::to_string(max_n) +
                     " exceeds guard 9 (use force to override)");
  std::ostringstream os;
  os << "n,c0,c1,c2,brute_c0,brute_c1,brute_c2\n";
  for (int n = 1; n <= max_n; ++n) {
    std::map<std::vector<int>, int> hist;
    for_each_perm(n, [&](const std::vector<int>& v) { hist[psb_sequence(v)]++; });
    uint64_t b0 = 0, b1 = 0, b2 = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      auto it = hist.find(v);
      int k = it == hist.end() ? 0 : it->second;
      if (k == 0) ++b0;
      else if (k == 1) ++b1;
      else if (k == 2) ++b2;
    });
    os << n << ',' << c0(n) << ',' << c1(n) << ',' << c2(n) << ',' << b0 << ','
       << b1 << ',' << b2 << '\n';
  }
  return os.str();
}

}  // namespace popsort
