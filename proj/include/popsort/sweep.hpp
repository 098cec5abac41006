#pragma once

// Exhaustive S_n sweeps, optionally sharded across worker threads by rank
// range. Shard results are combined in shard order, so counts are identical
// for any worker count.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

namespace popsort {

inline uint64_t factorial_u64(int n) {
  uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
  return f;
}

// Permutation of {1..n} with the given lexicographic rank (factorial number
// system).
inline std::vector<int> nth_permutation(int n, uint64_t rank) {
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = n; i >= 1; --i) {
    uint64_t f = factorial_u64(i - 1);
    size_t idx = static_cast<size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

// Applies f to every permutation of {1..n} in lexicographic order.
template <typename F>
void for_each_perm(int n, F&& f) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  do {
    f(v);
  } while (std::next_permutation(v.begin(), v.end()));
}

// Counts permutations satisfying pred, sharded over `workers` threads.
// pred must be a pure function of its argument.
inline uint64_t count_perms(int n, int workers,
                            const std::function<bool(const std::vector<int>&)>& pred) {
  const uint64_t total = factorial_u64(n);
  if (workers <= 1 || total < 1024) {
    uint64_t count = 0;
    for_each_perm(n, [&](const std::vector<int>& v) { count += pred(v) ? 1 : 0; });
    return count;
  }
  const int w = std::min<int>(workers, 64);
  std::vector<uint64_t> partial(static_cast<size_t>(w), 0);
  std::vector<std::thread> threads;
  for (int t = 0; t < w; ++t) {
    uint64_t begin = total * static_cast<uint64_t>(t) / static_cast<uint64_t>(w);
    uint64_t end = total * static_cast<uint64_t>(t + 1) / static_cast<uint64_t>(w);
    threads.emplace_back([&, t, begin, end] {
      if (begin >= end) return;
      std::vector<int> v = nth_permutation(n, begin);
      uint64_t count = 0;
      for (uint64_t r = begin; r < end; ++r) {
        count += pred(v) ? 1 : 0;
        std::next_permutation(v.begin(), v.end());
      }
      partial[static_cast<size_t>(t)] = count;
    });
  }
  for (auto& th : threads) th.join();
  uint64_t count = 0;
  for (uint64_t c : partial) count += c;
  return count;
}

}  // namespace popsort
