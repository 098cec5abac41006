#include <map>
#include <set>

#include "doctest.h"
#include "popsort/enumeration.hpp"
#include "popsort/machines.hpp"
#include "popsort/preimage.hpp"
#include "popsort/sweep.hpp"

using namespace popsort;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

std::map<std::vector<int>, std::vector<std::vector<int>>> buckets(int n) {
  std::map<std::vector<int>, std::vector<std::vector<int>>> b;
  for_each_perm(n, [&](const std::vector<int>& v) { b[psb_sequence(v)].push_back(v); });
  return b;
}

}  // namespace

TEST_CASE("preimage fixtures") {
  auto got = preimages(P("3154267"));
  std::set<Permutation> set(got.begin(), got.end());
  CHECK(set.size() == 14);
  // the ten preimages printed in the source example
  for (const char* s : {"7315642", "7315462", "7315426", "3715642", "3715462",
                        "3715426", "3517642", "3517462", "3517426", "3516427"})
    CHECK(set.count(P(s)));
  // plus four more, missed by the source's worked example but confirmed by
  // running the sorter (and by the exhaustive oracle below)
  for (const char* s : {"5316427", "5317426", "5317462", "5317642"})
    CHECK(set.count(P(s)));
  for (const auto& p : got) CHECK(psb(p).output == P("3154267"));

  CHECK(preimages(P("1")) == std::vector<Permutation>{P("1")});
  CHECK(preimages(P("21")).empty());
  CHECK(preimages(P("12")) == std::vector<Permutation>{P("12"), P("21")});
  CHECK(preimages(Permutation()).size() == 1);
}

TEST_CASE("brute force oracle") {
  auto brute = brute_preimages(P("3154267"));
  auto alg = preimages(P("3154267"));
  CHECK(std::set<Permutation>(brute.begin(), brute.end()) ==
        std::set<Permutation>(alg.begin(), alg.end()));
  CHECK(brute_preimages(P("132")).empty());  // does not end with its maximum
  CHECK(brute_preimages(P("12")).size() == 2);
  CHECK_THROWS_AS(brute_preimages(P("10 1 2 3 4 5 6 7 8 9")), GuardError);
}

TEST_CASE("algorithm equals brute force exhaustively, n <= 6") {
  for (int n = 0; n <= 6; ++n) {
    auto b = buckets(n);
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      auto alg = preimages_seq(v);
      auto it = b.find(v);
      std::vector<std::vector<int>> brute =
          it == b.end() ? std::vector<std::vector<int>>{} : it->second;
      std::sort(brute.begin(), brute.end());
      if (alg != brute) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("histogram identity: images partition S_n") {
  for (int n = 1; n <= 7; ++n) {
    auto b = buckets(n);
    uint64_t total = 0;
    for (const auto& [target, pres] : b) total += pres.size();
    CHECK(total == factorial_u64(n));
    // nonempty preimage set iff the target ends with its maximum
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      bool nonempty = b.count(v) > 0;
      if (nonempty != (v.back() == n)) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("membership characterizations") {
  CHECK(in_C0(P("21")));
  CHECK_FALSE(in_C0(P("12")));
  CHECK(in_C1(P("213")));
  CHECK(in_C1(P("3124")));
  CHECK(in_C1(P("1")));
  CHECK_FALSE(in_C1(P("12")));  // adjacent maxima
  CHECK(in_C2(P("1324")));
  CHECK_FALSE(in_C2(P("3124")));  // first maximum consecutive with second

  for (int n = 1; n <= 7; ++n) {
    auto b = buckets(n);
    auto count_of = [&](const std::vector<int>& v) {
      auto it = b.find(v);
      return it == b.end() ? size_t{0} : it->second.size();
    };
    uint64_t c0_bad = 0, c1_bad = 0, c2_unsound = 0, c2_missing = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      size_t k = count_of(v);
      if (in_C0(p) != (k == 0)) ++c0_bad;
      if (n >= 3 && in_C1(p) != (k == 1)) ++c1_bad;
      if (n >= 4) {
        if (in_C2(p) && k != 2) ++c2_unsound;
        if (!in_C2(p) && k == 2) ++c2_missing;
      }
    });
    CHECK(c0_bad == 0);
    CHECK(c1_bad == 0);
    // the two-preimage characterization is sound but incomplete: every
    // member really has two preimages, yet from n = 4 on some two-preimage
    // permutations fall outside it (2314 is the smallest)
    CHECK(c2_unsound == 0);
    if (n == 4) CHECK(c2_missing == 1);
  }
  CHECK_FALSE(in_C2(P("2314")));
  CHECK(brute_preimages(P("2314")).size() == 2);
}

TEST_CASE("counting formulas") {
  CHECK(c0(4) == 18);
  std::vector<BigInt> c1_prefix;
  for (int n = 1; n <= 7; ++n) c1_prefix.push_back(c1(n));
  CHECK(c1_prefix == std::vector<BigInt>{1, 0, 1, 2, 8, 36, 198});
  CHECK(c1(0) == 1);  // the empty permutation has exactly one preimage
  CHECK(c2(2) == 1);  // direct count below the formula's range

  // formula counts match the structural membership counts
  for (int n = 1; n <= 7; ++n) {
    uint64_t s0 = 0, s1 = 0, s2 = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      s0 += in_C0(p) ? 1 : 0;
      s1 += in_C1(p) ? 1 : 0;
      s2 += in_C2(p) ? 1 : 0;
    });
    CHECK(c0(n) == s0);
    if (n >= 3) CHECK(c1(n) == s1);
    if (n >= 4) CHECK(c2(n) == s2);
  }

  // the c2 formula undercounts the true histogram (known source defect,
  // pinned here so any behavior change is caught)
  auto b4 = buckets(4);
  uint64_t true_c2 = 0;
  for_each_perm(4, [&](const std::vector<int>& v) {
    auto it = b4.find(v);
    if (it != b4.end() && it->second.size() == 2) ++true_c2;
  });
  CHECK(true_c2 == 2);
  CHECK(c2(4) == 1);
}
