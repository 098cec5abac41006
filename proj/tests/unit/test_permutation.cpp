#include <algorithm>
#include <set>

#include "doctest.h"
#include "popsort/permutation.hpp"
#include "popsort/sweep.hpp"

using namespace popsort;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

// independent oracle: scan every subsequence of length |q|
bool naive_contains(const Permutation& p, const Permutation& q) {
  const int n = p.size(), k = q.size();
  if (k > n) return false;
  std::vector<int> idx(static_cast<size_t>(k));
  std::function<bool(int, int)> rec = [&](int slot, int from) {
    if (slot == k) {
      std::vector<int> vals;
      for (int i : idx) vals.push_back(p(i + 1));
      return flatten(vals) == q;
    }
    for (int i = from; i <= n - (k - slot); ++i) {
      idx[static_cast<size_t>(slot)] = i;
      if (rec(slot + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

TEST_CASE("parsing") {
  CHECK(P("3 6 5 1 4 2").entries() == std::vector<int>{3, 6, 5, 1, 4, 2});
  CHECK(P("365142").entries() == std::vector<int>{3, 6, 5, 1, 4, 2});
  CHECK(P("3,6,5,1,4,2") == P("365142"));
  CHECK(P("").empty());
  CHECK_THROWS_AS(P("7"), std::invalid_argument);  // 7 alone is not a bijection on {1}
  CHECK_THROWS_AS(P("1 1 2"), std::invalid_argument);
  CHECK_THROWS_AS(P("1 3"), std::invalid_argument);
  CHECK_THROWS_AS(P("a b"), std::invalid_argument);
  CHECK(P("1").str() == "1");
  CHECK(P("365142").str() == "3 6 5 1 4 2");
  CHECK(P("365142").compact() == "365142");
  CHECK(P("10 1 2 3 4 5 6 7 8 9").size() == 10);
}

TEST_CASE("containment fixtures") {
  CHECK(contains(P("35142"), P("213")));
  CHECK_FALSE(contains(P("35142"), P("123")));
  CHECK(contains(P("35142"), P("321")));
  CHECK_FALSE(contains(Permutation::identity(6), P("21")));
  CHECK(contains(P("365142"), P("231")));
  CHECK(contains(P("2431"), P("231")));
  CHECK(contains(P("1"), Permutation()));  // empty pattern
}

TEST_CASE("containment agrees with the all-subsequence oracle up to n = 8") {
  std::vector<Permutation> patterns;
  for (int k = 3; k <= 4; ++k)
    for_each_perm(k, [&](const std::vector<int>& v) { patterns.emplace_back(v); });
  for (int n = 1; n <= 8; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      for (const auto& q : patterns)
        if (contains(p, q) != naive_contains(p, q)) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("barred patterns") {
  BarredPattern b = parse_barred_pattern("3!5241");
  CHECK(b.pattern == P("35241"));
  CHECK(b.barred == std::set<int>{2});
  CHECK(b.unbarred_part() == P("3241"));
  CHECK(b.str() == "3!5241");
  CHECK_FALSE(contains_barred(P("462351"), b));
  CHECK(contains_barred(P("3241"), b));
  CHECK(contains_barred(P("53241"), b));

  // no bars: plain containment, exhaustively for n <= 7
  for (int n = 1; n <= 7; ++n) {
    uint64_t bad = 0;
    std::vector<Permutation> pats;
    for_each_perm(3, [&](const std::vector<int>& v) { pats.emplace_back(v); });
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      for (const auto& q : pats) {
        BarredPattern nb{q, {}};
        if (contains_barred(p, nb) != contains(p, q)) ++bad;
      }
    });
    CHECK(bad == 0);
  }
  CHECK_THROWS_AS(parse_barred_pattern("!1"), std::invalid_argument);  // all entries barred
}

TEST_CASE("avoids") {
  PatternBasis b;
  b.classical = {P("231"), P("4213")};
  CHECK_FALSE(avoids(P("365142"), b));
  CHECK(avoids(Permutation::identity(7), b));
  PatternBasis only231;
  only231.classical = {P("231")};
  CHECK_FALSE(avoids(P("2431"), only231));
}

TEST_CASE("ltr maxima") {
  auto m = ltr_maxima(P("3645712"));
  std::vector<int> vals;
  for (auto [pos, v] : m) vals.push_back(v);
  CHECK(vals == std::vector<int>{3, 6, 7});
  CHECK(ltr_maxima(Permutation::identity(5)).size() == 5);
  CHECK(ltr_maxima(P("54321")).size() == 1);
  CHECK(ltr_maxima(Permutation()).empty());
}

TEST_CASE("direct sum, reverse, inverse") {
  CHECK(direct_sum(P("3142"), P("42315")) == P("314286759"));
  CHECK(direct_sum(P("3142"), Permutation()) == P("3142"));
  CHECK(direct_sum(P("1"), P("1")) == P("12"));
  CHECK(reverse(P("3645712")) == P("2175463"));
  CHECK(inverse(Permutation::identity(5)) == Permutation::identity(5));
  CHECK(inverse(P("312")) == P("231"));
}

TEST_CASE("shuffles") {
  std::vector<int> a{3, 1}, b{2, 4};
  auto sh = shuffles(a, b);
  std::set<std::vector<int>> got(sh.begin(), sh.end());
  std::set<std::vector<int>> expect{{3, 1, 2, 4}, {3, 2, 1, 4}, {3, 2, 4, 1},
                                    {2, 3, 1, 4}, {2, 3, 4, 1}, {2, 4, 3, 1}};
  CHECK(got == expect);
  CHECK(shuffles(a, {}).size() == 1);
  // count identity: C(|a|+|b|, |a|) distinct interleavings
  std::vector<int> c{5, 6, 7};
  auto sh2 = shuffles(a, c);
  CHECK(std::set<std::vector<int>>(sh2.begin(), sh2.end()).size() == 10);
  std::vector<int> overlap{1, 9};
  CHECK_THROWS_AS(shuffles(a, overlap), std::invalid_argument);
}

TEST_CASE("is_simple fixtures and interval oracle") {
  CHECK(is_simple(P("2413")));
  CHECK(is_simple(P("3142")));
  CHECK_FALSE(is_simple(P("123")));
  CHECK(is_simple(P("12")));
  CHECK(is_simple(P("1")));
  CHECK(is_simple(Permutation()));

  // oracle: explicit value-set check over all position intervals
  auto oracle = [](const Permutation& p) {
    const int n = p.size();
    if (n <= 2) return true;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (j - i + 1 == n) continue;
        std::set<int> vals;
        for (int t = i; t <= j; ++t) vals.insert(p(t));
        if (*vals.rbegin() - *vals.begin() + 1 == static_cast<int>(vals.size()))
          return false;
      }
    }
    return true;
  };
  for (int n = 1; n <= 9; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (is_simple(p) != oracle(p)) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("run decomposition") {
  auto rd = run_decomposition(P("635247198"));
  REQUIRE(rd.runs.size() == 3);
  CHECK(rd.runs[0].maximum == 6);
  CHECK(rd.runs[0].run_length == 3);  // j_1 = 2
  CHECK(rd.runs[0].bypassers == std::vector<int>{3, 2});
  CHECK(rd.runs[1].maximum == 7);
  CHECK(rd.runs[1].run_length == 1);
  CHECK(rd.runs[1].bypassers == std::vector<int>{1});
  CHECK(rd.runs[2].maximum == 9);
  CHECK(rd.runs[2].run_length == 2);
  CHECK(rd.runs[2].bypassers.empty());

  auto rid = run_decomposition(Permutation::identity(5));
  CHECK(rid.runs.size() == 5);
  for (const auto& r : rid.runs) {
    CHECK(r.run_length == 1);
    CHECK(r.bypassers.empty());
  }
  auto rdec = run_decomposition(P("54321"));
  REQUIRE(rdec.runs.size() == 1);
  CHECK(rdec.runs[0].run_length == 5);
  CHECK(rdec.runs[0].bypassers.empty());
}

TEST_CASE("max suffix decomposition") {
  auto d = max_suffix_decomposition(P("3154267"));
  REQUIRE_FALSE(d.maxima_runs.empty());
  CHECK(d.maxima_runs.back() == std::vector<int>{6, 7});

  auto did = max_suffix_decomposition(Permutation::identity(6));
  CHECK(did.maxima_runs.size() == 1);
  CHECK(did.maxima_runs[0].size() == 6);

  // 3142 under the contiguous-factorization semantics
  auto d2 = max_suffix_decomposition(P("3142"));
  REQUIRE(d2.maxima_runs.size() == 2);
  CHECK(d2.maxima_runs[0] == std::vector<int>{3});
  CHECK(d2.gaps[0] == std::vector<int>{1});
  CHECK(d2.maxima_runs[1] == std::vector<int>{4});
  CHECK(d2.gaps[1] == std::vector<int>{2});
}

TEST_CASE("decompositions round-trip for all n <= 8") {
  for (int n = 0; n <= 8; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      std::vector<int> rebuilt;
      for (const auto& run : run_decomposition(p).runs) {
        rebuilt.push_back(run.maximum);
        rebuilt.insert(rebuilt.end(), run.block.begin(), run.block.end());
      }
      if (rebuilt != v) ++bad;

      auto d = max_suffix_decomposition(p);
      std::vector<int> rebuilt2;
      for (size_t i = 0; i < d.maxima_runs.size(); ++i) {
        rebuilt2.insert(rebuilt2.end(), d.maxima_runs[i].begin(), d.maxima_runs[i].end());
        rebuilt2.insert(rebuilt2.end(), d.gaps[i].begin(), d.gaps[i].end());
      }
      if (rebuilt2 != v) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("flatten") {
  std::vector<int> seq{7, 4, 6, 5};
  CHECK(flatten(seq) == P("4132"));
  CHECK(flatten(std::vector<int>{}) == Permutation());
}
