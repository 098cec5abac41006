#include "doctest.h"
#include "popsort/enumeration.hpp"
#include "popsort/machines.hpp"
#include "popsort/sweep.hpp"
#include "popsort/words_paths.hpp"

using namespace popsort;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

// DFA for 0(0+2+1^+0)*, the regular-expression route to W-membership
bool regex_in_W(std::string_view w) {
  enum { S, A, B, X } st = S;
  for (char c : w) {
    switch (st) {
      case S: st = c == '0' ? A : X; break;
      case A: st = (c == '0' || c == '2') ? A : (c == '1' ? B : X); break;
      case B: st = c == '0' ? A : (c == '1' ? B : X); break;
      case X: break;
    }
    if (st == X) return false;
  }
  return st == A;
}

}  // namespace

TEST_CASE("sorting words") {
  CHECK(perm_to_word(P("3127465")) == "0102100");
  CHECK(perm_to_word(P("365142")) == "020101");
  CHECK(perm_to_word(P("1")) == "0");
  CHECK(perm_to_word(Permutation()).empty());

  CHECK(word_in_W("0102100"));
  CHECK_FALSE(word_in_W("01"));
  CHECK_FALSE(word_in_W("020101"));
  CHECK(word_in_W(""));
  CHECK_FALSE(word_in_W("102"));
  CHECK_FALSE(word_in_W("0120"));
}

TEST_CASE("word_to_perm") {
  CHECK(word_to_perm("0110210220102") == P("4 1 2 3 7 5 6 8 12 11 9 10 13"));
  CHECK(word_to_perm("0") == P("1"));
  CHECK(word_to_perm("02") == P("12"));
  CHECK(word_to_perm("") == Permutation());
  CHECK_THROWS_AS(word_to_perm("01"), std::invalid_argument);
  CHECK_THROWS_AS(word_to_perm("20"), std::invalid_argument);
}

TEST_CASE("paths") {
  CHECK(perm_to_path(P("3127465")) == "UHUDDUHUUDDD");
  CHECK(word_to_path("0") == "UD");
  CHECK(path_in_M("UHUDDUHUUDDD"));
  CHECK(path_in_M("UD"));
  CHECK(path_in_M(""));
  CHECK_FALSE(path_in_M("UHD"));
  CHECK_FALSE(path_in_M("UU"));     // does not return to the axis
  CHECK_FALSE(path_in_M("UDH"));    // H adjacent to D, ends with H
  CHECK_FALSE(path_in_M("UUDUDD")); // first D-run stops above the axis
  CHECK(path_to_word("UHUDDUHUUDDD") == "0102100");
  CHECK(path_to_word("UD") == "0");
  CHECK_THROWS_AS(path_to_word("UHD"), std::invalid_argument);
}

TEST_CASE("roundtrips") {
  // sortable permutations, n <= 8
  for (int n = 0; n <= 8; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (!psb(p).sorted) return;
      std::string w = perm_to_word(p);
      std::string m = perm_to_path(p);
      if (!word_in_W(w) || word_to_perm(w) != p) ++bad;
      if (!path_in_M(m) || word_to_path(w) != m || path_to_word(m) != w) ++bad;
    });
    CHECK(bad == 0);
  }
  // all W-words up to length 10
  for (int n = 0; n <= 10; ++n) {
    uint64_t bad = 0;
    for (const auto& w : enumerate_W(n)) {
      Permutation p = word_to_perm(w);
      if (perm_to_word(p) != w || !psb(p).sorted) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("regular expression agreement up to length 12") {
  // exhaustive over all ternary words; the empty word is excluded from the
  // cross-check (the regular expression generates nonempty words only)
  for (int n = 1; n <= 12; ++n) {
    uint64_t bad = 0;
    std::string w(static_cast<size_t>(n), '0');
    std::function<void(int)> rec = [&](int pos) {
      if (pos == n) {
        if (word_in_W(w) != regex_in_W(w)) ++bad;
        return;
      }
      for (char c : {'0', '1', '2'}) {
        w[static_cast<size_t>(pos)] = c;
        rec(pos + 1);
      }
    };
    rec(0);
    CHECK(bad == 0);
  }
}

TEST_CASE("counts") {
  CHECK(count_M(0) == 1);
  CHECK(count_M(5) == 34);
  CHECK(count_W(5) == 34);
  for (int n = 0; n <= 12; ++n) {
    CHECK(count_W_enum(n) == count_M_enum(n));
    CHECK(count_M_enum(n) == count_WM_recurrence(n));
  }
  for (int n = 0; n <= 20; ++n) CHECK(count_WM_recurrence(n) == fib(2 * n - 1));
  CHECK(enumerate_W(4).size() == 13);
}

TEST_CASE("csv table") {
  std::string csv = word_count_csv(3);
  CHECK(csv == "n,count_W,count_M,fibonacci_odd\n0,1,1,1\n1,1,1,1\n2,2,2,2\n3,5,5,5\n");
}
