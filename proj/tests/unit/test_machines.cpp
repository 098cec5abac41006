#include <set>

#include "doctest.h"
#include "json.hpp"
#include "popsort/classes.hpp"
#include "popsort/machines.hpp"
#include "popsort/sweep.hpp"

using namespace popsort;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

PatternBasis basis_of(std::initializer_list<const char*> pats) {
  PatternBasis b;
  for (const char* s : pats) b.classical.push_back(parse_permutation(s));
  return b;
}

// value-subsequence test: s appears in p in this order
bool is_subsequence(const std::vector<int>& s, const Permutation& p) {
  size_t j = 0;
  for (int v : p) {
    if (j < s.size() && v == s[j]) ++j;
  }
  return j == s.size();
}

}  // namespace

TEST_CASE("psb fixtures") {
  CHECK(psb(P("365142")).output == P("312456"));
  CHECK_FALSE(psb(P("365142")).sorted);
  CHECK(psb(P("3127465")).output == Permutation::identity(7));
  CHECK(psb(P("3127465")).sorted);
  CHECK(psb(P("635247198")).output == P("324561789"));
  CHECK(psb(Permutation()).sorted);  // empty permutation sorts
  CHECK(psb(P("635247198")).output == psb(P("635427198")).output);
}

TEST_CASE("classical machines") {
  CHECK(stacksort(P("321")).output == Permutation::identity(3));
  CHECK(queuesort(P("231")).output == Permutation::identity(3));
  CHECK(bubblesort(P("321")).output == P("213"));
  // characterizations at n <= 7
  for (int n = 1; n <= 7; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (stacksort(p).sorted != avoids(p, basis_of({"231"}))) ++bad;
      if (queuesort(p).sorted != avoids(p, basis_of({"321"}))) ++bad;
      if (bubblesort(p).sorted != avoids(p, basis_of({"231", "321"}))) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("plain pop stack") {
  CHECK(popstack_plain(P("231")).output == P("213"));
  CHECK(popstack_plain(P("54321")).output == Permutation::identity(5));
  CHECK(popstack_plain(P("312")).output == P("132"));
  for (int n = 1; n <= 8; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (popstack_plain(p).sorted != avoids(p, basis_of({"231", "312"}))) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("psbp") {
  CHECK_FALSE(psbp(P("2341")).sorted);
  for_each_perm(3, [&](const std::vector<int>& v) { CHECK(psbp(Permutation(v)).sorted); });
  CHECK(psbp(Permutation::identity(6)).sorted);
  CHECK(psbp(P("1423")).sorted);
}

TEST_CASE("greedy parallel") {
  CHECK_FALSE(greedy_parallel(P("231"), 1, true).sorted);
  CHECK(greedy_parallel(Permutation::identity(5), 1, true).sorted);
  CHECK(greedy_parallel(Permutation::identity(5), 3, false).sorted);
  CHECK_FALSE(greedy_parallel(P("2341"), 2, true).sorted);
  // greedy k=1 with bypass is exactly psb-sortability
  for (int n = 1; n <= 7; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (greedy_parallel(p, 1, true).sorted != psb(p).sorted) ++bad;
    });
    CHECK(bad == 0);
  }
  // no-bypass greedy agrees with the oracle at small sizes
  for (int n = 1; n <= 6; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (greedy_parallel(p, 2, false).sorted !=
          dfs_sortable(p, MachineConfig::parallel(2, false)))
        ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("dfs oracle") {
  CHECK_FALSE(dfs_sortable(P("231"), MachineConfig::psb()));
  CHECK_FALSE(dfs_sortable(P("2431"), MachineConfig::psb()));
  for (auto cfg : {MachineConfig::psb(), MachineConfig::classic_stack(),
                   MachineConfig::queue_bypass(), MachineConfig::bubble(),
                   MachineConfig::popstack_plain(), MachineConfig::parallel(2, true)})
    CHECK(dfs_sortable(Permutation::identity(6), cfg));
  // stack and queue oracles reproduce the classical characterizations
  for (int n = 1; n <= 6; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      if (dfs_sortable(p, MachineConfig::classic_stack()) !=
          avoids(p, basis_of({"231"})))
        ++bad;
      if (dfs_sortable(p, MachineConfig::queue_bypass()) !=
          avoids(p, basis_of({"321"})))
        ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("compose") {
  std::vector<MachineConfig> ms{MachineConfig::psb(), MachineConfig::queue_bypass()};
  CHECK_FALSE(compose(ms, P("3421")).sorted);
  std::vector<MachineConfig> just_psb{MachineConfig::psb()};
  for_each_perm(5, [&](const std::vector<int>& v) {
    Permutation p(v);
    CHECK(compose(just_psb, p).output == psb(p).output);
  });
  std::vector<MachineConfig> bub_psb{MachineConfig::bubble(), MachineConfig::psb()};
  CHECK_FALSE(compose(bub_psb, P("45213")).sorted);
  CHECK_THROWS_AS(compose({}, P("1")), std::invalid_argument);
}

TEST_CASE("psb invariants at desk scale") {
  // no new inversions
  for (int n = 1; n <= 8; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      Permutation out = psb(p).output;
      std::vector<int> pos_in(static_cast<size_t>(n) + 1), pos_out(static_cast<size_t>(n) + 1);
      for (int i = 1; i <= n; ++i) pos_in[static_cast<size_t>(p(i))] = i;
      for (int i = 1; i <= n; ++i) pos_out[static_cast<size_t>(out(i))] = i;
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
          if (pos_in[static_cast<size_t>(a)] < pos_in[static_cast<size_t>(b)] &&
              pos_out[static_cast<size_t>(a)] > pos_out[static_cast<size_t>(b)])
            ++bad;
    });
    CHECK(bad == 0);
  }

  // dominant-first subsequences of the output already sit in the input
  for (int n = 1; n <= 7; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      Permutation out = psb(p).output;
      for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i < n; ++i)
          if (mask & (1 << i)) sub.push_back(out(i + 1));
        bool dominant = true;
        for (size_t t = 1; t < sub.size(); ++t)
          if (sub[t] > sub[0]) dominant = false;
        if (dominant && !is_subsequence(sub, p)) ++bad;
      }
    });
    CHECK(bad == 0);
  }

  // left-to-right maxima survive; output ends with the maximum
  for (int n = 1; n <= 8; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      Permutation out = psb(p).output;
      if (out(n) != n) ++bad;
      std::set<int> out_ltr;
      for (auto [pos, val] : ltr_maxima(out)) out_ltr.insert(val);
      for (auto [pos, val] : ltr_maxima(p))
        if (!out_ltr.count(val)) ++bad;
    });
    CHECK(bad == 0);
  }
  for_each_perm(9, [&](const std::vector<int>& v) {
    REQUIRE(psb_sequence(v).back() == 9);
  });

  // output agrees with the run-decomposition description
  for (int n = 1; n <= 8; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      Permutation p(v);
      std::vector<int> predicted;
      for (const auto& run : run_decomposition(p).runs) {
        predicted.insert(predicted.end(), run.bypassers.begin(), run.bypassers.end());
        for (int value = run.maximum - run.run_length + 1; value <= run.maximum; ++value)
          predicted.push_back(value);
      }
      if (psb(p).output.entries() != predicted) ++bad;
    });
    CHECK(bad == 0);
  }

  // direct sums of sortable permutations stay sortable
  for (int total = 2; total <= 8; ++total) {
    for (int na = 1; na < total; ++na) {
      int nb = total - na;
      std::vector<Permutation> sa, sb;
      for_each_perm(na, [&](const std::vector<int>& v) {
        if (psb_sequence(v) == Permutation::identity(na).entries()) sa.emplace_back(v);
      });
      for_each_perm(nb, [&](const std::vector<int>& v) {
        if (psb_sequence(v) == Permutation::identity(nb).entries()) sb.emplace_back(v);
      });
      for (const auto& a : sa)
        for (const auto& b : sb)
          REQUIRE(psb(direct_sum(a, b)).sorted);
    }
  }
}

TEST_CASE("trace recording and replay") {
  auto outcome = psb(P("3127465"), true);
  REQUIRE(outcome.trace.has_value());
  const Trace& t = *outcome.trace;
  CHECK(t.steps.size() == 9);  // 7 entries, one pop-then-push, one final pop

  // replay: drive the recorded ops against fresh stacks
  std::vector<std::vector<int>> stacks(1);
  std::vector<int> out;
  for (const auto& s : t.steps) {
    auto& stack = stacks[static_cast<size_t>(s.stack_index - 1)];
    switch (s.op) {
      case StepOp::push:
        stack.push_back(s.value);
        break;
      case StepOp::pop:
        while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
        break;
      case StepOp::bypass:
        out.push_back(s.value);
        break;
    }
    // recorded snapshot (top-first) matches the live stack
    std::vector<int> snap(stack.rbegin(), stack.rend());
    REQUIRE(s.stacks.at(0) == snap);
    REQUIRE(s.out_len == static_cast<int>(out.size()));
    // pop-stack content stays increasing top-to-bottom and value-consecutive
    for (size_t i = 1; i < snap.size(); ++i) REQUIRE(snap[i] == snap[i - 1] + 1);
  }
  CHECK(out == t.output.entries());

  // JSON round-trip
  std::string js = trace_to_json(t);
  auto parsed = nlohmann::json::parse(js);
  CHECK(parsed["input"].get<std::vector<int>>() == t.input.entries());
  CHECK(parsed["machine"] == "psb");
  CHECK(parsed["sorted"] == true);
  CHECK(parsed["steps"].size() == t.steps.size());
  CHECK(nlohmann::json::parse(parsed.dump()) == parsed);
}

TEST_CASE("psbw") {
  auto r1 = psbw(std::vector<int>{1, 1, 0, 0}, 2);
  CHECK(r1.output == std::vector<int>{0, 0, 1, 1});
  CHECK(r1.sorted);
  auto r2 = psbw(std::vector<int>{1, 0, 1, 0}, 2);
  CHECK(r2.output == std::vector<int>{0, 0, 1, 1});
  CHECK(r2.sorted);
  auto r3 = psbw(std::vector<int>{0, 0, 1, 1}, 2);
  CHECK(r3.output == std::vector<int>{0, 0, 1, 1});
  CHECK_THROWS_AS(psbw(std::vector<int>{0, 1, 1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(psbw(std::vector<int>{0, 2, 2, 0}, 2), std::invalid_argument);

  // k = 1 on permutations matches the psb-sortability oracle
  for (int n = 1; n <= 7; ++n) {
    uint64_t bad = 0;
    for_each_perm(n, [&](const std::vector<int>& v) {
      std::vector<int> w(v.size());
      for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] - 1;
      bool s = psbw(w, 1).sorted;
      if (s != dfs_word_sortable(w)) ++bad;
      if (s != psb(Permutation(v)).sorted) ++bad;
    });
    CHECK(bad == 0);
  }
}

TEST_CASE("machine ids") {
  CHECK(parse_machine("psb").kind == MachineKind::psb);
  CHECK(parse_machine("psbp") == MachineConfig::parallel(2, true));
  CHECK(parse_machine("parallel:3:nobypass") == MachineConfig::parallel(3, false));
  CHECK(parse_machine("parallel:2").name() == "psbp");
  CHECK(MachineConfig::parallel(3, false).name() == "parallel:3:nobypass");
  CHECK_THROWS_AS(parse_machine("werid"), std::invalid_argument);
}
