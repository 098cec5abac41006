#include "popsort/machines.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace popsort {

namespace {

const char* op_name(StepOp op) {
  switch (op) {
    case StepOp::push: return "PUSH";
    case StepOp::pop: return "POP";
    case StepOp::bypass: return "BYPASS";
  }
  return "?";
}

// Collects trace steps when enabled; stacks are stored bottom-to-top and
// snapshotted top-first.
struct Recorder {
  bool enabled = false;
  std::vector<TraceStep> steps;

  void record(int input_index, int value, StepOp op, int stack_index,
              std::span<const std::vector<int>> stacks, int out_len) {
    if (!enabled) return;
    TraceStep s;
    s.input_index = input_index;
    s.value = value;
    s.op = op;
    s.stack_index = stack_index;
    for (const auto& st : stacks) s.stacks.emplace_back(st.rbegin(), st.rend());
    s.out_len = out_len;
    steps.push_back(std::move(s));
  }
};

SortOutcome finish(const Permutation& input, const MachineConfig& config,
                   std::vector<int> out, Recorder& rec) {
  SortOutcome o;
  o.output = Permutation(std::move(out));
  o.sorted = o.output.is_identity();
  if (rec.enabled) {
    Trace t;
    t.input = input;
    t.config = config;
    t.steps = std::move(rec.steps);
    t.output = o.output;
    o.trace = std::move(t);
  }
  return o;
}

}  // namespace

std::string MachineConfig::name() const {
  switch (kind) {
    case MachineKind::psb: return "psb";
    case MachineKind::classic_stack: return "stack";
    case MachineKind::queue_bypass: return "queue";
    case MachineKind::bubble: return "bubble";
    case MachineKind::popstack_plain: return "popstack";
    case MachineKind::parallel_pops:
      if (stacks == 2 && bypass) return "psbp";
      return "parallel:" + std::to_string(stacks) + (bypass ? "" : ":nobypass");
  }
  return "?";
}

MachineConfig parse_machine(std::string_view id) {
  if (id == "psb") return MachineConfig::psb();
  if (id == "stack") return MachineConfig::classic_stack();
  if (id == "queue") return MachineConfig::queue_bypass();
  if (id == "bubble") return MachineConfig::bubble();
  if (id == "popstack") return MachineConfig::popstack_plain();
  if (id == "psbp") return MachineConfig::parallel(2, true);
  if (id.substr(0, 9) == "parallel:") {
    std::string rest(id.substr(9));
    bool bypass = true;
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
      std::string flag = rest.substr(colon + 1);
      if (flag != "nobypass")
        throw std::invalid_argument("unknown machine id: " + std::string(id));
      bypass = false;
      rest = rest.substr(0, colon);
    }
    int k = std::stoi(rest);
    if (k < 1) throw std::invalid_argument("parallel machine needs k >= 1");
    return MachineConfig::parallel(k, bypass);
  }
  throw std::invalid_argument("unknown machine id: " + std::string(id));
}

std::vector<int> psb_sequence(std::span<const int> seq) {
  std::vector<int> stack, out;
  out.reserve(seq.size());
  for (int x : seq) {
    if (stack.empty() || x == stack.back() - 1) {
      stack.push_back(x);
    } else if (x < stack.back() - 1) {
      out.push_back(x);
    } else {
      while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
      stack.push_back(x);
    }
  }
  while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
  return out;
}

SortOutcome psb(const Permutation& p, bool record_trace) {
  Recorder rec{record_trace, {}};
  std::vector<std::vector<int>> st(1);
  auto& stack = st[0];
  std::vector<int> out;
  out.reserve(static_cast<size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) {
    int x = p(i);
    if (stack.empty() || x == stack.back() - 1) {
      stack.push_back(x);
      rec.record(i, x, StepOp::push, 1, st, static_cast<int>(out.size()));
    } else if (x < stack.back() - 1) {
      out.push_back(x);
      rec.record(i, x, StepOp::bypass, 1, st, static_cast<int>(out.size()));
    } else {
      while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
      rec.record(i, x, StepOp::pop, 1, st, static_cast<int>(out.size()));
      stack.push_back(x);
      rec.record(i, x, StepOp::push, 1, st, static_cast<int>(out.size()));
    }
  }
  if (!stack.empty()) {
    while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
    rec.record(0, 0, StepOp::pop, 1, st, static_cast<int>(out.size()));
  }
  return finish(p, MachineConfig::psb(), std::move(out), rec);
}

SortOutcome stacksort(const Permutation& p, bool record_trace) {
  Recorder rec{record_trace, {}};
  std::vector<std::vector<int>> st(1);
  auto& stack = st[0];
  std::vector<int> out;
  for (int i = 1; i <= p.size(); ++i) {
    int x = p(i);
    while (!stack.empty() && x > stack.back()) {
      out.push_back(stack.back());
      stack.pop_back();
      rec.record(i, x, StepOp::pop, 1, st, static_cast<int>(out.size()));
    }
    stack.push_back(x);
    rec.record(i, x, StepOp::push, 1, st, static_cast<int>(out.size()));
  }
  while (!stack.empty()) {
    out.push_back(stack.back());
    stack.pop_back();
    rec.record(0, 0, StepOp::pop, 1, st, static_cast<int>(out.size()));
  }
  return finish(p, MachineConfig::classic_stack(), std::move(out), rec);
}

SortOutcome queuesort(const Permutation& p, bool record_trace) {
  Recorder rec{record_trace, {}};
  std::deque<int> queue;
  std::vector<int> out;
  auto snapshot = [&] {
    // queue shown front-first (exit end first) in the single container slot
    return std::vector<std::vector<int>>{std::vector<int>(queue.begin(), queue.end())};
  };
  for (int i = 1; i <= p.size(); ++i) {
    int x = p(i);
    while (true) {
      if (queue.empty() || x > queue.back()) {
        queue.push_back(x);
        rec.record(i, x, StepOp::push, 1, snapshot(), static_cast<int>(out.size()));
        break;
      }
      if (queue.front() < x) {
        out.push_back(queue.front());
        queue.pop_front();
        rec.record(i, x, StepOp::pop, 1, snapshot(), static_cast<int>(out.size()));
      } else {
        out.push_back(x);
        rec.record(i, x, StepOp::bypass, 1, snapshot(), static_cast<int>(out.size()));
        break;
      }
    }
  }
  while (!queue.empty()) {
    out.push_back(queue.front());
    queue.pop_front();
    rec.record(0, 0, StepOp::pop, 1, snapshot(), static_cast<int>(out.size()));
  }
  return finish(p, MachineConfig::queue_bypass(), std::move(out), rec);
}

SortOutcome bubblesort(const Permutation& p, bool record_trace) {
  Recorder rec{record_trace, {}};
  std::vector<int> a = p.entries();
  for (size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i] > a[i + 1]) std::swap(a[i], a[i + 1]);
  return finish(p, MachineConfig::bubble(), std::move(a), rec);
}

SortOutcome popstack_plain(const Permutation& p, bool record_trace) {
  Recorder rec{record_trace, {}};
  std::vector<std::vector<int>> st(1);
  auto& stack = st[0];
  std::vector<int> out;
  for (int i = 1; i <= p.size(); ++i) {
    int x = p(i);
    if (!stack.empty() && x > stack.back()) {
      while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
      rec.record(i, x, StepOp::pop, 1, st, static_cast<int>(out.size()));
    }
    stack.push_back(x);
    rec.record(i, x, StepOp::push, 1, st, static_cast<int>(out.size()));
  }
  while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
  rec.record(0, 0, StepOp::pop, 1, st, static_cast<int>(out.size()));
  return finish(p, MachineConfig::popstack_plain(), std::move(out), rec);
}

SortOutcome psbp(const Permutation& p, bool record_trace) {
  Recorder rec{record_trace, {}};
  std::vector<std::vector<int>> st(2);
  auto& s1 = st[0];
  auto& s2 = st[1];
  std::vector<int> out;
  auto pop_all = [&](std::vector<int>& s) {
    while (!s.empty()) out.push_back(s.back()), s.pop_back();
  };
  for (int i = 1; i <= p.size(); ++i) {
    int x = p(i);
    if (!s1.empty() && x == s1.back() - 1) {
      s1.push_back(x);
      rec.record(i, x, StepOp::push, 1, st, static_cast<int>(out.size()));
    } else if (!s2.empty() && x == s2.back() - 1) {
      s2.push_back(x);
      rec.record(i, x, StepOp::push, 2, st, static_cast<int>(out.size()));
    } else if (s1.empty()) {
      s1.push_back(x);
      rec.record(i, x, StepOp::push, 1, st, static_cast<int>(out.size()));
    } else if (s2.empty()) {
      s2.push_back(x);
      rec.record(i, x, StepOp::push, 2, st, static_cast<int>(out.size()));
    } else if (x < std::min(s1.back() - 1, s2.back() - 1)) {
      // x can extend neither stack, now or later
      out.push_back(x);
      rec.record(i, x, StepOp::bypass, 0, st, static_cast<int>(out.size()));
    } else {
      int j = s1.back() < s2.back() ? 1 : 2;
      auto& s = j == 1 ? s1 : s2;
      pop_all(s);
      rec.record(i, x, StepOp::pop, j, st, static_cast<int>(out.size()));
      s.push_back(x);
      rec.record(i, x, StepOp::push, j, st, static_cast<int>(out.size()));
    }
  }
  // final drain, smaller top first
  if (s1.empty()) {
    pop_all(s2);
    rec.record(0, 0, StepOp::pop, 2, st, static_cast<int>(out.size()));
  } else if (s2.empty()) {
    pop_all(s1);
    rec.record(0, 0, StepOp::pop, 1, st, static_cast<int>(out.size()));
  } else if (s1.back() < s2.back()) {
    pop_all(s1);
    rec.record(0, 0, StepOp::pop, 1, st, static_cast<int>(out.size()));
    pop_all(s2);
    rec.record(0, 0, StepOp::pop, 2, st, static_cast<int>(out.size()));
  } else {
    pop_all(s2);
    rec.record(0, 0, StepOp::pop, 2, st, static_cast<int>(out.size()));
    pop_all(s1);
    rec.record(0, 0, StepOp::pop, 1, st, static_cast<int>(out.size()));
  }
  return finish(p, MachineConfig::parallel(2, true), std::move(out), rec);
}

SortOutcome greedy_parallel(const Permutation& p, int k, bool bypass,
                            bool record_trace) {
  if (k < 1) throw std::invalid_argument("greedy_parallel needs k >= 1");
  Recorder rec{record_trace, {}};
  const int n = p.size();
  std::vector<std::vector<int>> stacks(static_cast<size_t>(k));
  std::vector<int> out;
  int i = 1, next = 1;
  bool failed = false;
  auto snapshot_len = [&] { return static_cast<int>(out.size()); };
  while (static_cast<int>(out.size()) < n) {
    if (bypass && i <= n && p(i) == next) {
      out.push_back(p(i));
      rec.record(i, p(i), StepOp::bypass, 0, stacks, snapshot_len());
      ++i;
      ++next;
      continue;
    }
    int pop_j = -1;
    for (int j = 0; j < k; ++j)
      if (!stacks[static_cast<size_t>(j)].empty() &&
          stacks[static_cast<size_t>(j)].back() == next) {
        pop_j = j;
        break;
      }
    if (pop_j >= 0) {
      auto& s = stacks[static_cast<size_t>(pop_j)];
      while (!s.empty()) out.push_back(s.back()), s.pop_back();
      next = out.back() + 1;
      rec.record(0, 0, StepOp::pop, pop_j + 1, stacks, snapshot_len());
      continue;
    }
    if (i <= n) {
      int x = p(i);
      int push_j = -1;
      for (int j = 0; j < k; ++j)
        if (!stacks[static_cast<size_t>(j)].empty() &&
            x == stacks[static_cast<size_t>(j)].back() - 1) {
          push_j = j;
          break;
        }
      if (push_j < 0) {
        for (int j = 0; j < k; ++j)
          if (stacks[static_cast<size_t>(j)].empty()) {
            push_j = j;
            break;
          }
      }
      if (push_j >= 0) {
        stacks[static_cast<size_t>(push_j)].push_back(x);
        rec.record(i, x, StepOp::push, push_j + 1, stacks, snapshot_len());
        ++i;
        continue;
      }
    }
    failed = true;
    break;
  }
  if (failed) {
    // best-effort completion so the outcome is still a permutation: drain
    // stacks by smaller top first, then pass the rest of the input through
    while (true) {
      int best = -1;
      for (int j = 0; j < k; ++j) {
        auto& s = stacks[static_cast<size_t>(j)];
        if (!s.empty() && (best < 0 || s.back() < stacks[static_cast<size_t>(best)].back()))
          best = j;
      }
      if (best < 0) break;
      auto& s = stacks[static_cast<size_t>(best)];
      while (!s.empty()) out.push_back(s.back()), s.pop_back();
    }
    for (; i <= n; ++i) out.push_back(p(i));
  }
  auto outcome = finish(p, MachineConfig::parallel(k, bypass), std::move(out), rec);
  if (failed) outcome.sorted = false;
  return outcome;
}

SortOutcome run_machine(const MachineConfig& config, const Permutation& p,
                        bool record_trace) {
  switch (config.kind) {
    case MachineKind::psb: return psb(p, record_trace);
    case MachineKind::classic_stack: return stacksort(p, record_trace);
    case MachineKind::queue_bypass: return queuesort(p, record_trace);
    case MachineKind::bubble: return bubblesort(p, record_trace);
    case MachineKind::popstack_plain: return popstack_plain(p, record_trace);
    case MachineKind::parallel_pops:
      if (config.stacks == 2 && config.bypass) return psbp(p, record_trace);
      return greedy_parallel(p, config.stacks, config.bypass, record_trace);
  }
  throw std::invalid_argument("bad machine config");
}

SortOutcome compose(std::span<const MachineConfig> machines, const Permutation& p) {
  if (machines.empty()) throw std::invalid_argument("compose: empty machine list");
  Permutation cur = p;
  SortOutcome last;
  for (const auto& m : machines) {
    last = run_machine(m, cur);
    cur = last.output;
  }
  last.trace.reset();
  return last;
}

namespace {

// Success-only DFS for k pop stacks in parallel. Restricting pushes to
// run-extending values and pops/bypasses to next-needed values loses no
// sortable inputs: in any sorting run a pop emits an increasing consecutive
// block, so the pushes between two pops descend by exactly one.
class ParallelDfs {
 public:
  ParallelDfs(const Permutation& p, int k, bool bypass)
      : p_(p.entries()), n_(p.size()), k_(k), bypass_(bypass) {
    if (n_ > 15 || k_ > 6)
      throw std::invalid_argument("dfs_sortable supports n <= 15, k <= 6");
  }

  bool run() { return rec(0, 1, {}); }

 private:
  using Stacks = std::vector<std::pair<int, int>>;  // (top, bottom), sorted

  uint64_t key(int i, int next, const Stacks& st) const {
    uint64_t h = static_cast<uint64_t>(i) | (static_cast<uint64_t>(next) << 4);
    int shift = 8;
    for (auto [t, b] : st) {
      h |= static_cast<uint64_t>(t) << shift;
      h |= static_cast<uint64_t>(b) << (shift + 4);
      shift += 8;
    }
    return h;
  }

  bool rec(int i, int next, Stacks st) {
    if (next == n_ + 1) return true;
    std::sort(st.begin(), st.end());
    uint64_t k0 = key(i, next, st);
    if (dead_.count(k0)) return false;
    for (size_t j = 0; j < st.size(); ++j) {
      if (st[j].first == next) {
        Stacks rest = st;
        int bottom = rest[j].second;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
        if (rec(i, bottom + 1, std::move(rest))) return true;
      }
    }
    if (i < n_) {
      int x = p_[static_cast<size_t>(i)];
      if (bypass_ && x == next) {
        if (rec(i + 1, next + 1, st)) return true;
      }
      for (size_t j = 0; j < st.size(); ++j) {
        if (x == st[j].first - 1) {
          Stacks ns = st;
          ns[j].first = x;
          if (rec(i + 1, next, std::move(ns))) return true;
        }
      }
      if (static_cast<int>(st.size()) < k_) {
        Stacks ns = st;
        ns.emplace_back(x, x);
        if (rec(i + 1, next, std::move(ns))) return true;
      }
    }
    dead_.insert(k0);
    return false;
  }

  std::vector<int> p_;
  int n_;
  int k_;
  bool bypass_;
  std::unordered_set<uint64_t> dead_;
};

// Classic stack: pops release one element, so in a sorting run the stack is
// increasing top-to-bottom; pushes above a smaller top are dead ends.
bool dfs_classic_stack(const Permutation& p) {
  const int n = p.size();
  if (n > 13) throw std::invalid_argument("dfs_sortable(stack) supports n <= 13");
  std::unordered_set<uint64_t> dead;
  std::function<bool(int, int, std::vector<int>&)> rec =
      [&](int i, int next, std::vector<int>& stack) -> bool {
    if (next == n + 1) return true;
    uint64_t h = static_cast<uint64_t>(i) | (static_cast<uint64_t>(next) << 4);
    int shift = 8;
    for (int v : stack) h |= static_cast<uint64_t>(v) << shift, shift += 4;
    if (dead.count(h)) return false;
    if (!stack.empty() && stack.back() == next) {
      int v = stack.back();
      stack.pop_back();
      bool ok = rec(i, next + 1, stack);
      stack.push_back(v);
      if (ok) return true;
    }
    if (i < n) {
      int x = p(i + 1);
      if (stack.empty() || x < stack.back()) {
        stack.push_back(x);
        bool ok = rec(i + 1, next, stack);
        stack.pop_back();
        if (ok) return true;
      }
    }
    dead.insert(h);
    return false;
  };
  std::vector<int> stack;
  return rec(0, 1, stack);
}

// Queue with bypass: the queue must stay increasing front-to-back.
bool dfs_queue_bypass(const Permutation& p) {
  const int n = p.size();
  if (n > 13) throw std::invalid_argument("dfs_sortable(queue) supports n <= 13");
  std::unordered_set<uint64_t> dead;
  std::function<bool(int, int, std::deque<int>&)> rec =
      [&](int i, int next, std::deque<int>& q) -> bool {
    if (next == n + 1) return true;
    uint64_t h = static_cast<uint64_t>(i) | (static_cast<uint64_t>(next) << 4);
    int shift = 8;
    for (int v : q) h |= static_cast<uint64_t>(v) << shift, shift += 4;
    if (dead.count(h)) return false;
    if (!q.empty() && q.front() == next) {
      int v = q.front();
      q.pop_front();
      bool ok = rec(i, next + 1, q);
      q.push_front(v);
      if (ok) return true;
    }
    if (i < n) {
      int x = p(i + 1);
      if (x == next) {
        if (rec(i + 1, next + 1, q)) return true;
      }
      if (q.empty() || x > q.back()) {
        q.push_back(x);
        bool ok = rec(i + 1, next, q);
        q.pop_back();
        if (ok) return true;
      }
    }
    dead.insert(h);
    return false;
  };
  std::deque<int> q;
  return rec(0, 1, q);
}

}  // namespace

bool dfs_sortable(const Permutation& p, const MachineConfig& config) {
  switch (config.kind) {
    case MachineKind::psb: return ParallelDfs(p, 1, true).run();
    case MachineKind::popstack_plain: return ParallelDfs(p, 1, false).run();
    case MachineKind::parallel_pops:
      return ParallelDfs(p, config.stacks, config.bypass).run();
    case MachineKind::classic_stack: return dfs_classic_stack(p);
    case MachineKind::queue_bypass: return dfs_queue_bypass(p);
    case MachineKind::bubble: return bubblesort(p).sorted;
  }
  throw std::invalid_argument("bad machine config");
}

WordSortOutcome psbw(std::span<const int> word, int k) {
  if (k < 1) throw std::invalid_argument("psbw needs k >= 1");
  // validate k-regularity over alphabet {0..n-1}
  if (word.size() % static_cast<size_t>(k) != 0)
    throw std::invalid_argument("psbw: word length not divisible by k");
  const int nletters = static_cast<int>(word.size()) / k;
  std::vector<int> count(static_cast<size_t>(nletters), 0);
  for (int x : word) {
    if (x < 0 || x >= nletters)
      throw std::invalid_argument("psbw: letter " + std::to_string(x) +
                                  " outside 0.." + std::to_string(nletters - 1));
    ++count[static_cast<size_t>(x)];
  }
  for (int c : count)
    if (c != k) throw std::invalid_argument("psbw: input is not k-regular");

  std::vector<int> stack, out;
  int j = 0;
  const int kn = static_cast<int>(word.size());
  for (int i = 1; i <= kn; ++i) {
    int x = word[static_cast<size_t>(i - 1)];
    if (x <= j / k) {
      out.push_back(x);
      ++j;
    } else if (stack.empty() || x <= stack.back()) {
      stack.push_back(x);
    } else {
      while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
      j = i - 1;
      if (x <= j / k) {
        out.push_back(x);
        ++j;
      } else {
        stack.push_back(x);
      }
    }
  }
  while (!stack.empty()) out.push_back(stack.back()), stack.pop_back();
  WordSortOutcome o;
  o.sorted = std::is_sorted(out.begin(), out.end());
  o.output = std::move(out);
  return o;
}

bool dfs_word_sortable(std::span<const int> word) {
  const int n = static_cast<int>(word.size());
  if (n > 12) throw std::invalid_argument("dfs_word_sortable supports length <= 12");
  std::vector<int> target(word.begin(), word.end());
  std::sort(target.begin(), target.end());
  std::unordered_set<uint64_t> dead;
  std::function<bool(int, int, std::vector<int>&)> rec =
      [&](int i, int o, std::vector<int>& stack) -> bool {
    if (o == n) return true;
    uint64_t h = static_cast<uint64_t>(i) | (static_cast<uint64_t>(o) << 5);
    int shift = 10;
    for (int v : stack) h |= static_cast<uint64_t>(v + 1) << shift, shift += 4;
    if (dead.count(h)) return false;
    // pop: whole stack top..bottom must match the next needed letters
    if (!stack.empty()) {
      bool match = true;
      for (size_t t = 0; t < stack.size(); ++t) {
        if (stack[stack.size() - 1 - t] != target[static_cast<size_t>(o) + t]) {
          match = false;
          break;
        }
      }
      if (match) {
        std::vector<int> empty;
        if (rec(i, o + static_cast<int>(stack.size()), empty)) return true;
      }
    }
    if (i < n) {
      int x = word[static_cast<size_t>(i)];
      if (x == target[static_cast<size_t>(o)]) {
        if (rec(i + 1, o + 1, stack)) return true;
      }
      if (stack.empty() || x <= stack.back()) {
        stack.push_back(x);
        bool ok = rec(i + 1, o, stack);
        stack.pop_back();
        if (ok) return true;
      }
    }
    dead.insert(h);
    return false;
  };
  std::vector<int> stack;
  return rec(0, 0, stack);
}

std::string trace_to_json(const Trace& trace) {
  nlohmann::json j;
  j["input"] = trace.input.entries();
  j["machine"] = trace.config.name();
  j["steps"] = nlohmann::json::array();
  for (const auto& s : trace.steps) {
    nlohmann::json js;
    js["i"] = s.input_index;
    js["value"] = s.value;
    std::string op = op_name(s.op);
    if (s.op != StepOp::bypass) op += "_" + std::to_string(s.stack_index);
    js["op"] = op;
    js["stacks"] = s.stacks;
    js["out_len"] = s.out_len;
    j["steps"].push_back(std::move(js));
  }
  j["output"] = trace.output.entries();
  j["sorted"] = trace.output.is_identity();
  return j.dump();
}

}  // namespace popsort
