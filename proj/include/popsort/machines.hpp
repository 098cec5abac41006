#pragma once

// Sorting devices: the pop stack with bypass (PSB), its two-stack parallel
// variant (PSBP), the greedy k-stack process, classical comparators, machine
// composition, the word sorter PSBW(k), and nondeterministic DFS oracles
// that decide device sortability independently of any greedy strategy.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "popsort/permutation.hpp"

namespace popsort {

enum class MachineKind {
  psb,             // one pop stack with bypass, Algorithm PSB
  classic_stack,   // Stacksort
  queue_bypass,    // Queuesort
  bubble,          // one Bubblesort pass
  popstack_plain,  // one pop stack, no bypass
  parallel_pops,   // k pop stacks in parallel, optional bypass
};

struct MachineConfig {
  MachineKind kind = MachineKind::psb;
  int stacks = 1;      // parallel_pops only
  bool bypass = true;  // parallel_pops only

  static MachineConfig psb() { return {MachineKind::psb, 1, true}; }
  static MachineConfig classic_stack() { return {MachineKind::classic_stack, 1, false}; }
  static MachineConfig queue_bypass() { return {MachineKind::queue_bypass, 1, true}; }
  static MachineConfig bubble() { return {MachineKind::bubble, 1, false}; }
  static MachineConfig popstack_plain() { return {MachineKind::popstack_plain, 1, false}; }
  static MachineConfig parallel(int k, bool bypass = true) {
    return {MachineKind::parallel_pops, k, bypass};
  }

  std::string name() const;

  friend bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

// Parses machine ids as printed by MachineConfig::name(): "psb", "stack",
// "queue", "bubble", "popstack", "psbp", "parallel:<k>[:nobypass]".
MachineConfig parse_machine(std::string_view id);

enum class StepOp { push, pop, bypass };

struct TraceStep {
  int input_index = 0;  // 1-based; 0 for the final drain
  int value = 0;        // input value acted on; 0 for the final drain
  StepOp op = StepOp::push;
  int stack_index = 1;  // 1-based; meaningful for push/pop
  std::vector<std::vector<int>> stacks;  // post-state, each listed top-first
  int out_len = 0;
};

struct Trace {
  Permutation input;
  MachineConfig config;
  std::vector<TraceStep> steps;
  Permutation output;
};

struct SortOutcome {
  Permutation output;
  bool sorted = false;
  std::optional<Trace> trace;
};

// Algorithm PSB: push when the stack is empty or the entry is one less than
// the top; bypass when strictly smaller than top-1; otherwise pop the whole
// stack and push. Final pop at end of input.
SortOutcome psb(const Permutation& p, bool record_trace = false);

// PSB on an arbitrary sequence of distinct integers (original values; no
// rescaling). The preimage recursion depends on this distinction.
std::vector<int> psb_sequence(std::span<const int> seq);

SortOutcome stacksort(const Permutation& p, bool record_trace = false);
SortOutcome queuesort(const Permutation& p, bool record_trace = false);
SortOutcome bubblesort(const Permutation& p, bool record_trace = false);
SortOutcome popstack_plain(const Permutation& p, bool record_trace = false);

// Two pop stacks in parallel with bypass. An entry is pushed when it extends
// a stack's run or a stack is empty; it bypasses only when it can extend
// neither stack now; otherwise the smaller-topped stack is flushed to make
// room. Final drain pops by smaller top first.
SortOutcome psbp(const Permutation& p, bool record_trace = false);

// The five-step priority process for k pop stacks in parallel:
// bypass-if-next-needed, pop-if-top-needed, stack-on-consecutive-top,
// open-empty-stack, else fail. With bypass = false step one is skipped.
// Failure is a value: the outcome carries a best-effort completion of the
// output (stacks drained smaller-top-first, then the rest of the input) and
// sorted = false.
SortOutcome greedy_parallel(const Permutation& p, int k, bool bypass,
                            bool record_trace = false);

// Runs the deterministic algorithm associated with a machine config.
// parallel_pops with k = 2 and bypass uses PSBP; other parallel configs use
// the greedy process.
SortOutcome run_machine(const MachineConfig& config, const Permutation& p,
                        bool record_trace = false);

// Feeds the output of machine i into machine i+1; the first listed machine
// runs first.
SortOutcome compose(std::span<const MachineConfig> machines, const Permutation& p);

// True iff some sequence of machine operations sorts p on the given device.
// Depth-first search over reachable states with memoization; independent of
// the greedy algorithms above.
bool dfs_sortable(const Permutation& p, const MachineConfig& config);

struct WordSortOutcome {
  std::vector<int> output;
  bool sorted = false;  // weakly increasing
};

// Algorithm PSBW(k) on a k-regular word over {0..n-1} (each letter exactly k
// times). Empty-stack top acts as +infinity so the push branch fires. Throws
// std::invalid_argument on non-k-regular input.
WordSortOutcome psbw(std::span<const int> word, int k);

// DFS oracle for one pop stack with bypass acting on words; sorted output is
// the weakly increasing rearrangement.
bool dfs_word_sortable(std::span<const int> word);

// JSON for a trace: {input, machine, steps:[{i, value, op, stacks, out_len}],
// output, sorted}; stack contents listed top-first.
std::string trace_to_json(const Trace& trace);

}  // namespace popsort
