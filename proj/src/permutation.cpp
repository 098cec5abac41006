#include "popsort/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace popsort {

namespace {

[[noreturn]] void parse_fail(std::string_view what, std::string_view token) {
  std::ostringstream os;
  os << "permutation parse error: " << what << " '" << token << "'";
  throw std::invalid_argument(os.str());
}

}  // namespace

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
  const int n = static_cast<int>(entries_.size());
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (int v : entries_) {
    if (v < 1 || v > n)
      throw std::invalid_argument("permutation entry " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(n));
    if (seen[static_cast<size_t>(v)])
      throw std::invalid_argument("duplicate permutation entry " + std::to_string(v));
    seen[static_cast<size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> e(static_cast<size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  return Permutation(std::move(e));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (entries_[static_cast<size_t>(i)] != i + 1) return false;
  return true;
}

std::string Permutation::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ' ';
    os << entries_[i];
  }
  return os.str();
}

std::string Permutation::compact() const {
  if (size() > 9) throw std::invalid_argument("compact form requires n <= 9");
  std::string s;
  for (int v : entries_) s += static_cast<char>('0' + v);
  return s;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));

  std::vector<int> entries;
  auto parse_int = [](const std::string& tok) {
    if (tok.empty()) parse_fail("empty token", tok);
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        parse_fail("not a positive integer", tok);
    long v = std::stol(tok);
    if (v < 1 || v > 1'000'000) parse_fail("value out of range", tok);
    return static_cast<int>(v);
  };

  if (tokens.size() == 1 && tokens[0].size() > 1) {
    // single token of digits: compact form, one entry per digit (n <= 9)
    const std::string& tok = tokens[0];
    for (char c : tok) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        parse_fail("not a positive integer", tok);
      if (c == '0') parse_fail("digit 0 in compact form", tok);
      entries.push_back(c - '0');
    }
    if (entries.size() > 9) parse_fail("compact form longer than 9", tok);
  } else {
    for (const auto& tok : tokens) entries.push_back(parse_int(tok));
  }

  const int n = static_cast<int>(entries.size());
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (size_t i = 0; i < entries.size(); ++i) {
    int v = entries[i];
    std::string tok = tokens.size() == entries.size() ? tokens[i] : std::to_string(v);
    if (v > n) parse_fail("gap in 1..n, value too large:", tok);
    if (seen[static_cast<size_t>(v)]) parse_fail("duplicate value", tok);
    seen[static_cast<size_t>(v)] = 1;
  }
  return Permutation(std::move(entries));
}

Permutation flatten(std::span<const int> seq) {
  std::vector<int> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  out.reserve(seq.size());
  for (int v : seq) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    out.push_back(static_cast<int>(it - sorted.begin()) + 1);
  }
  return Permutation(std::move(out));
}

BarredPattern::BarredPattern(Pattern p, std::set<int> b)
    : pattern(std::move(p)), barred(std::move(b)) {
  for (int pos : barred)
    if (pos < 1 || pos > pattern.size())
      throw std::invalid_argument("barred position " + std::to_string(pos) +
                                  " out of range");
  if (static_cast<int>(barred.size()) >= pattern.size() && pattern.size() > 0)
    throw std::invalid_argument("barred pattern needs at least one unbarred entry");
}

Pattern BarredPattern::unbarred_part() const {
  std::vector<int> vals;
  for (int i = 1; i <= pattern.size(); ++i)
    if (!barred.count(i)) vals.push_back(pattern(i));
  return flatten(vals);
}

std::string BarredPattern::str() const {
  if (pattern.size() <= 9) {
    std::string s;
    for (int i = 1; i <= pattern.size(); ++i) {
      if (barred.count(i)) s += '!';
      s += static_cast<char>('0' + pattern(i));
    }
    return s;
  }
  std::ostringstream os;
  for (int i = 1; i <= pattern.size(); ++i) {
    if (i > 1) os << ' ';
    if (barred.count(i)) os << '!';
    os << pattern(i);
  }
  return os.str();
}

BarredPattern parse_barred_pattern(std::string_view text) {
  std::vector<int> vals;
  std::set<int> barred;
  std::vector<std::string> toks;
  {
    std::string cur;
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
  }
  auto push_entry = [&](int v, bool bar) {
    vals.push_back(v);
    if (bar) barred.insert(static_cast<int>(vals.size()));
  };
  bool compact = toks.size() == 1 &&
                 std::count_if(toks[0].begin(), toks[0].end(), [](char c) {
                   return std::isdigit(static_cast<unsigned char>(c));
                 }) > 1;
  if (compact) {
    const std::string& t = toks[0];
    bool bar = false;
    for (char c : t) {
      if (c == '!') {
        bar = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
        throw std::invalid_argument("bad pattern token: " + std::string(text));
      push_entry(c - '0', bar);
      bar = false;
    }
    if (bar) throw std::invalid_argument("trailing '!' in pattern: " + std::string(text));
  } else {
    for (auto& t : toks) {
      bool bar = !t.empty() && t.front() == '!';
      std::string num = bar ? t.substr(1) : t;
      if (num.empty()) throw std::invalid_argument("bad pattern token: " + t);
      for (char c : num)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw std::invalid_argument("bad pattern token: " + t);
      push_entry(std::stoi(num), bar);
    }
  }
  return BarredPattern(Permutation(std::move(vals)), std::move(barred));
}

namespace {

// Backtracking containment with value-window pruning. `pinned` optionally
// fixes the 0-based position in p of selected pattern slots (-1 = free);
// used for barred-pattern extension checks.
bool embeds(std::span<const int> p, std::span<const int> q,
            std::span<const int> pinned) {
  const int n = static_cast<int>(p.size());
  const int k = static_cast<int>(q.size());
  if (k > n) return false;
  std::vector<int> chosen(static_cast<size_t>(k), -1);
  std::function<bool(int, int)> bt = [&](int slot, int from) -> bool {
    if (slot == k) return true;
    // value window from already-chosen slots
    int lo = 0, hi = n + 1;
    for (int s = 0; s < slot; ++s) {
      int pv = p[static_cast<size_t>(chosen[static_cast<size_t>(s)])];
      if (q[static_cast<size_t>(s)] < q[static_cast<size_t>(slot)])
        lo = std::max(lo, pv);
      else
        hi = std::min(hi, pv);
    }
    if (!pinned.empty() && pinned[static_cast<size_t>(slot)] >= 0) {
      int i = pinned[static_cast<size_t>(slot)];
      if (i < from) return false;
      int v = p[static_cast<size_t>(i)];
      if (v <= lo || v >= hi) return false;
      chosen[static_cast<size_t>(slot)] = i;
      if (bt(slot + 1, i + 1)) return true;
      chosen[static_cast<size_t>(slot)] = -1;
      return false;
    }
    for (int i = from; i <= n - (k - slot); ++i) {
      int v = p[static_cast<size_t>(i)];
      if (v <= lo || v >= hi) continue;
      chosen[static_cast<size_t>(slot)] = i;
      if (bt(slot + 1, i + 1)) return true;
      chosen[static_cast<size_t>(slot)] = -1;
    }
    return false;
  };
  return bt(0, 0);
}

// Enumerates every occurrence (0-based position vectors) of pattern q in p,
// invoking f; f returning false stops the enumeration early.
void for_each_occurrence(std::span<const int> p, std::span<const int> q,
                         const std::function<bool(const std::vector<int>&)>& f) {
  const int n = static_cast<int>(p.size());
  const int k = static_cast<int>(q.size());
  if (k > n) return;
  std::vector<int> chosen(static_cast<size_t>(k), -1);
  bool stop = false;
  std::function<void(int, int)> bt = [&](int slot, int from) {
    if (stop) return;
    if (slot == k) {
      if (!f(chosen)) stop = true;
      return;
    }
    int lo = 0, hi = n + 1;
    for (int s = 0; s < slot; ++s) {
      int pv = p[static_cast<size_t>(chosen[static_cast<size_t>(s)])];
      if (q[static_cast<size_t>(s)] < q[static_cast<size_t>(slot)])
        lo = std::max(lo, pv);
      else
        hi = std::min(hi, pv);
    }
    for (int i = from; i <= n - (k - slot) && !stop; ++i) {
      int v = p[static_cast<size_t>(i)];
      if (v <= lo || v >= hi) continue;
      chosen[static_cast<size_t>(slot)] = i;
      bt(slot + 1, i + 1);
      chosen[static_cast<size_t>(slot)] = -1;
    }
  };
  bt(0, 0);
}

}  // namespace

bool contains(const Permutation& p, const Pattern& q) {
  if (q.size() == 0) return true;
  return embeds(p.entries(), q.entries(), {});
}

bool contains_barred(const Permutation& p, const BarredPattern& q) {
  if (q.barred.empty()) return contains(p, q.pattern);
  const Pattern sub = q.unbarred_part();
  if (sub.size() == 0) return false;  // unbarred part occurs trivially and extends iff q occurs
  // slots of the unbarred entries inside the full pattern
  std::vector<int> unbarred_slots;
  for (int i = 1; i <= q.pattern.size(); ++i)
    if (!q.barred.count(i)) unbarred_slots.push_back(i - 1);

  bool found_unextendable = false;
  for_each_occurrence(
      p.entries(), sub.entries(), [&](const std::vector<int>& occ) {
        std::vector<int> pinned(static_cast<size_t>(q.pattern.size()), -1);
        for (size_t t = 0; t < occ.size(); ++t)
          pinned[static_cast<size_t>(unbarred_slots[t])] = occ[t];
        if (!embeds(p.entries(), q.pattern.entries(), pinned)) {
          found_unextendable = true;
          return false;  // stop
        }
        return true;
      });
  return found_unextendable;
}

bool avoids(const Permutation& p, std::span<const Pattern> patterns) {
  for (const auto& q : patterns)
    if (contains(p, q)) return false;
  return true;
}

bool avoids(const Permutation& p, const PatternBasis& basis) {
  if (!avoids(p, basis.classical)) return false;
  for (const auto& q : basis.barred)
    if (contains_barred(p, q)) return false;
  return true;
}

std::vector<std::pair<int, int>> ltr_maxima_seq(std::span<const int> seq) {
  std::vector<std::pair<int, int>> out;
  int best = 0;
  bool first = true;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (first || seq[i] > best) {
      out.emplace_back(static_cast<int>(i) + 1, seq[i]);
      best = seq[i];
      first = false;
    }
  }
  return out;
}

std::vector<std::pair<int, int>> ltr_maxima(const Permutation& p) {
  return ltr_maxima_seq(p.entries());
}

Permutation direct_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> e = a.entries();
  e.reserve(static_cast<size_t>(a.size() + b.size()));
  for (int v : b) e.push_back(v + a.size());
  return Permutation(std::move(e));
}

Permutation reverse(const Permutation& p) {
  std::vector<int> e(p.entries().rbegin(), p.entries().rend());
  return Permutation(std::move(e));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> e(static_cast<size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) e[static_cast<size_t>(p(i) - 1)] = i;
  return Permutation(std::move(e));
}

std::vector<std::vector<int>> shuffles(std::span<const int> a,
                                       std::span<const int> b) {
  for (int x : a)
    for (int y : b)
      if (x == y)
        throw std::invalid_argument("shuffles: overlapping value " + std::to_string(x));
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  cur.reserve(a.size() + b.size());
  std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
    if (i == a.size() && j == b.size()) {
      out.push_back(cur);
      return;
    }
    if (i < a.size()) {
      cur.push_back(a[i]);
      rec(i + 1, j);
      cur.pop_back();
    }
    if (j < b.size()) {
      cur.push_back(b[j]);
      rec(i, j + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

bool is_simple(const Permutation& p) {
  const int n = p.size();
  if (n <= 2) return true;
  const auto& e = p.entries();
  for (int i = 0; i < n; ++i) {
    int mn = e[static_cast<size_t>(i)], mx = mn;
    for (int j = i + 1; j < n; ++j) {
      mn = std::min(mn, e[static_cast<size_t>(j)]);
      mx = std::max(mx, e[static_cast<size_t>(j)]);
      int len = j - i + 1;
      if (len == n) continue;
      if (mx - mn + 1 == len) return false;
    }
  }
  return true;
}

RunDecomposition run_decomposition(const Permutation& p) {
  RunDecomposition rd;
  const auto& e = p.entries();
  const auto maxima = ltr_maxima(p);
  const int n = p.size();
  std::vector<int> pos_of(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) pos_of[static_cast<size_t>(e[static_cast<size_t>(i - 1)])] = i;

  for (size_t t = 0; t < maxima.size(); ++t) {
    auto [mp, mv] = maxima[t];
    int limit = t + 1 < maxima.size() ? maxima[t + 1].first : n + 1;
    Run run;
    run.maximum = mv;
    // longest chain mv, mv-1, ... with strictly increasing positions, all
    // before the next maximum
    int j = 0, prev_pos = mp;
    while (mv - j - 1 >= 1) {
      int q = pos_of[static_cast<size_t>(mv - j - 1)];
      if (q > prev_pos && q < limit) {
        ++j;
        prev_pos = q;
      } else {
        break;
      }
    }
    run.run_length = j + 1;
    for (int i = mp + 1; i < limit; ++i) {
      int v = e[static_cast<size_t>(i - 1)];
      run.block.push_back(v);
      if (!(v < mv && v >= mv - j)) run.bypassers.push_back(v);
    }
    rd.runs.push_back(std::move(run));
  }
  return rd;
}

size_t max_suffix_start(std::span<const int> seq) {
  if (seq.empty()) return 0;
  size_t i = seq.size() - 1;
  while (i > 0 && seq[i - 1] == seq[i] - 1) --i;
  return i;
}

MaxSuffixDecomposition max_suffix_decomposition(const Permutation& p) {
  MaxSuffixDecomposition d;
  const auto& e = p.entries();
  const int n = p.size();
  std::vector<char> is_max(static_cast<size_t>(n), 0);
  for (auto [pos, val] : ltr_maxima(p)) {
    (void)val;
    is_max[static_cast<size_t>(pos - 1)] = 1;
  }
  int i = 0;
  while (i < n) {
    if (is_max[static_cast<size_t>(i)]) {
      std::vector<int> run{e[static_cast<size_t>(i)]};
      int j = i + 1;
      while (j < n && is_max[static_cast<size_t>(j)] &&
             e[static_cast<size_t>(j)] == e[static_cast<size_t>(j - 1)] + 1) {
        run.push_back(e[static_cast<size_t>(j)]);
        ++j;
      }
      d.maxima_runs.push_back(std::move(run));
      d.gaps.emplace_back();
      i = j;
    } else {
      d.gaps.back().push_back(e[static_cast<size_t>(i)]);
      ++i;
    }
  }
  return d;
}

}  // namespace popsort
