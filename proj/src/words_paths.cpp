#include "popsort/words_paths.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

#include "popsort/enumeration.hpp"
#include "popsort/machines.hpp"

namespace popsort {

std::string perm_to_word(const Permutation& p) {
  std::vector<int> stack;
  std::string w;
  w.reserve(static_cast<size_t>(p.size()));
  for (int x : p) {
    if (stack.empty() || x == stack.back() - 1) {
      stack.push_back(x);
      w += '0';
    } else if (x < stack.back() - 1) {
      w += '1';
    } else {
      stack.assign(1, x);
      w += '2';
    }
  }
  return w;
}

bool word_in_W(std::string_view w) {
  if (w.empty()) return true;
  for (char c : w)
    if (c != '0' && c != '1' && c != '2') return false;
  if (w.front() != '0' || w.back() == '1') return false;
  return w.find("12") == std::string_view::npos;
}

Permutation word_to_perm(std::string_view w) {
  if (!word_in_W(w))
    throw std::invalid_argument("word_to_perm: '" + std::string(w) + "' is not in W");
  if (w.empty()) return Permutation();
  // factors start at position 0 and at every '2'
  std::vector<std::pair<size_t, size_t>> factors;  // [begin, end)
  size_t begin = 0;
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i] == '2') {
      factors.emplace_back(begin, i);
      begin = i;
    }
  }
  factors.emplace_back(begin, w.size());

  std::vector<int> out(w.size(), 0);
  int next = 1;
  for (auto [b, e] : factors) {
    for (size_t i = b; i < e; ++i)
      if (w[i] == '1') out[i] = next++;
    for (size_t i = e; i-- > b;)
      if (w[i] != '1') out[i] = next++;
  }
  return Permutation(std::move(out));
}

std::string perm_to_path(const Permutation& p) {
  return word_to_path(perm_to_word(p));
}

std::string word_to_path(std::string_view w) {
  std::string path;
  int h = 0;
  for (char c : w) {
    if (c == '0') {
      path += 'U';
      ++h;
    } else if (c == '1') {
      path += 'H';
    } else if (c == '2') {
      path.append(static_cast<size_t>(h), 'D');
      path += 'U';
      h = 1;
    } else {
      throw std::invalid_argument("word_to_path: bad letter in '" + std::string(w) + "'");
    }
  }
  path.append(static_cast<size_t>(h), 'D');
  return path;
}

bool path_in_M(std::string_view m) {
  if (m.empty()) return true;
  int h = 0;
  for (char c : m) {
    if (c == 'U') ++h;
    else if (c == 'D') --h;
    else if (c != 'H') return false;
    if (h < 0) return false;
  }
  if (h != 0) return false;
  if (m.front() != 'U' || m.back() != 'D') return false;
  if (m.find("HD") != std::string_view::npos ||
      m.find("DH") != std::string_view::npos)
    return false;
  // every maximal D-run descends all the way to the axis
  h = 0;
  for (size_t i = 0; i < m.size();) {
    if (m[i] == 'D') {
      while (i < m.size() && m[i] == 'D') --h, ++i;
      if (h != 0) return false;
    } else {
      if (m[i] == 'U') ++h;
      ++i;
    }
  }
  return true;
}

std::string path_to_word(std::string_view m) {
  if (!path_in_M(m))
    throw std::invalid_argument("path_to_word: '" + std::string(m) + "' is not in M");
  std::string w;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 'U')
      w += (i > 0 && m[i - 1] == 'D') ? '2' : '0';
    else if (m[i] == 'H')
      w += '1';
    // D-runs carry no letter: a run before a U belongs to that U's '2',
    // the final run is the completion drain
  }
  return w;
}

BigInt count_W_enum(int n) {
  if (n < 0 || n > 14) throw std::invalid_argument("count_W_enum: need 0 <= n <= 14");
  if (n == 0) return 1;
  // walk the 12-factor-avoiding prefixes starting with 0, count valid endings
  uint64_t count = 0;
  std::function<void(int, char)> rec = [&](int pos, char last) {
    if (pos == n) {
      if (last != '1') ++count;
      return;
    }
    for (char c : {'0', '1', '2'}) {
      if (last == '1' && c == '2') continue;
      rec(pos + 1, c);
    }
  };
  rec(1, '0');
  return count;
}

BigInt count_M_enum(int n) {
  if (n < 0 || n > 14) throw std::invalid_argument("count_M_enum: need 0 <= n <= 14");
  if (n == 0) return 1;
  uint64_t count = 0;
  // budget counts remaining U+H steps; D-runs are forced to the axis
  std::function<void(int, char, int)> rec = [&](int h, char last, int budget) {
    if (budget == 0 && h == 0 && last == 'D') {
      ++count;
      return;
    }
    if (budget > 0) {
      rec(h + 1, 'U', budget - 1);
      if (last == 'U' || last == 'H') rec(h, 'H', budget - 1);
    }
    if (h > 0 && last == 'U') rec(0, 'D', budget);
  };
  rec(1, 'U', n - 1);
  return count;
}

BigInt count_WM_recurrence(int n) {
  if (n < 0) throw std::invalid_argument("count_WM_recurrence: need n >= 0");
  if (n <= 1) return 1;
  std::vector<BigInt> M{1, 1};
  BigInt inner_sum = 0;  // sum of M_1 .. M_{m-2}
  for (int m = 2; m <= n; ++m) {
    if (m >= 3) inner_sum += M[static_cast<size_t>(m - 2)];
    M.push_back(2 * M[static_cast<size_t>(m - 1)] + inner_sum);
  }
  return M[static_cast<size_t>(n)];
}

BigInt count_W(int n) {
  return n <= 14 ? count_W_enum(n) : count_WM_recurrence(n);
}

BigInt count_M(int n) {
  return n <= 14 ? count_M_enum(n) : count_WM_recurrence(n);
}

std::vector<std::string> enumerate_W(int n) {
  if (n < 0 || n > 14) throw std::invalid_argument("enumerate_W: need 0 <= n <= 14");
  std::vector<std::string> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::string cur(1, '0');
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == n) {
      if (cur.back() != '1') out.push_back(cur);
      return;
    }
    for (char c : {'0', '1', '2'}) {
      if (cur.back() == '1' && c == '2') continue;
      cur += c;
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

std::string word_count_csv(int max_n) {
  std::ostringstream os;
  os << "n,count_W,count_M,fibonacci_odd\n";
  for (int n = 0; n <= max_n; ++n)
    os << n << ',' << count_W(n) << ',' << count_M(n) << ',' << fib(2 * n - 1) << '\n';
  return os.str();
}

}  // namespace popsort
