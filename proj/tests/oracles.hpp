#pragma once

// Independent reference implementations used only by the tests. They work
// on plain std::string with one char per letter and share no code with the
// library beyond the standard library.
//
// Letter chars: four-letter alphabet a, A (a-bar), b, c; Berstel alphabet
// a, b, B (b-hat), c; K uses a, P (b-hat<), Q (b-hat>), L (b<), R (b>),
// l (c<), r (c>).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline int tm(std::uint64_t n) { return std::popcount(n) & 1; }

inline std::string tm_string(std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<char>('0' + tm(i));
  return s;
}

using rules = std::map<char, std::string>;

inline std::string apply(const rules& h, const std::string& w) {
  std::string out;
  for (char c : w) out += h.at(c);
  return out;
}

// Iterate h on the seed until the word has at least n letters.
inline std::string fixed_point(const rules& h, char seed, std::size_t n) {
  std::string w(1, seed);
  while (w.size() < n) w = oracle::apply(h, w);
  return w.substr(0, n);
}

inline const rules& phi() {
  static const rules r{{'a', "abc"}, {'b', "ac"}, {'c', "b"}};
  return r;
}
inline const rules& psi() {
  static const rules r{{'a', "aA"}, {'A', "bc"}, {'b', "aAc"}, {'c', "b"}};
  return r;
}
inline const rules& phi_bar() {
  static const rules r{{'a', "ab"}, {'b', "ca"}, {'B', "ac"}, {'c', "cB"}};
  return r;
}
inline const rules& phi_plus() {
  static const rules r{{'a', "aRla"}, {'P', "aLrP"}, {'Q', "aRlQ"}, {'L', "rPaL"},
                       {'R', "rPaR"}, {'l', "lQal"}, {'r', "rPar"}};
  return r;
}

inline std::string A(std::size_t n) { return fixed_point(phi(), 'a', n); }
inline std::string Bbar(std::size_t n) { return fixed_point(psi(), 'a', n); }
inline std::string Abar(std::size_t n) { return fixed_point(phi_bar(), 'a', n); }
inline std::string Aplus(std::size_t n) { return fixed_point(phi_plus(), 'a', n); }

// Letter N of the fixed point of h on seed, by descending through image lengths.
inline char letter_at(const rules& h, char seed, std::uint64_t N) {
  std::vector<std::map<char, std::uint64_t>> len(1);
  for (const auto& [c, img] : h) len[0][c] = 1;
  while (len.back().at(seed) <= N) {
    std::map<char, std::uint64_t> next;
    for (const auto& [c, img] : h) {
      for (char x : img) next[c] += len.back().at(x);
    }
    len.push_back(next);
  }
  char cur = seed;
  for (std::size_t level = len.size() - 1; level > 0; --level) {
    for (char x : h.at(cur)) {
      if (N < len[level - 1].at(x)) {
        cur = x;
        break;
      }
      N -= len[level - 1].at(x);
    }
  }
  return cur;
}

inline std::vector<std::size_t> find_all(const std::string& text, const std::string& w) {
  std::vector<std::size_t> out;
  for (std::size_t p = text.find(w); p != std::string::npos; p = text.find(w, p + 1)) out.push_back(p);
  return out;
}

inline std::vector<std::uint64_t> diffs(const std::vector<std::size_t>& xs) {
  std::vector<std::uint64_t> d;
  for (std::size_t i = 1; i < xs.size(); ++i) d.push_back(xs[i] - xs[i - 1]);
  return d;
}

// First n gaps of w in t, scanning a long enough prefix.
inline std::vector<std::uint64_t> tm_gaps(const std::string& w, std::size_t n) {
  for (std::size_t len = 1024;; len *= 2) {
    auto occ = find_all(tm_string(len), w);
    if (occ.size() > n) {
      occ.resize(n + 1);
      return diffs(occ);
    }
  }
}

inline std::vector<std::uint64_t> digits_of(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (char c : s) out.push_back(static_cast<std::uint64_t>(c - '0'));
  return out;
}

inline bool is_right(char c) { return c == 'Q' || c == 'R' || c == 'r'; }
inline bool is_left(char c) { return c == 'P' || c == 'L' || c == 'l'; }

// FindMatching exactly as stated: for n = 1, 2, ... link every free pair
// (i, i+n) whose connectors point at each other.
inline std::vector<std::pair<std::size_t, std::size_t>> find_matching(const std::string& w) {
  std::vector<std::pair<std::size_t, std::size_t>> links;
  std::vector<bool> used(w.size(), false);
  for (std::size_t n = 1; n < w.size(); ++n) {
    for (std::size_t i = 0; i + n < w.size(); ++i) {
      const std::size_t j = i + n;
      if (!used[i] && !used[j] && is_right(w[i]) && is_left(w[j])) {
        used[i] = used[j] = true;
        links.emplace_back(i, j);
      }
    }
  }
  return links;
}

// deg(j) straight from the definition.
inline long degree(const std::string& w, const std::vector<std::pair<std::size_t, std::size_t>>& links,
                   std::size_t j) {
  long d = 0;
  for (auto [k, l] : links) {
    if (k < j && j < l) {
      if (w[k] == 'r') ++d;
      if (w[l] == 'l') --d;
    }
  }
  return d;
}

// Every (index, half) with w[i..i+p) == w[i+p..i+2p), p <= max_half.
inline std::vector<std::pair<std::size_t, std::size_t>> squares(const std::string& w, std::size_t max_half) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t p = 1; p <= max_half && i + 2 * p <= w.size(); ++p) {
      if (w.compare(i, p, w, i + p, p) == 0) out.emplace_back(i, p);
    }
  }
  return out;
}

// 3 * D_N by direct count on a TM string.
inline long three_d(std::uint64_t N) {
  long c = 0;
  for (std::uint64_t n = 0; n < N; ++n) c += (tm(n) == 0 && tm(n + 1) == 1);
  return 3 * c - static_cast<long>(N);
}

}  // namespace oracle
