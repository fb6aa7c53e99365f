#pragma once

// Decorated alphabet K, the substitution phi+ and its fixed point A+,
// non-crossing matchings and the degree of a position.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmseq/catalog.hpp"
#include "tmseq/words.hpp"

namespace tmseq::matching {

// Letters of K in canonical order.
enum k_letter : symbol {
  k_a = 0,
  k_bhat_left = 1,
  k_bhat_right = 2,
  k_b_left = 3,
  k_b_right = 4,
  k_c_left = 5,
  k_c_right = 6,
};

inline constexpr std::size_t k_size = 7;

enum class base_type { a, b, bhat, c };
enum class connector { none, left, right };

struct decorated {
  base_type base;
  connector dir;
};

inline constexpr std::array<decorated, k_size> k_table{{
    {base_type::a, connector::none},
    {base_type::bhat, connector::left},
    {base_type::bhat, connector::right},
    {base_type::b, connector::left},
    {base_type::b, connector::right},
    {base_type::c, connector::left},
    {base_type::c, connector::right},
}};

inline constexpr decorated decode(symbol s) { return k_table[s]; }

/// The letter with the given type and connector; a takes no connector and
/// every other type requires one.
inline symbol encode(base_type b, connector d) {
  for (std::size_t i = 0; i < k_size; ++i) {
    if (k_table[i].base == b && k_table[i].dir == d) return static_cast<symbol>(i);
  }
  throw domain_error("no such letter in K");
}

// ASCII names: ^ marks the hat, h marks the plain b.
inline const alphabet_ptr& K() {
  static const alphabet_ptr a = make_alphabet({"a", "b^<", "b^>", "bh<", "bh>", "c<", "c>"});
  return a;
}

inline const std::array<std::string, k_size>& unicode_names() {
  static const std::array<std::string, k_size> n{"a", "b̂←", "b̂→", "b←", "b→", "c←", "c→"};
  return n;
}

inline std::string unicode_str(const word& w, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += unicode_names()[w[i]];
  }
  return out;
}

inline const morphism& phi_plus_morphism() {
  static const morphism m(K(), K(),
                          {{k_a, k_b_right, k_c_left, k_a},
                           {k_a, k_b_left, k_c_right, k_bhat_left},
                           {k_a, k_b_right, k_c_left, k_bhat_right},
                           {k_c_right, k_bhat_left, k_a, k_b_left},
                           {k_c_right, k_bhat_left, k_a, k_b_right},
                           {k_c_left, k_bhat_right, k_a, k_c_left},
                           {k_c_right, k_bhat_left, k_a, k_c_right}});
  return m;
}

inline const morphism& gamma_coding() {
  static const morphism m = morphism::from_strings(K(), catalog::ternary(), {"a", "b", "b", "b", "b", "c", "c"});
  return m;
}

inline morphic_stream phi_plus() { return morphic_stream(phi_plus_morphism(), k_a); }

inline word gamma(const word& w) { return apply(gamma_coding(), w); }

/// (phi+)^k(a), which has 4^k letters.
inline word phi_plus_power(unsigned k) {
  if (k > 15) throw domain_error("phi+ power too large");
  auto s = phi_plus();
  return s.raw_word(std::size_t{1} << (2 * k));
}

struct link {
  std::size_t i;
  std::size_t j;
  std::size_t span() const { return j - i; }
  friend bool operator==(const link&, const link&) = default;
};

/// Sorted by (span, left index).
using matching_t = std::vector<link>;

inline void sort_links(matching_t& m) {
  std::sort(m.begin(), m.end(), [](const link& x, const link& y) {
    return x.span() != y.span() ? x.span() < y.span() : x.i < y.i;
  });
}

/// Links free connectors pointing at each other, shortest span first.
/// Equivalent to the span-by-span greedy rule: a right connector is linked to
/// the nearest later left connector once everything between is linked.
inline matching_t find_matching(const word& w) {
  if (!same_alphabet(w.alpha(), K())) throw domain_error("find_matching expects a word over K");
  matching_t out;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto d = decode(w[i]).dir;
    if (d == connector::right) {
      open.push_back(i);
    } else if (d == connector::left && !open.empty()) {
      out.push_back({open.back(), i});
      open.pop_back();
    }
  }
  sort_links(out);
  return out;
}

enum class clause {
  ok,
  order,        // some link has i >= j, or an index beyond the word
  letter_pair,  // w_i w_j not one of b> c<, b^> c<, c> b<, c> b^<
  reused,       // an index belongs to two links
  uncovered,    // an index outside every link carries a letter other than a
  crossing,     // two links neither nested nor disjoint
};

inline const char* clause_name(clause c) {
  switch (c) {
    case clause::ok: return "ok";
    case clause::order: return "order";
    case clause::letter_pair: return "letter_pair";
    case clause::reused: return "reused";
    case clause::uncovered: return "uncovered";
    case clause::crossing: return "crossing";
  }
  return "?";
}

struct validation {
  clause violated = clause::ok;
  std::vector<std::size_t> indices;  // offending positions
  bool ok() const { return violated == clause::ok; }
};

inline bool allowed_pair(symbol x, symbol y) {
  return (x == k_b_right && y == k_c_left) || (x == k_bhat_right && y == k_c_left) ||
         (x == k_c_right && y == k_b_left) || (x == k_c_right && y == k_bhat_left);
}

inline validation validate_matching(const word& w, const matching_t& m) {
  if (!same_alphabet(w.alpha(), K())) throw domain_error("validate_matching expects a word over K");
  for (const auto& l : m) {
    if (l.i >= l.j || l.j >= w.size()) return {clause::order, {l.i, l.j}};
  }
  for (const auto& l : m) {
    if (!allowed_pair(w[l.i], w[l.j])) return {clause::letter_pair, {l.i, l.j}};
  }
  std::vector<std::optional<std::size_t>> owner(w.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    for (std::size_t x : {m[k].i, m[k].j}) {
      if (owner[x]) return {clause::reused, {x}};
      owner[x] = k;
    }
  }
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (!owner[x] && w[x] != k_a) return {clause::uncovered, {x}};
  }
  // Scanning left to right, endpoints must close in stack order.
  std::vector<std::size_t> stack;
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (!owner[x]) continue;
    const auto& l = m[*owner[x]];
    if (x == l.i) {
      stack.push_back(*owner[x]);
    } else {
      if (stack.back() != *owner[x]) {
        const auto& o = m[stack.back()];
        return {clause::crossing, {o.i, o.j, l.i, l.j}};
      }
      stack.pop_back();
    }
  }
  return {};
}

enum class tie_order { left_ascending, left_descending };

/// Rotates the closed word w along the links of m, shortest spans first.
inline word rotate_along_links(const word& w, matching_t m, tie_order order = tie_order::left_ascending) {
  auto v = validate_matching(w, m);
  if (!v.ok()) throw domain_error(std::string("a non-crossing matching is required (") + clause_name(v.violated) + ")");
  std::stable_sort(m.begin(), m.end(), [order](const link& x, const link& y) {
    if (x.span() != y.span()) return x.span() < y.span();
    return order == tie_order::left_ascending ? x.i < y.i : x.i > y.i;
  });
  std::vector<symbol> u = w.letters();
  for (const auto& l : m) {
    auto first = u.begin() + static_cast<std::ptrdiff_t>(l.i);
    auto last = u.begin() + static_cast<std::ptrdiff_t>(l.j);
    if (u[l.i] == k_c_right) {
      std::rotate(first, last, last + 1);
    } else {
      std::rotate(first, first + 1, last);
    }
  }
  return word(K(), std::move(u));
}

/// gamma(w) with every b deleted and a b put back in front of each c.
inline word rotation_shortcut(const word& w) {
  word g = gamma(w);
  constexpr symbol b = 1, c = 2;
  std::vector<symbol> out;
  for (symbol s : g.letters()) {
    if (s == b) continue;
    if (s == c) out.push_back(b);
    out.push_back(s);
  }
  return word(catalog::ternary(), std::move(out));
}

struct degree_t {
  std::int64_t plus = 0;
  std::int64_t minus = 0;
  std::int64_t value() const { return plus - minus; }
  friend bool operator==(const degree_t&, const degree_t&) = default;
};

/// Degrees of positions 0..count-1 of A+, from the matching of the closed
/// prefix (phi+)^K(a) with 4^K > 4*count.
inline std::vector<degree_t> degrees(std::size_t count) {
  unsigned K = 0;
  while ((std::size_t{1} << (2 * K)) <= 4 * count) ++K;
  word w = phi_plus_power(K);
  auto m = find_matching(w);
  std::vector<std::int64_t> dp(w.size() + 1, 0), dm(w.size() + 1, 0);
  for (const auto& l : m) {
    if (w[l.i] == k_c_right) {
      dp[l.i + 1] += 1;
      dp[l.j] -= 1;
    }
    if (w[l.j] == k_c_left) {
      dm[l.i + 1] += 1;
      dm[l.j] -= 1;
    }
  }
  std::vector<degree_t> out(count);
  std::int64_t p = 0, q = 0;
  for (std::size_t x = 0; x < count; ++x) {
    p += dp[x];
    q += dm[x];
    out[x] = {p, q};
  }
  return out;
}

inline degree_t degree(std::size_t j) { return degrees(j + 1).back(); }

}  // namespace tmseq::matching
