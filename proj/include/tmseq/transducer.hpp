#pragma once

// Base-k output-sum transducers, the degree transducer T1, the discrepancy
// transducer T2 and the discrepancy D_N computed three ways.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tmseq/matching.hpp"
#include "tmseq/third.hpp"

namespace tmseq::transducer {

struct edge {
  std::size_t to;
  third weight;
  friend bool operator==(const edge&, const edge&) = default;
};

/// Deterministic transducer reading base-`base` digits most significant
/// first. With group g > 1 the digit string is left-padded with zeros to a
/// multiple of g letters.
class weighted_transducer {
 public:
  weighted_transducer(unsigned base, std::vector<std::string> states, std::size_t start, std::vector<edge> table,
                      unsigned group = 1)
      : base_(base), states_(std::move(states)), start_(start), table_(std::move(table)), group_(group) {
    if (base_ < 2) throw domain_error("transducer base must be at least 2");
    if (group_ < 1) throw domain_error("digit group must be positive");
    if (states_.empty()) throw domain_error("transducer needs at least one state");
    if (start_ >= states_.size()) throw domain_error("start state out of range");
    if (table_.size() != states_.size() * base_) throw domain_error("transition table is not total");
    for (const auto& e : table_) {
      if (e.to >= states_.size()) throw domain_error("transition target out of range");
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (states_[i] == states_[j]) throw domain_error("duplicate state name '" + states_[i] + "'");
      }
    }
  }

  unsigned base() const { return base_; }
  unsigned group() const { return group_; }
  std::size_t size() const { return states_.size(); }
  std::size_t start() const { return start_; }
  const std::vector<std::string>& states() const { return states_; }
  const edge& step(std::size_t state, unsigned digit) const { return table_.at(state * base_ + digit); }

  /// Digits of n, most significant first, padded to the digit group.
  std::vector<unsigned> digits(std::uint64_t n) const {
    std::vector<unsigned> d;
    while (n > 0) {
      d.push_back(static_cast<unsigned>(n % base_));
      n /= base_;
    }
    while (d.size() % group_ != 0) d.push_back(0);
    return {d.rbegin(), d.rend()};
  }

  struct result {
    std::size_t state;
    third weight;
  };

  result run_detailed(std::uint64_t n) const {
    std::size_t s = start_;
    third w;
    for (unsigned d : digits(n)) {
      const auto& e = step(s, d);
      w += e.weight;
      s = e.to;
    }
    return {s, w};
  }

  third run(std::uint64_t n) const { return run_detailed(n).weight; }

  /// True when digit 0 loops on the start state with weight 0.
  bool zero_loop_at_start() const {
    const auto& e = step(start_, 0);
    return e.to == start_ && e.weight == third{};
  }

  std::vector<bool> reachable() const {
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> todo{start_};
    seen[start_] = true;
    while (!todo.empty()) {
      std::size_t s = todo.back();
      todo.pop_back();
      for (unsigned d = 0; d < base_; ++d) {
        std::size_t t = step(s, d).to;
        if (!seen[t]) {
          seen[t] = true;
          todo.push_back(t);
        }
      }
    }
    return seen;
  }

  std::size_t reachable_count() const {
    auto r = reachable();
    return static_cast<std::size_t>(std::count(r.begin(), r.end(), true));
  }

  /// Largest |weight| over all edges.
  third max_abs_weight() const {
    third m;
    for (const auto& e : table_) {
      third a = e.weight < third{} ? -e.weight : e.weight;
      if (a > m) m = a;
    }
    return m;
  }

  friend bool operator==(const weighted_transducer&, const weighted_transducer&) = default;

 private:
  unsigned base_;
  std::vector<std::string> states_;
  std::size_t start_;
  std::vector<edge> table_;
  unsigned group_;
};

// Text format:
//   base <k>
//   start <state>
//   group <g>            (only when g > 1)
//   <from> <digit> <to> <num3>
inline void write_text(std::ostream& os, const weighted_transducer& t) {
  os << "base " << t.base() << "\n";
  os << "start " << t.states()[t.start()] << "\n";
  if (t.group() > 1) os << "group " << t.group() << "\n";
  for (std::size_t s = 0; s < t.size(); ++s) {
    for (unsigned d = 0; d < t.base(); ++d) {
      const auto& e = t.step(s, d);
      os << t.states()[s] << " " << d << " " << t.states()[e.to] << " " << e.weight.num3() << "\n";
    }
  }
}

inline std::string to_text(const weighted_transducer& t) {
  std::ostringstream os;
  write_text(os, t);
  return os.str();
}

inline weighted_transducer read_text(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  unsigned base = 0, group = 1;
  std::string start_name;
  struct raw {
    std::string from;
    unsigned digit;
    std::string to;
    std::int64_t num3;
  };
  std::vector<raw> rows;
  auto bad = [&](const std::string& why) { return parse_error("line " + std::to_string(lineno) + ": " + why, lineno); };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "base") {
      if (!(ls >> base)) throw bad("expected base value");
    } else if (head == "start") {
      if (!(ls >> start_name)) throw bad("expected start state");
    } else if (head == "group") {
      if (!(ls >> group)) throw bad("expected group value");
    } else {
      raw r{head, 0, "", 0};
      if (!(ls >> r.digit >> r.to >> r.num3)) throw bad("expected '<from> <digit> <to> <num3>'");
      rows.push_back(std::move(r));
    }
    std::string extra;
    if (ls >> extra) throw bad("trailing text");
  }
  if (base < 2) throw parse_error("missing or invalid base line", 0);
  if (start_name.empty()) throw parse_error("missing start line", 0);
  std::vector<std::string> states;
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    if (index.emplace(r.from, states.size()).second) states.push_back(r.from);
  }
  if (!index.count(start_name)) throw parse_error("start state has no edges", 0);
  std::vector<edge> table(states.size() * base);
  std::vector<bool> set(table.size(), false);
  for (const auto& r : rows) {
    if (r.digit >= base) throw parse_error("digit out of range for base", 0);
    auto it = index.find(r.to);
    if (it == index.end()) throw parse_error("target state '" + r.to + "' has no edges", 0);
    std::size_t slot = index[r.from] * base + r.digit;
    if (set[slot]) throw parse_error("duplicate edge for state '" + r.from + "'", 0);
    set[slot] = true;
    table[slot] = {it->second, third::from_num3(r.num3)};
  }
  if (std::find(set.begin(), set.end(), false) != set.end()) throw parse_error("transition table is not total", 0);
  return weighted_transducer(base, std::move(states), index[start_name], std::move(table), group);
}

inline weighted_transducer from_text(const std::string& text) {
  std::istringstream is(text);
  return read_text(is);
}

// Degree transducer. Digit l from state s leads to letter l of phi+(s).
inline const std::array<std::array<std::int64_t, 4>, matching::k_size>& t1_weights() {
  static const std::array<std::array<std::int64_t, 4>, matching::k_size> w{{
      {0, 0, 0, 0},    // a
      {1, 0, 0, 0},    // b^<
      {0, 0, 0, 0},    // b^>
      {1, 1, 1, 0},    // b<
      {0, 0, 0, 0},    // b>
      {0, 0, -1, 0},   // c<
      {0, 0, 0, 0},    // c>
  }};
  return w;
}

inline weighted_transducer hexagon_T1() {
  const auto& m = matching::phi_plus_morphism();
  std::vector<std::string> names = matching::K()->names();
  std::vector<edge> table;
  for (std::size_t s = 0; s < matching::k_size; ++s) {
    for (unsigned d = 0; d < 4; ++d) {
      table.push_back({m.image(static_cast<symbol>(s))[d], third::from_int(t1_weights()[s][d])});
    }
  }
  weighted_transducer t(4, std::move(names), matching::k_a, std::move(table));
  if (!t.zero_loop_at_start()) throw domain_error("T1 self-check: no weight-0 zero loop at start");
  return t;
}

/// Matrices of T2, indexed [digit][row i][column j] over K.
struct t2_matrices {
  using mat = std::array<std::array<int, matching::k_size>, matching::k_size>;
  std::array<mat, 4> A{};
  std::array<std::array<std::array<third, matching::k_size>, matching::k_size>, 4> W{};
  std::array<std::array<std::array<third, matching::k_size>, matching::k_size>, 4> Z{};
};

inline t2_matrices t2_build_matrices(const weighted_transducer& t1) {
  constexpr std::size_t n = matching::k_size;
  const std::array<std::int64_t, 4> q{0, 2, 1, 0};
  const std::array<std::int64_t, 4> q_tilde{2, 1, 0, 2};
  const std::array<std::int64_t, n> r{0, 1, 0, 1, 0, -1, 0};
  t2_matrices M;
  for (unsigned l = 0; l < 4; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = t1.step(j, l);
      M.A[l][e.to][j] = 1;
      M.W[l][e.to][j] = third::from_num3(e.weight.num3() / 3);
      if (e.weight.num3() % 3 != 0) throw domain_error("T2 self-check: T1 weights must be integers");
    }
    for (std::size_t j = 0; j < n; ++j) {
      int ones = 0;
      std::size_t row = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (M.A[l][i][j] == 1) {
          ++ones;
          row = i;
        }
      }
      if (ones != 1) throw domain_error("T2 self-check: column of A is not a unit vector");
      std::int64_t base = j < 3 ? q[l] : q_tilde[l];
      M.Z[l][row][j] = third::from_num3(base + r[j]);
    }
  }
  return M;
}

inline std::string t2_state_name(std::size_t i, unsigned l, std::size_t j) {
  return std::to_string(i + 1) + "," + std::to_string(l) + "," + std::to_string(j + 1);
}

inline std::size_t t2_state_index(std::size_t i, unsigned l, std::size_t j) {
  return (i * 4 + l) * matching::k_size + j;
}

/// Discrepancy transducer on states (i, l', j): current node i, last digit
/// l', previous node j. Start (1,0,1).
inline weighted_transducer build_T2() {
  constexpr std::size_t n = matching::k_size;
  auto t1 = hexagon_T1();
  auto M = t2_build_matrices(t1);
  std::vector<std::string> names(n * 4 * n);
  std::vector<edge> table(names.size() * 4);
  for (std::size_t j = 0; j < n; ++j) {
    for (unsigned lp = 0; lp < 4; ++lp) {
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t from = t2_state_index(j, lp, k);
        names[from] = t2_state_name(j, lp, k);
        for (unsigned l = 0; l < 4; ++l) {
          std::size_t i = t1.step(j, l).to;
          third w = M.Z[l][i][j] - M.Z[lp][j][k] + M.W[lp][j][k];
          table[from * 4 + l] = {t2_state_index(i, l, j), w};
        }
      }
    }
  }
  weighted_transducer t(4, std::move(names), t2_state_index(0, 0, 0), std::move(table));
  if (!t.zero_loop_at_start()) throw domain_error("T2 self-check: no weight-0 zero loop at start");
  return t;
}

/// Base-2 transducer equal to t on every input: each state reads two bits
/// through one of two auxiliary nodes.
inline weighted_transducer base2_reduction(const weighted_transducer& t) {
  if (t.base() != 4) throw domain_error("base-2 reduction expects a base-4 transducer");
  if (t.group() != 1) throw domain_error("base-2 reduction expects an ungrouped transducer");
  const std::size_t n = t.size();
  std::vector<std::string> names(t.states());
  for (std::size_t s = 0; s < n; ++s) {
    names.push_back(t.states()[s] + "/0");
    names.push_back(t.states()[s] + "/1");
  }
  std::vector<edge> table(names.size() * 2);
  for (std::size_t s = 0; s < n; ++s) {
    for (unsigned hi = 0; hi < 2; ++hi) {
      std::size_t aux = n + 2 * s + hi;
      table[s * 2 + hi] = {aux, third{}};
      for (unsigned lo = 0; lo < 2; ++lo) table[aux * 2 + lo] = t.step(s, 2 * hi + lo);
    }
  }
  return weighted_transducer(2, std::move(names), t.start(), std::move(table), 2);
}

/// #{0 <= n < N : t_n t_{n+1} = 01} - N/3.
inline third discrepancy_brute(std::uint64_t N) {
  std::int64_t count = 0;
  for (std::uint64_t n = 0; n < N; ++n) {
    if ((std::popcount(n) & 1) == 0 && (std::popcount(n + 1) & 1) == 1) ++count;
  }
  return third::from_num3(3 * count - static_cast<std::int64_t>(N));
}

/// 3*D_N for N = 0..count-1 by a single pass.
inline std::vector<std::int64_t> discrepancy_brute_range(std::uint64_t count) {
  std::vector<std::int64_t> out;
  out.reserve(count);
  std::int64_t c = 0;
  for (std::uint64_t N = 0; N < count; ++N) {
    out.push_back(3 * c - static_cast<std::int64_t>(N));
    if ((std::popcount(N) & 1) == 0 && (std::popcount(N + 1) & 1) == 1) ++c;
  }
  return out;
}

/// D_N from the letter A+_j and deg(j), j = floor(N/4), via T1.
inline third discrepancy_by_degree(std::uint64_t N, const weighted_transducer& t1) {
  using namespace matching;
  auto [state, deg] = t1.run_detailed(N / 4);
  const std::int64_t d = deg.num3() / 3;
  const auto letter = static_cast<symbol>(state);
  std::int64_t delta = 0;
  bool even_block = false;
  switch (letter) {
    case k_a: delta = d; even_block = true; break;
    case k_bhat_left: delta = d + 1; even_block = true; break;
    case k_bhat_right: delta = d; even_block = true; break;
    case k_b_left: delta = d + 1; break;
    case k_b_right: delta = d; break;
    case k_c_left: delta = d - 1; break;
    case k_c_right: delta = d; break;
    default: throw domain_error("T1 ended outside K");
  }
  // 3*D_{4j} in the even case, 3*D_{4j+2} in the odd case.
  static constexpr std::array<std::int64_t, 4> even{0, 2, 1, 0};
  static constexpr std::array<std::int64_t, 4> odd{2, 1, 0, 2};
  const auto& off = even_block ? even : odd;
  return third::from_num3(delta + off[N % 4]);
}

inline third discrepancy_by_degree(std::uint64_t N) {
  static const weighted_transducer t1 = hexagon_T1();
  return discrepancy_by_degree(N, t1);
}

}  // namespace tmseq::transducer
