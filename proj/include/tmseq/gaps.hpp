#pragma once

// Gap sequences of factors of the Thue-Morse word. A factor w is located
// inside the blocks a^{xy}_k = tau^k(x) tau^k(y) for the least possible k;
// its gaps then follow from the gaps of xy, scaled by 2^k, or from a walk
// along Bbar when two block types are involved.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmseq/catalog.hpp"
#include "tmseq/words.hpp"

namespace tmseq::gaps {

/// Two-letter block tag xy, encoded as 2x + y.
enum class member : std::uint8_t { m00 = 0, m01 = 1, m10 = 2, m11 = 3 };

inline std::string member_name(member m) {
  auto v = static_cast<unsigned>(m);
  return std::string{static_cast<char>('0' + (v >> 1)), static_cast<char>('0' + (v & 1))};
}

inline member member_from_string(std::string_view s) {
  if (s == "00") return member::m00;
  if (s == "01") return member::m01;
  if (s == "10") return member::m10;
  if (s == "11") return member::m11;
  throw domain_error("block tag must be one of 00, 01, 10, 11");
}

inline int tm_bit(std::uint64_t n) { return std::popcount(n) & 1; }

/// a^{xy}_k as a 0/1 vector.
inline std::vector<symbol> block(member m, unsigned k) {
  auto v = static_cast<unsigned>(m);
  const int x = static_cast<int>(v >> 1), y = static_cast<int>(v & 1);
  const std::size_t half = std::size_t{1} << k;
  std::vector<symbol> out(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = static_cast<symbol>(x ^ tm_bit(i));
    out[half + i] = static_cast<symbol>(y ^ tm_bit(i));
  }
  return out;
}

struct gap_class {
  std::vector<symbol> factor;
  unsigned k = 0;
  std::vector<member> members;       // in tag order: 01 before 10, 11 before 00
  std::size_t sigma0 = 0;            // offset inside the first member's block
  std::optional<std::size_t> sigma1; // offset inside the second member's block

  bool mixed() const { return members.size() == 2; }
};

inline std::vector<symbol> binary_letters(const word& w) {
  if (!same_alphabet(w.alpha(), catalog::binary())) throw domain_error("factor must be a word over {0,1}");
  return w.letters();
}

/// Which block pairs classify may use. With `any` the order k is the least
/// one overall; a restricted family takes the least k at which the factor
/// lies in that family only.
enum class block_family { any, alternating, constant };

inline gap_class classify(const word& w, block_family fam = block_family::any) {
  const auto f = binary_letters(w);
  if (f.size() < 2) throw domain_error("gap classification needs a factor of length at least 2");
  // A factor of length <= 2^K + 1 of t sits inside two consecutive aligned
  // blocks of length 2^K, and all four pairs xy occur in t.
  unsigned K = 0;
  while ((std::size_t{1} << K) + 1 < f.size()) ++K;
  if (fam != block_family::any) ++K;
  const std::array<member, 4> order{member::m01, member::m10, member::m11, member::m00};
  for (unsigned k = 0; k <= K; ++k) {
    gap_class g;
    g.factor = f;
    g.k = k;
    std::vector<std::size_t> offsets;
    bool outside = false;
    for (member m : order) {
      auto b = block(m, k);
      auto occ = occurrences(std::span<const symbol>(b), std::span<const symbol>(f));
      if (occ.empty()) continue;
      const bool alt = m == member::m01 || m == member::m10;
      if ((fam == block_family::alternating && !alt) || (fam == block_family::constant && alt)) {
        outside = true;
        continue;
      }
      if (occ.size() > 1) throw domain_error("factor occurs twice inside block " + member_name(m));
      g.members.push_back(m);
      offsets.push_back(occ.front());
    }
    if (g.members.empty() || outside) continue;
    if (g.members.size() > 2) throw domain_error("factor lies in more than two block types");
    if (g.members.size() == 2) {
      auto a = g.members[0], b = g.members[1];
      bool ok = (a == member::m01 && b == member::m10) || (a == member::m11 && b == member::m00);
      if (!ok) throw domain_error("factor lies in an unexpected pair of block types");
      g.sigma1 = offsets[1];
    }
    g.sigma0 = offsets[0];
    return g;
  }
  if (fam == block_family::any) throw domain_error("'" + w.str() + "' is not a factor of the Thue-Morse word");
  classify(w);
  throw domain_error("'" + w.str() + "' has no classification in the requested block family");
}

/// Per Bbar letter (a, a-bar, b, c): the gap from an occurrence in the first
/// member's block to the next one in the second's, then back.
using gap_table = std::array<std::array<std::int64_t, 2>, 4>;

inline gap_table mixed_gap_table(const gap_class& g) {
  if (!g.mixed()) throw domain_error("gap table needs a two-member class");
  const std::int64_t s0 = static_cast<std::int64_t>(g.sigma0);
  const std::int64_t s1 = static_cast<std::int64_t>(*g.sigma1);
  const std::int64_t p = std::int64_t{1} << g.k;
  const std::int64_t lo = g.members[0] == member::m01 ? p : 2 * p;
  const std::int64_t hi = 2 * lo;
  return {{{s1 - s0 + hi, s0 - s1 + lo},
           {s1 - s0 + lo, s0 - s1 + hi},
           {s1 - s0 + hi, s0 - s1 + hi},
           {s1 - s0 + lo, s0 - s1 + lo}}};
}

/// Position of the first occurrence of the classified factor in t.
inline std::uint64_t first_occurrence(const gap_class& g) {
  const std::uint64_t p = std::uint64_t{1} << g.k;
  switch (g.members.front()) {
    case member::m01: return g.sigma0;           // t = 01...
    case member::m10: return 2 * p + g.sigma0;   // first 10 at 2
    case member::m11: return p + g.sigma0;       // first 11 at 1
    case member::m00: return 5 * p + g.sigma0;   // first 00 at 5
  }
  return 0;
}

/// First n gaps of the classified factor, generated from Bbar.
inline std::vector<std::uint64_t> gap_stream(const gap_class& g, std::size_t n) {
  std::vector<std::uint64_t> out;
  out.reserve(n + 3);
  auto bbar = catalog::bbar();
  const std::uint64_t p = std::uint64_t{1} << g.k;
  if (g.mixed()) {
    auto table = mixed_gap_table(g);
    for (std::size_t i = 0; out.size() < n; ++i) {
      for (auto x : table[bbar.at(i)]) out.push_back(static_cast<std::uint64_t>(x));
    }
  } else {
    const member m = g.members.front();
    const bool from_check = m == member::m10 || m == member::m00;
    const std::uint64_t scale = (m == member::m11 || m == member::m00) ? 2 * p : p;
    const auto& coding = from_check ? catalog::p_check() : catalog::p();
    for (std::size_t i = 0; out.size() < n; ++i) {
      for (symbol s : coding.image(bbar.at(i))) out.push_back(scale * (s + 2u));
    }
  }
  out.resize(n);
  return out;
}

inline std::vector<std::uint64_t> gap_stream(const word& w, std::size_t n, block_family fam = block_family::any) {
  return gap_stream(classify(w, fam), n);
}

/// Positions p with p + 2^{k+1} <= horizon where a^{xy}_k starts in t, from
/// the occurrences of xy scaled by 2^k.
inline std::vector<std::uint64_t> block_positions(member xy, unsigned k, std::uint64_t horizon) {
  auto v = static_cast<unsigned>(xy);
  const int x = static_cast<int>(v >> 1), y = static_cast<int>(v & 1);
  const std::uint64_t p = std::uint64_t{1} << k;
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 0; p * (j + 2) <= horizon; ++j) {
    if (tm_bit(j) == x && tm_bit(j + 1) == y) out.push_back(p * j);
  }
  return out;
}

/// True iff tau^k(0) reads the same backwards.
inline bool tau_power_is_palindrome(unsigned k) {
  const std::uint64_t n = std::uint64_t{1} << k;
  for (std::uint64_t i = 0; i < n / 2; ++i) {
    if (tm_bit(i) != tm_bit(n - 1 - i)) return false;
  }
  return true;
}

}  // namespace tmseq::gaps
