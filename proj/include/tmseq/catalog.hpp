#pragma once

// The named substitutions, codings and fixed points around the Thue-Morse
// word, and the identities that tie them together.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmseq/words.hpp"

namespace tmseq::catalog {

// Canonical alphabets. Symbol order is fixed and load-bearing.

inline const alphabet_ptr& binary() {
  static const alphabet_ptr a = make_alphabet({"0", "1"});
  return a;
}

inline const alphabet_ptr& ternary() {
  static const alphabet_ptr a = make_alphabet({"a", "b", "c"});
  return a;
}

// Alphabet of the fixed point of psi: a, a-bar, b, c.
inline const alphabet_ptr& four() {
  static const alphabet_ptr a = make_alphabet({"a", "ā", "b", "c"});
  return a;
}

// Alphabet of Berstel's 2-uniform morphism: a, b, b-hat, c.
inline const alphabet_ptr& berstel() {
  static const alphabet_ptr a = make_alphabet({"a", "b", "b̂", "c"});
  return a;
}

// Gap letters. Symbol s stands for the integer gap s + 2.
inline const alphabet_ptr& gap_digits() {
  static const alphabet_ptr a = make_alphabet({"2", "3", "4"});
  return a;
}

inline std::vector<std::uint64_t> gap_values(const word& gaps) {
  std::vector<std::uint64_t> out;
  out.reserve(gaps.size());
  for (symbol s : gaps.letters()) out.push_back(static_cast<std::uint64_t>(s) + 2);
  return out;
}

// Morphisms.

inline const morphism& tau() {
  static const morphism m = morphism::from_strings(binary(), binary(), {"01", "10"});
  return m;
}

inline const morphism& phi() {
  static const morphism m = morphism::from_strings(ternary(), ternary(), {"abc", "ac", "b"});
  return m;
}

inline const morphism& f() {
  static const morphism m = morphism::from_strings(ternary(), binary(), {"011010", "0110", "01"});
  return m;
}

inline const morphism& r() {
  static const morphism m = morphism::from_strings(ternary(), gap_digits(), {"33", "4", "2"});
  return m;
}

inline const morphism& psi() {
  static const morphism m = morphism::from_strings(four(), four(), {"aā", "bc", "aāc", "b"});
  return m;
}

inline const morphism& p() {
  static const morphism m = morphism::from_strings(four(), gap_digits(), {"3", "3", "4", "2"});
  return m;
}

inline const morphism& p_check() {
  static const morphism m = morphism::from_strings(four(), gap_digits(), {"24", "33", "233", "4"});
  return m;
}

inline const morphism& f_check() {
  static const morphism m =
      morphism::from_strings(four(), binary(), {"011010", "011001", "01101001", "0110"});
  return m;
}

// a -> a a-bar, b and c fixed.
inline const morphism& q() {
  static const morphism m = morphism::from_strings(ternary(), four(), {"aā", "b", "c"});
  return m;
}

inline const morphism& phi_bar() {
  static const morphism m = morphism::from_strings(berstel(), berstel(), {"ab", "ca", "ac", "cb̂"});
  return m;
}

inline const morphism& pi() {
  static const morphism m = morphism::from_strings(berstel(), ternary(), {"a", "b", "b", "c"});
  return m;
}

// Fixed-point streams.

inline morphic_stream thue_morse() { return morphic_stream(tau(), 0); }

inline morphic_stream ternary_A() { return morphic_stream(phi(), 0); }

inline morphic_stream bbar() { return morphic_stream(psi(), 0); }

inline morphic_stream berstel_Abar() { return morphic_stream(phi_bar(), 0); }

// B = p(Bbar): gaps between consecutive occurrences of 01 in t.
inline morphic_stream gap_B() { return morphic_stream(psi(), 0, p()); }

/// Concatenation h(s_0) h(s_1) ... truncated to n letters.
inline word concat_image_prefix(const morphism& h, morphic_stream& src, std::size_t n) {
  if (!same_alphabet(h.source(), src.output_alphabet())) {
    throw domain_error("morphism source differs from the stream alphabet");
  }
  std::vector<symbol> out;
  out.reserve(n + h.max_image_length());
  for (std::size_t i = 0; out.size() < n; ++i) {
    const auto& img = h.image(src.at(i));
    out.insert(out.end(), img.begin(), img.end());
  }
  out.resize(n);
  return word(h.target(), std::move(out));
}

/// f(src_0) f(src_1) ... over {0,1}, truncated to n letters.
inline word reconstruct_tm_via(const morphism& f_like, morphic_stream& src, std::size_t n) {
  if (!same_alphabet(f_like.target(), binary())) throw domain_error("reconstruction morphism must target {0,1}");
  return concat_image_prefix(f_like, src, n);
}

// Check-B: gaps between consecutive occurrences of 10, as p-check(Bbar).
inline word check_B_prefix(std::size_t n) {
  auto s = bbar();
  return concat_image_prefix(p_check(), s, n);
}

enum class inverse_r_target { ternary, four };

/// Undo r (or p on Bbar): 33 -> a (resp. a a-bar), 4 -> b, 2 -> c.
inline word inverse_r(const word& gaps, inverse_r_target target = inverse_r_target::ternary) {
  if (!same_alphabet(gaps.alpha(), gap_digits())) throw domain_error("inverse_r expects a word over {2,3,4}");
  constexpr symbol three = 1, four_ = 2;
  const bool to_four = target == inverse_r_target::four;
  std::vector<symbol> out;
  const auto& L = gaps.letters();
  std::size_t i = 0;
  while (i < L.size()) {
    if (L[i] == three) {
      std::size_t run = i;
      while (run < L.size() && L[run] == three) ++run;
      std::size_t len = run - i;
      if (len % 2 != 0) throw parse_error("odd run of 3s", i);
      for (std::size_t k = 0; k < len / 2; ++k) {
        if (to_four) {
          out.push_back(0);
          out.push_back(1);
        } else {
          out.push_back(0);
        }
      }
      i = run;
    } else if (L[i] == four_) {
      out.push_back(to_four ? 2 : 1);
      ++i;
    } else {
      out.push_back(to_four ? 3 : 2);
      ++i;
    }
  }
  return word(to_four ? four() : ternary(), std::move(out));
}

/// Result of splitting a prefix of Abar into a (b(e,e'))(b(e,e'))... where
/// b(e,e') = b c (a c)^e b-hat a (c a)^e'.
struct bblock_parse {
  std::vector<std::pair<int, int>> blocks;
  std::size_t remainder_offset = 0;  // start of the trailing undetermined part
  bool valid = true;
  std::optional<std::size_t> failure_index;
};

inline bblock_parse bblock_decompose(const word& abar_prefix) {
  if (!same_alphabet(abar_prefix.alpha(), berstel())) throw domain_error("block decomposition expects a word over {a,b,b̂,c}");
  constexpr symbol A = 0, B = 1, BH = 2, C = 3;
  const auto& w = abar_prefix.letters();
  const std::size_t n = w.size();
  bblock_parse res;
  auto fail = [&](std::size_t at) {
    res.valid = false;
    res.failure_index = at;
    return res;
  };
  if (n == 0) return res;
  if (w[0] != A) return fail(0);
  std::size_t pos = 1;
  res.remainder_offset = 1;
  // Matches `pattern` at i, allowing truncation at the end of input.
  // Returns 1 on full match, 0 on truncated match, -1 on mismatch (sets bad).
  std::size_t bad = 0;
  auto match = [&](std::size_t i, std::initializer_list<symbol> pattern) -> int {
    std::size_t k = 0;
    for (symbol s : pattern) {
      if (i + k >= n) return 0;
      if (w[i + k] != s) {
        bad = i + k;
        return -1;
      }
      ++k;
    }
    return 1;
  };
  while (pos < n) {
    std::size_t i = pos;
    int m = match(i, {B, C});
    if (m < 0) return fail(bad);
    if (m == 0) break;
    i += 2;
    if (i >= n) break;
    int e = 0;
    if (w[i] == A) {
      m = match(i, {A, C});
      if (m < 0) return fail(bad);
      if (m == 0) break;
      e = 1;
      i += 2;
    }
    m = match(i, {BH, A});
    if (m < 0) return fail(bad);
    if (m == 0) break;
    i += 2;
    if (i >= n) break;  // cannot tell whether (c a) follows
    int e2 = 0;
    if (w[i] == C) {
      m = match(i, {C, A});
      if (m < 0) return fail(bad);
      if (m == 0) break;
      e2 = 1;
      i += 2;
    } else if (w[i] != B) {
      return fail(i);
    }
    res.blocks.emplace_back(e, e2);
    pos = i;
    res.remainder_offset = pos;
  }
  return res;
}

/// Greedy split into the base words abc, ac, b-hat (indices 0, 1, 2), or
/// nullopt if the word is not such a concatenation.
inline std::optional<std::vector<int>> base_word_parse(const word& w) {
  if (!same_alphabet(w.alpha(), berstel())) throw domain_error("base word parse expects a word over {a,b,b̂,c}");
  constexpr symbol A = 0, B = 1, BH = 2, C = 3;
  const auto& L = w.letters();
  std::vector<int> out;
  std::size_t i = 0;
  while (i < L.size()) {
    if (L[i] == BH) {
      out.push_back(2);
      i += 1;
    } else if (L[i] == A && i + 2 < L.size() && L[i + 1] == B && L[i + 2] == C) {
      out.push_back(0);
      i += 3;
    } else if (L[i] == A && i + 1 < L.size() && L[i + 1] == C) {
      out.push_back(1);
      i += 2;
    } else {
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace tmseq::catalog
