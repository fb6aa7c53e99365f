#pragma once

#include <string>
#include <vector>

#include "tmseq/tmseq.hpp"

namespace testutil {

// Map library words to the single-char strings used by the oracles.
inline std::string chars(const tmseq::word& w, const std::string& table) {
  std::string s;
  for (auto x : w.letters()) s += table.at(x);
  return s;
}

inline const std::string four_chars = "aAbc";
inline const std::string berstel_chars = "abBc";
inline const std::string k_chars = "aPQLRlr";
inline const std::string ternary_chars = "abc";
inline const std::string binary_chars = "01";

inline std::vector<std::uint64_t> gap_digits(const tmseq::word& w) { return tmseq::catalog::gap_values(w); }

}  // namespace testutil
