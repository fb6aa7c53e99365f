#pragma once

// Prefix-based evidence about k-kernels, squares and arithmetic subsequences.
// Equal fingerprints prove nothing; distinct fingerprints prove the
// subsequences differ.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tmseq/error.hpp"

namespace tmseq::kernel {

struct kernel_element {
  unsigned depth;
  std::uint64_t offset;  // 0 <= offset < k^depth
};

struct kernel_report {
  unsigned k = 0;
  std::size_t L = 0;
  unsigned max_depth = 0;
  std::vector<kernel_element> elements;   // first representative of each fingerprint
  std::vector<std::size_t> new_per_depth; // new fingerprints found at depth 0..explored
  std::vector<std::size_t> total_per_depth;
  bool closed = false;                    // the last explored depth added nothing
  unsigned explored_depth = 0;

  std::size_t count() const { return elements.size(); }
};

/// Smallest prefix length explore_kernel needs.
inline std::size_t kernel_prefix_needed(unsigned k, unsigned max_depth, std::size_t L) {
  std::size_t kj = 1;
  for (unsigned j = 0; j < max_depth; ++j) kj *= k;
  return kj * L;
}

/// Breadth-first closure of the k-kernel of seq under n -> kn + r, comparing
/// the first L terms. Only new fingerprints are expanded.
template <class T>
kernel_report explore_kernel(std::span<const T> seq, unsigned k, unsigned max_depth, std::size_t L) {
  if (k < 2) throw domain_error("kernel base must be at least 2");
  if (L < 1) throw domain_error("fingerprint length must be positive");
  const std::size_t need = kernel_prefix_needed(k, max_depth, L);
  if (seq.size() < need) throw budget_exceeded("kernel exploration needs a longer prefix", need, seq.size());
  kernel_report rep;
  rep.k = k;
  rep.L = L;
  rep.max_depth = max_depth;
  std::map<std::vector<T>, std::size_t> seen;
  auto fingerprint = [&](std::uint64_t offset, std::uint64_t stride) {
    std::vector<T> fp(L);
    for (std::size_t n = 0; n < L; ++n) fp[n] = seq[offset + stride * n];
    return fp;
  };
  std::vector<std::uint64_t> frontier{0};
  seen.emplace(fingerprint(0, 1), 0);
  rep.elements.push_back({0, 0});
  rep.new_per_depth.push_back(1);
  rep.total_per_depth.push_back(1);
  std::uint64_t stride = 1;
  for (unsigned j = 1; j <= max_depth; ++j) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t off : frontier) {
      for (unsigned r = 0; r < k; ++r) {
        std::uint64_t child = off + r * stride;
        if (seen.emplace(fingerprint(child, stride * k), rep.elements.size()).second) {
          rep.elements.push_back({j, child});
          next.push_back(child);
        }
      }
    }
    stride *= k;
    rep.new_per_depth.push_back(next.size());
    rep.total_per_depth.push_back(rep.elements.size());
    rep.explored_depth = j;
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  rep.closed = frontier.empty();
  return rep;
}

struct square {
  std::size_t index;
  std::size_t half;  // |C| for the square CC
  friend bool operator==(const square&, const square&) = default;
};

inline constexpr std::size_t default_max_half = 512;

namespace detail {

// For half-length p: start indices i where seq[i..i+p) == seq[i+p..i+2p).
template <class T, class F>
void squares_of_half(std::span<const T> seq, std::size_t p, F&& emit) {
  const std::size_t n = seq.size();
  if (2 * p > n) return;
  // run = number of consecutive matches seq[x] == seq[x+p] starting at x,
  // computed from the right.
  std::vector<std::uint32_t> run(n - p + 1, 0);
  for (std::size_t x = n - p; x-- > 0;) run[x] = seq[x] == seq[x + p] ? run[x + 1] + 1 : 0;
  for (std::size_t i = 0; i + 2 * p <= n; ++i) {
    if (run[i] >= p) emit(i);
  }
}

}  // namespace detail

/// Leftmost, then shortest, square CC with 1 <= |C| <= max_half.
template <class T>
std::optional<square> first_square(std::span<const T> seq, std::size_t max_half = default_max_half) {
  std::optional<square> best;
  for (std::size_t p = 1; p <= max_half && 2 * p <= seq.size(); ++p) {
    bool found = false;
    detail::squares_of_half(seq, p, [&](std::size_t i) {
      if (!found) {
        found = true;
        if (!best || i < best->index) best = square{i, p};
      }
    });
  }
  return best;
}

template <class T>
bool is_squarefree(std::span<const T> seq, std::size_t max_half = default_max_half) {
  return !first_square(seq, max_half).has_value();
}

/// Every square with |C| <= max_half, ordered by index then half length.
template <class T>
std::vector<square> all_squares(std::span<const T> seq, std::size_t max_half = default_max_half) {
  std::vector<square> out;
  for (std::size_t p = 1; p <= max_half && 2 * p <= seq.size(); ++p) {
    detail::squares_of_half(seq, p, [&](std::size_t i) { out.push_back({i, p}); });
  }
  std::sort(out.begin(), out.end(), [](const square& a, const square& b) {
    return a.index != b.index ? a.index < b.index : a.half < b.half;
  });
  return out;
}

/// Least n <= budget with seq[l1 + n m] != seq[l2 + n m], or nullopt.
template <class T>
std::optional<std::uint64_t> distinct_arith_witness(std::span<const T> seq, std::uint64_t m, std::uint64_t l1,
                                                    std::uint64_t l2, std::uint64_t budget) {
  if (m < 1 || l1 >= l2 || l2 >= m) throw domain_error("need 0 <= l1 < l2 < m");
  for (std::uint64_t n = 0; n <= budget; ++n) {
    const std::uint64_t hi = l2 + n * m;
    if (hi >= seq.size()) throw budget_exceeded("arithmetic witness search ran past the prefix", hi + 1, seq.size());
    if (seq[l1 + n * m] != seq[hi]) return n;
  }
  return std::nullopt;
}

}  // namespace tmseq::kernel
