#pragma once

// Positions of psi^{4mu}(a) in Bbar, the search for such positions in a
// prescribed residue class, and the exponential sums over the missing-digit
// set W_lambda.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "tmseq/catalog.hpp"
#include "tmseq/words.hpp"

namespace tmseq::residue {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

inline u64 pow16(unsigned k) {
  if (k > 15) throw domain_error("16^k overflows 64 bits");
  return u64{1} << (4 * k);
}

struct lengths {
  u64 a, b, c;
  friend bool operator==(const lengths&, const lengths&) = default;
};

/// |psi~^k(a)| = |psi~^k(a-bar)|, |psi~^k(b)|, |psi~^k(c)| with psi~ = psi^4.
inline lengths psi4_lengths(unsigned k) {
  const u64 p = pow16(k);
  return {p, (4 * p - 1) / 3, (2 * p + 1) / 3};
}

using matrix4 = std::array<std::array<u64, 4>, 4>;

/// Row x, column y: number of letters y in psi~(x).
inline matrix4 letter_counts_matrix() { return {{{4, 4, 4, 4}, {4, 4, 4, 4}, {5, 5, 6, 5}, {3, 3, 2, 3}}}; }

inline matrix4 multiply(const matrix4& x, const matrix4& y) {
  matrix4 z{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) z[i][j] += x[i][l] * y[l][j];
  return z;
}

/// Closed form of the k-th power of letter_counts_matrix(), k >= 1.
inline matrix4 letter_counts_matrix_power(unsigned k) {
  if (k < 1) throw domain_error("matrix power closed form needs k >= 1");
  const u64 p = pow16(k);
  const u64 q = p / 4, b = (p - 1) / 3, b2 = (p + 2) / 3, c = (p + 2) / 6, c2 = (p - 4) / 6;
  return {{{q, q, q, q}, {q, q, q, q}, {b, b, b2, b}, {c, c, c2, c}}};
}

/// A^(nu, eps).
inline u64 step_value(unsigned nu, unsigned eps) {
  const u64 p = pow16(nu);
  switch (eps) {
    case 0: return 0;
    case 1: return 4 * p;
    case 2: return 8 * p;
    case 3: return 12 * p + (4 * p - 1) / 3;
  }
  throw domain_error("position digit must be in 0..3");
}

/// Digits eps_mu, ..., eps_nu of a position N_eps.
struct position_spec {
  unsigned mu = 0;
  std::vector<unsigned> digits;

  unsigned nu() const { return mu + static_cast<unsigned>(digits.size()) - 1; }
};

inline u64 position_value(const position_spec& s) {
  u64 n = 0;
  for (std::size_t r = 0; r < s.digits.size(); ++r) n += step_value(s.mu + static_cast<unsigned>(r), s.digits[r]);
  return n;
}

/// Random access into Bbar through the lengths of psi^n(x).
class bbar_index {
 public:
  bbar_index() {
    len_.push_back({1, 1, 1, 1});
    const auto& psi = catalog::psi();
    while (len_.back()[0] < (u64{1} << 62)) {
      std::array<u64, 4> next{};
      for (symbol x = 0; x < 4; ++x) {
        for (symbol y : psi.image(x)) next[x] += len_.back()[y];
      }
      len_.push_back(next);
    }
  }

  symbol at(u64 i) const {
    std::size_t n = 0;
    while (len_[n][0] <= i) {
      if (++n == len_.size()) throw domain_error("index beyond random-access range");
    }
    symbol x = 0;
    const auto& psi = catalog::psi();
    while (n > 0) {
      for (symbol y : psi.image(x)) {
        if (i < len_[n - 1][y]) {
          x = y;
          break;
        }
        i -= len_[n - 1][y];
      }
      --n;
    }
    return x;
  }

 private:
  std::vector<std::array<u64, 4>> len_;
};

/// psi^{4mu}(a) occurs in Bbar at position_value(s).
inline bool verify_occurrence(const position_spec& s, std::size_t stream_budget = default_stream_budget()) {
  const u64 N = position_value(s);
  const u64 len = pow16(s.mu);
  auto stream = catalog::bbar();
  stream.set_budget(std::max<std::size_t>(stream_budget, len));
  auto pattern = stream.raw_prefix(len);
  const std::vector<symbol> factor(pattern.begin(), pattern.end());
  if (N + len <= stream_budget) {
    auto text = stream.raw_prefix(N + len);
    return std::equal(factor.begin(), factor.end(), text.begin() + static_cast<std::ptrdiff_t>(N));
  }
  static const bbar_index index;
  for (u64 i = 0; i < len; ++i) {
    if (index.at(N + i) != factor[i]) return false;
  }
  return true;
}

enum class phase : std::uint8_t { steer_2k = 1, pad = 2, steer_odd = 3, fallback = 4 };

struct hit {
  position_spec spec;
  std::vector<phase> phases;  // one per digit
  u64 value = 0;
};

namespace detail {

// Digits at positions first..first+len-1 (from `allowed`) reaching residue
// `target` mod d from `start`, shortest first; breadth-first over residues.
inline std::optional<std::vector<unsigned>> steer(unsigned first, u64 d, u64 start, u64 target, unsigned max_len,
                                                  const std::vector<unsigned>& allowed) {
  if (start % d == target % d) return std::vector<unsigned>{};
  struct node {
    u64 residue;
    std::size_t parent;
    unsigned digit;
  };
  std::vector<node> layer_nodes{{start % d, 0, 0}};
  std::vector<std::vector<node>> layers{layer_nodes};
  for (unsigned l = 0; l < max_len; ++l) {
    std::vector<char> seen(d, 0);
    std::vector<node> next;
    const auto& cur = layers.back();
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      for (unsigned e : allowed) {
        u64 r = static_cast<u64>((static_cast<u128>(cur[idx].residue) + step_value(first + l, e) % d) % d);
        if (seen[r]) continue;
        seen[r] = 1;
        next.push_back({r, idx, e});
        if (r == target % d) {
          std::vector<unsigned> digits(l + 1);
          digits[l] = e;
          std::size_t p = idx;
          for (unsigned back = l; back-- > 0;) {
            digits[back] = layers[back + 1][p].digit;
            p = layers[back + 1][p].parent;
          }
          return digits;
        }
      }
    }
    layers.push_back(std::move(next));
  }
  return std::nullopt;
}

inline u64 mod(std::int64_t a, u64 m) {
  auto r = a % static_cast<std::int64_t>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

}  // namespace detail

/// A position N_eps = a (mod m) with eps starting at mu, using at most
/// `bound` digits. Phase one appends 3s to fix N mod 2^k, phase two appends
/// digits 0, 1, 2 to fix N mod d where m = 2^k d. A complete search over all
/// digits is the fallback.
inline std::optional<hit> hit_residue_class(unsigned mu, u64 m, std::int64_t a, unsigned bound) {
  if (m < 1) throw domain_error("modulus must be positive");
  if (mu + bound > 15) throw domain_error("digit bound too large for 64-bit positions");
  const u64 target = detail::mod(a, m);
  unsigned k = 0;
  u64 d = m;
  while (d % 2 == 0) {
    d /= 2;
    ++k;
  }
  const u64 pk = u64{1} << k;
  auto finish = [&](position_spec spec, std::vector<phase> ph) -> std::optional<hit> {
    if (spec.digits.empty()) {
      spec.digits.push_back(0);
      ph.push_back(phase::pad);
    }
    u64 v = position_value(spec);
    if (v % m != target) return std::nullopt;
    return hit{std::move(spec), std::move(ph), v};
  };

  // Phase one.
  position_spec spec{mu, {}};
  std::vector<phase> ph;
  u64 kappa1 = 0;
  bool phase1_ok = false;
  for (unsigned l = 0; l <= bound; ++l) {
    if (kappa1 % pk == target % pk) {
      phase1_ok = true;
      break;
    }
    if (l == bound) break;
    spec.digits.push_back(3);
    ph.push_back(phase::steer_2k);
    kappa1 += step_value(mu + l, 3);
  }
  if (phase1_ok) {
    // 4 * 16^r is divisible by 2^k once 4r + 2 >= k.
    unsigned lambda = mu + static_cast<unsigned>(spec.digits.size());
    while (4 * lambda + 2 < k) {
      spec.digits.push_back(0);
      ph.push_back(phase::pad);
      ++lambda;
    }
    if (spec.digits.size() <= bound) {
      const u64 t2 = detail::mod(static_cast<std::int64_t>(target % d) - static_cast<std::int64_t>(kappa1 % d), d);
      auto tail = detail::steer(lambda, d, 0, t2, bound - static_cast<unsigned>(spec.digits.size()), {0, 1, 2});
      if (tail) {
        for (unsigned e : *tail) {
          spec.digits.push_back(e);
          ph.push_back(phase::steer_odd);
        }
        if (auto h = finish(spec, ph)) return h;
      }
    }
  }

  // Fallback: shortest digit vector over {0,1,2,3}.
  auto all = detail::steer(mu, m, 0, target, bound, {0, 1, 2, 3});
  if (!all) return std::nullopt;
  position_spec fb{mu, *all};
  return finish(fb, std::vector<phase>(all->size(), phase::fallback));
}

using cplx = std::complex<double>;

/// e(x) = exp(2 pi i x) for x = num/den, reduced exactly first.
inline cplx e_frac(u64 num, u64 den) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den);
  return {std::cos(t), std::sin(t)};
}

/// U(num/den) = (e(0) + e(4 num/den) + e(8 num/den)) / 3.
inline cplx U_value(u64 num, u64 den) {
  const u64 r = num % den;
  return (cplx(1.0) + e_frac(static_cast<u64>((static_cast<u128>(4) * r) % den), den) +
          e_frac(static_cast<u64>((static_cast<u128>(8) * r) % den), den)) /
         3.0;
}

inline cplx U_value(double alpha) {
  auto e = [](double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); };
  return (cplx(1.0) + e(4 * alpha) + e(8 * alpha)) / 3.0;
}

/// G(l/d, lambda, nu) as the product of U(16^r l / d), lambda <= r < nu.
inline cplx G_product(u64 ell, u64 d, unsigned lambda, unsigned nu) {
  if (d < 1) throw domain_error("denominator must be positive");
  if (lambda > nu) throw domain_error("need lambda <= nu");
  u64 x = ell % d;
  for (unsigned r = 0; r < lambda; ++r) x = static_cast<u64>((static_cast<u128>(x) * 16) % d);
  cplx g(1.0);
  for (unsigned r = lambda; r < nu; ++r) {
    g *= U_value(x, d);
    x = static_cast<u64>((static_cast<u128>(x) * 16) % d);
  }
  return g;
}

/// |(1 + z_1 + ... + z_{q-1}) / q| <= 1 - max(1 - Re z_j) / (2q) + eps.
inline bool delange_bound_check(const std::vector<cplx>& zs, double eps = 1e-12) {
  const double q = static_cast<double>(zs.size() + 1);
  cplx s(1.0);
  double worst = 0.0;
  for (auto z : zs) {
    s += z;
    worst = std::max(worst, 1.0 - z.real());
  }
  return std::abs(s / q) <= 1.0 - worst / (2.0 * q) + eps;
}

/// n is a multiple of 16^lambda with base-16 digits in {0, 4, 8}.
inline bool in_W(u64 n, unsigned lambda) {
  for (unsigned r = 0; n > 0; ++r, n >>= 4) {
    const u64 digit = n & 15;
    if (r < lambda && digit != 0) return false;
    if (digit != 0 && digit != 4 && digit != 8) return false;
  }
  return true;
}

/// W_lambda intersected with [0, 16^eta), ascending.
inline std::vector<u64> enumerate_W(unsigned lambda, unsigned eta) {
  std::vector<u64> out{0};
  for (unsigned r = eta; r-- > lambda;) {
    std::vector<u64> next;
    next.reserve(out.size() * 3);
    for (u64 e = 0; e < 3; ++e)
      for (u64 x : out) next.push_back(x + 4 * e * pow16(r));
    out = std::move(next);
  }
  if (eta <= lambda) return {0};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tmseq::residue
