#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmseq/error.hpp"

namespace tmseq {

using symbol = std::uint8_t;

/// Ordered set of letter names. A letter is identified by its index.
class alphabet {
 public:
  explicit alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty() || names_.size() > 256) {
      throw domain_error("alphabet must have between 1 and 256 letters");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw domain_error("alphabet letter names must be nonempty");
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw domain_error("duplicate alphabet letter '" + names_[i] + "'");
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<symbol> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<symbol>(i);
    }
    return std::nullopt;
  }

  friend bool operator==(const alphabet&, const alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

using alphabet_ptr = std::shared_ptr<const alphabet>;

inline alphabet_ptr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const alphabet>(std::move(names));
}

inline bool same_alphabet(const alphabet_ptr& a, const alphabet_ptr& b) {
  return a == b || (a && b && *a == *b);
}

/// Finite word over an alphabet.
class word {
 public:
  explicit word(alphabet_ptr alpha, std::vector<symbol> letters = {})
      : alpha_(std::move(alpha)), letters_(std::move(letters)) {
    if (!alpha_) throw domain_error("word needs an alphabet");
    for (symbol s : letters_) {
      if (s >= alpha_->size()) throw domain_error("letter index out of range for alphabet");
    }
  }

  // Greedy longest-name tokenizer; whitespace between letters is ignored.
  static word parse(alphabet_ptr alpha, std::string_view text) {
    std::vector<symbol> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n') {
        ++pos;
        continue;
      }
      std::size_t best_len = 0;
      symbol best = 0;
      for (std::size_t i = 0; i < alpha->size(); ++i) {
        const auto& n = alpha->name(static_cast<symbol>(i));
        if (n.size() > best_len && text.substr(pos, n.size()) == n) {
          best_len = n.size();
          best = static_cast<symbol>(i);
        }
      }
      if (best_len == 0) throw parse_error("unknown letter", pos);
      letters.push_back(best);
      pos += best_len;
    }
    return word(std::move(alpha), std::move(letters));
  }

  const alphabet_ptr& alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  symbol operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<symbol>& letters() const noexcept { return letters_; }

  word prefix(std::size_t n) const {
    n = std::min(n, letters_.size());
    return word(alpha_, std::vector<symbol>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  word substr(std::size_t pos, std::size_t len) const {
    pos = std::min(pos, letters_.size());
    len = std::min(len, letters_.size() - pos);
    auto first = letters_.begin() + static_cast<std::ptrdiff_t>(pos);
    return word(alpha_, std::vector<symbol>(first, first + static_cast<std::ptrdiff_t>(len)));
  }

  bool starts_with(const word& other) const {
    return same_alphabet(alpha_, other.alpha_) && other.size() <= size() &&
           std::equal(other.letters_.begin(), other.letters_.end(), letters_.begin());
  }

  std::string str(std::string_view sep = "") const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += sep;
      out += alpha_->name(letters_[i]);
    }
    return out;
  }

  friend bool operator==(const word& a, const word& b) {
    return same_alphabet(a.alpha_, b.alpha_) && a.letters_ == b.letters_;
  }

 private:
  alphabet_ptr alpha_;
  std::vector<symbol> letters_;
};

/// Nonerasing morphism source* -> target*. Codings are the case where every
/// image has length one.
class morphism {
 public:
  morphism(alphabet_ptr source, alphabet_ptr target, std::vector<std::vector<symbol>> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (!source_ || !target_) throw domain_error("morphism needs source and target alphabets");
    if (images_.size() != source_->size()) throw domain_error("morphism needs one image per source letter");
    for (const auto& img : images_) {
      if (img.empty()) throw domain_error("morphism images must be nonempty");
      for (symbol s : img) {
        if (s >= target_->size()) throw domain_error("morphism image letter outside target alphabet");
      }
    }
  }

  // Images given as strings over the target alphabet, in source letter order.
  static morphism from_strings(alphabet_ptr source, alphabet_ptr target,
                               std::initializer_list<std::string_view> images) {
    std::vector<std::vector<symbol>> imgs;
    for (auto s : images) imgs.push_back(word::parse(target, s).letters());
    return morphism(std::move(source), std::move(target), std::move(imgs));
  }

  const alphabet_ptr& source() const noexcept { return source_; }
  const alphabet_ptr& target() const noexcept { return target_; }
  const std::vector<symbol>& image(symbol s) const { return images_.at(s); }
  bool is_endomorphism() const { return same_alphabet(source_, target_); }

  bool is_coding() const {
    return std::all_of(images_.begin(), images_.end(), [](const auto& img) { return img.size() == 1; });
  }

  std::size_t max_image_length() const {
    std::size_t m = 0;
    for (const auto& img : images_) m = std::max(m, img.size());
    return m;
  }

 private:
  alphabet_ptr source_;
  alphabet_ptr target_;
  std::vector<std::vector<symbol>> images_;
};

inline word apply(const morphism& m, const word& w) {
  if (!same_alphabet(m.source(), w.alpha())) throw domain_error("word is not over the morphism's source alphabet");
  std::vector<symbol> out;
  out.reserve(w.size() * m.max_image_length());
  for (symbol s : w.letters()) {
    const auto& img = m.image(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return word(m.target(), std::move(out));
}

inline constexpr std::size_t builtin_stream_budget = std::size_t{1} << 22;

// TMSEQ_STREAM_BUDGET overrides the default letter budget of every stream.
inline std::size_t default_stream_budget() {
  if (const char* env = std::getenv("TMSEQ_STREAM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return builtin_stream_budget;
}

/// Lazily extended prefix of the fixed point of a prolongable morphism,
/// optionally read through a coding.
///
/// The buffer always equals the concatenated images of its first `expanded_`
/// letters, so it is a prefix of the fixed point at every moment. Extension is
/// single-writer; copies of returned prefixes are independent values.
class morphic_stream {
 public:
  morphic_stream(morphism m, symbol seed, std::optional<morphism> coding = std::nullopt,
                 std::size_t budget = default_stream_budget())
      : m_(std::move(m)), seed_(seed), coding_(std::move(coding)), budget_(budget) {
    if (!m_.is_endomorphism()) throw domain_error("fixed-point stream needs an endomorphism");
    if (seed >= m_.source()->size()) throw domain_error("seed outside alphabet");
    const auto& img = m_.image(seed);
    if (img.size() < 2 || img.front() != seed) {
      throw domain_error("morphism is not prolongable on seed '" + m_.source()->name(seed) + "'");
    }
    if (coding_) {
      if (!coding_->is_coding()) throw domain_error("stream coding must map letters to single letters");
      if (!same_alphabet(coding_->source(), m_.target())) throw domain_error("coding source must be the stream alphabet");
    }
    buffer_ = img;
    expanded_ = 1;
  }

  const morphism& substitution() const noexcept { return m_; }
  symbol seed() const noexcept { return seed_; }
  const std::optional<morphism>& coding() const noexcept { return coding_; }
  std::size_t budget() const noexcept { return budget_; }
  void set_budget(std::size_t b) noexcept { budget_ = b; }

  /// Alphabet of the letters returned by prefix()/at().
  const alphabet_ptr& output_alphabet() const { return coding_ ? coding_->target() : m_.target(); }

  /// Uncoded fixed-point letters [0, n).
  std::span<const symbol> raw_prefix(std::size_t n) {
    ensure(n);
    return std::span<const symbol>(buffer_.data(), n);
  }

  word raw_word(std::size_t n) {
    auto sp = raw_prefix(n);
    return word(m_.target(), std::vector<symbol>(sp.begin(), sp.end()));
  }

  /// First n letters of the coded fixed point.
  word prefix(std::size_t n) {
    auto sp = raw_prefix(n);
    std::vector<symbol> out(sp.begin(), sp.end());
    if (coding_) {
      for (auto& s : out) s = coding_->image(s).front();
    }
    return word(output_alphabet(), std::move(out));
  }

  symbol at(std::size_t i) {
    ensure(i + 1);
    symbol s = buffer_[i];
    return coding_ ? coding_->image(s).front() : s;
  }

  void ensure(std::size_t n) {
    if (n > budget_) throw budget_exceeded("stream prefix exceeds letter budget", n, budget_);
    while (buffer_.size() < n) {
      const auto& img = m_.image(buffer_[expanded_]);
      buffer_.insert(buffer_.end(), img.begin(), img.end());
      ++expanded_;
    }
  }

  std::size_t buffered() const noexcept { return buffer_.size(); }

 private:
  morphism m_;
  symbol seed_;
  std::optional<morphism> coding_;
  std::size_t budget_;
  std::vector<symbol> buffer_;
  std::size_t expanded_ = 0;
};

/// Start indices of every (possibly overlapping) occurrence of w in text, ascending.
inline std::vector<std::size_t> occurrences(std::span<const symbol> text, std::span<const symbol> w) {
  std::vector<std::size_t> out;
  if (w.empty() || w.size() > text.size()) return out;
  auto it = text.begin();
  while (true) {
    it = std::search(it, text.end(), w.begin(), w.end());
    if (it == text.end()) break;
    out.push_back(static_cast<std::size_t>(it - text.begin()));
    ++it;
  }
  return out;
}

inline std::vector<std::size_t> occurrences(morphic_stream& s, const word& w, std::size_t horizon) {
  if (w.empty()) throw domain_error("occurrence search needs a nonempty word");
  if (horizon < w.size()) throw domain_error("horizon shorter than the searched word");
  if (!same_alphabet(w.alpha(), s.output_alphabet())) throw domain_error("word is not over the stream alphabet");
  word text = s.prefix(horizon);
  return occurrences(std::span<const symbol>(text.letters()), std::span<const symbol>(w.letters()));
}

inline std::vector<std::uint64_t> successive_differences(const std::vector<std::size_t>& xs) {
  std::vector<std::uint64_t> d;
  for (std::size_t i = 1; i < xs.size(); ++i) d.push_back(xs[i] - xs[i - 1]);
  return d;
}

/// First `count` gaps between consecutive occurrences of w, scanning a
/// doubling horizon up to the stream budget.
inline std::vector<std::uint64_t> gaps_by_scan(morphic_stream& s, const word& w, std::size_t count) {
  if (w.empty()) throw domain_error("gap scan needs a nonempty word");
  if (!same_alphabet(w.alpha(), s.output_alphabet())) throw domain_error("word is not over the stream alphabet");
  std::size_t horizon = std::max<std::size_t>(64, 4 * w.size());
  while (true) {
    horizon = std::min(horizon, s.budget());
    word text = s.prefix(horizon);
    auto occ = occurrences(std::span<const symbol>(text.letters()), std::span<const symbol>(w.letters()));
    if (occ.size() >= count + 1) {
      occ.resize(count + 1);
      return successive_differences(occ);
    }
    if (horizon >= s.budget()) {
      throw budget_exceeded("not enough occurrences of '" + w.str() + "' within the scan budget", horizon + 1,
                            s.budget());
    }
    horizon *= 2;
  }
}

}  // namespace tmseq
