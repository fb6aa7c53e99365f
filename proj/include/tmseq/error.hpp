#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmseq {

// Precondition or domain violation (bad input word, not a factor, ...).
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stream or search needed more letters than its budget allows.
class budget_exceeded : public std::runtime_error {
 public:
  budget_exceeded(const std::string& what, std::size_t requested, std::size_t budget)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", budget " + std::to_string(budget) + ")"),
        requested_(requested),
        budget_(budget) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t requested_;
  std::size_t budget_;
};

class parse_error : public domain_error {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : domain_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace tmseq
