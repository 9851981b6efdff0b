#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace paradox {

// Bit sequence v_0 ... v_{j-1}, packed 64 bits per word, with a cached count
// of ones. Bit k is the parity of the k-th iterate.
class ParityVector {
 public:
  ParityVector() = default;
  explicit ParityVector(std::size_t length);

  // Parses a plain binary word such as "0110".
  static ParityVector from_string(std::string_view bits);

  std::size_t size() const { return size_; }
  std::size_t ones() const { return ones_; }
  bool empty() const { return size_ == 0; }

  bool operator[](std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }
  void set(std::size_t i, bool bit);

  // "0110"
  std::string to_string() const;
  // Run-length form, e.g. "1^2 0^3 1" for 110001.
  std::string run_length() const;

  friend bool operator==(const ParityVector& a, const ParityVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  // Lexicographic on the binary words; shorter words first on a common prefix.
  friend std::strong_ordering operator<=>(const ParityVector& a,
                                          const ParityVector& b);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  std::size_t ones_ = 0;
};

}  // namespace paradox
