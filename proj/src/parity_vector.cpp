#include "paradox/parity_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace paradox {

ParityVector::ParityVector(std::size_t length)
    : words_((length + 63) / 64, 0), size_(length) {}

ParityVector ParityVector::from_string(std::string_view bits) {
  ParityVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw std::invalid_argument("parity vector must consist of 0 and 1: " +
                                  std::string(bits));
    }
    v.set(i, bits[i] == '1');
  }
  return v;
}

void ParityVector::set(std::size_t i, bool bit) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  std::uint64_t& w = words_[i / 64];
  const bool was = (w & mask) != 0;
  if (was == bit) return;
  if (bit) {
    w |= mask;
    ++ones_;
  } else {
    w &= ~mask;
    --ones_;
  }
}

std::string ParityVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::string ParityVector::run_length() const {
  std::string out;
  std::size_t i = 0;
  while (i < size_) {
    const bool bit = (*this)[i];
    std::size_t run = 1;
    while (i + run < size_ && (*this)[i + run] == bit) ++run;
    if (!out.empty()) out += ' ';
    out += bit ? '1' : '0';
    if (run > 1) out += "^" + std::to_string(run);
    i += run;
  }
  return out;
}

std::strong_ordering operator<=>(const ParityVector& a, const ParityVector& b) {
  const std::size_t common = std::min(a.size_, b.size_);
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] != b[i]) return a[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.size_ <=> b.size_;
}

}  // namespace paradox
