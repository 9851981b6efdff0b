#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "paradox/certified.hpp"

namespace paradox::detail {

// floor(j log2 / log3) from a cached enclosure; falls back to bit lengths
// when the enclosure straddles an integer.
class LogRatioFloor {
 public:
  LogRatioFloor();
  std::uint64_t operator()(std::uint64_t j) const;

 private:
  certified::Interval ratio_;
};

// Decides H(j) >= m for one fixed m across many j.
class HarmonicCap {
 public:
  explicit HarmonicCap(mpz_class m);
  bool holds(std::uint64_t j) const;
  const mpz_class& m() const { return m_; }

 private:
  bool holds_exact(std::uint64_t j, std::uint64_t q) const;

  mpz_class m_;
  LogRatioFloor floor_;
  certified::Interval log_growth_;  // log(3 + 1/m)
  certified::Interval ln2_;
};

}  // namespace paradox::detail
