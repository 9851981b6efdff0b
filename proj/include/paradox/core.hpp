#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "paradox/parity_vector.hpp"

namespace paradox {

// Unbounded non-negative integer. Every iterate, power of 3 and power of 2
// lives here; values are never narrowed.
using Natural = mpz_class;

enum class Formalism {
  Shortcut,  // n -> (3n+1)/2 or n/2
  Classic,   // n -> 3n+1 or n/2
};

std::string_view to_string(Formalism f);
// Accepts "shortcut" / "classic" (also "T" / "Col"); throws std::invalid_argument.
Formalism parse_formalism(std::string_view name);

// Exact rational num / 2^exp2. Values are not stored canonically; equality
// and ordering cross-multiply by powers of two.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(mpz_class num, std::uint64_t exp2) : num_(std::move(num)), exp2_(exp2) {}

  const mpz_class& num() const { return num_; }
  std::uint64_t exp2() const { return exp2_; }
  mpz_class denominator() const;

  // Strips common factors of two.
  Dyadic canonical() const;
  mpq_class to_rational() const;
  // "num/den" in lowest terms ("0" and plain integers without a slash).
  std::string to_string() const;

  friend bool operator==(const Dyadic& a, const Dyadic& b);
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  mpz_class num_ = 0;
  std::uint64_t exp2_ = 0;
};

// iterate = (3^q / 2^e) * n + remainder, exactly. The remainder keeps
// exp2 == e so that advancing is a multiply-add with no reduction.
struct LinearForm {
  std::uint64_t q = 0;
  std::uint64_t e = 0;
  Dyadic remainder;

  Dyadic coefficient() const;
  // C < 1, decided as 3^q < 2^e.
  bool coefficient_below_one() const;
  // Checks iterate * 2^e == 3^q * n + remainder * 2^e.
  bool holds_for(const Natural& start, const Natural& iterate) const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// One application of the map. Throws std::invalid_argument for n == 0.
Natural step(const Natural& n, Formalism f);

LinearForm advance_form(const LinearForm& form, bool current_is_odd, Formalism f);

struct Trajectory {
  Natural start;
  Formalism formalism = Formalism::Shortcut;
  std::vector<Natural> iterates;   // length j + 1
  std::vector<LinearForm> forms;   // forms[k] describes iterates[k]

  std::size_t length() const { return iterates.size() - 1; }
  const Natural& last() const { return iterates.back(); }
  const LinearForm& final_form() const { return forms.back(); }
};

// Iterates 0..j of n with the linear forms maintained alongside.
Trajectory trajectory(const Natural& n, std::uint64_t j, Formalism f);

ParityVector parity_vector(const Natural& n, std::size_t j, Formalism f);

// Streaming counterpart of trajectory(): holds only the current iterate and
// its form.
class TrajectoryWalker {
 public:
  TrajectoryWalker(Natural start, Formalism f);

  const Natural& start() const { return start_; }
  const Natural& iterate() const { return iterate_; }
  const LinearForm& form() const { return form_; }
  std::uint64_t steps() const { return steps_; }
  Formalism formalism() const { return formalism_; }

  void advance();

 private:
  Natural start_;
  Natural iterate_;
  LinearForm form_;
  std::uint64_t steps_ = 0;
  Formalism formalism_;
};

mpz_class pow3(std::uint64_t q);
mpz_class pow2(std::uint64_t e);

}  // namespace paradox
