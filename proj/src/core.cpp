#include "paradox/core.hpp"

#include <stdexcept>

namespace paradox {

std::string_view to_string(Formalism f) {
  return f == Formalism::Shortcut ? "shortcut" : "classic";
}

Formalism parse_formalism(std::string_view name) {
  if (name == "shortcut" || name == "T") return Formalism::Shortcut;
  if (name == "classic" || name == "Col") return Formalism::Classic;
  throw std::invalid_argument("unknown formalism: " + std::string(name));
}

mpz_class pow3(std::uint64_t q) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, q);
  return r;
}

mpz_class pow2(std::uint64_t e) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), e);
  return r;
}

mpz_class Dyadic::denominator() const { return pow2(exp2_); }

Dyadic Dyadic::canonical() const {
  if (num_ == 0) return Dyadic(0, 0);
  const std::uint64_t twos = mpz_scan1(num_.get_mpz_t(), 0);
  const std::uint64_t strip = std::min<std::uint64_t>(twos, exp2_);
  mpz_class n;
  mpz_fdiv_q_2exp(n.get_mpz_t(), num_.get_mpz_t(), strip);
  return Dyadic(std::move(n), exp2_ - strip);
}

mpq_class Dyadic::to_rational() const {
  mpq_class r(num_, denominator());
  r.canonicalize();
  return r;
}

std::string Dyadic::to_string() const {
  const Dyadic c = canonical();
  if (c.exp2_ == 0) return c.num_.get_str();
  return c.num_.get_str() + "/" + c.denominator().get_str();
}

namespace {

// Brings both numerators to the common exponent max(exp2).
std::pair<mpz_class, mpz_class> aligned(const Dyadic& a, const Dyadic& b) {
  mpz_class x = a.num();
  mpz_class y = b.num();
  if (a.exp2() < b.exp2()) {
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), b.exp2() - a.exp2());
  } else {
    mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), a.exp2() - b.exp2());
  }
  return {std::move(x), std::move(y)};
}

}  // namespace

bool operator==(const Dyadic& a, const Dyadic& b) {
  const auto [x, y] = aligned(a, b);
  return x == y;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const auto [x, y] = aligned(a, b);
  const int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic LinearForm::coefficient() const { return Dyadic(pow3(q), e); }

bool LinearForm::coefficient_below_one() const {
  // 3^q and 2^e never coincide unless q == e == 0, so the bit length of 3^q
  // decides the comparison.
  if (q == 0) return e > 0;
  return mpz_sizeinbase(pow3(q).get_mpz_t(), 2) <= e;
}

bool LinearForm::holds_for(const Natural& start, const Natural& iterate) const {
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), iterate.get_mpz_t(), e);
  return Dyadic(scaled - pow3(q) * start, e) == remainder;
}

Natural step(const Natural& n, Formalism f) {
  if (sgn(n) <= 0) throw std::invalid_argument("Collatz map is defined on positive integers");
  Natural r;
  if (mpz_odd_p(n.get_mpz_t())) {
    r = 3 * n + 1;
    if (f == Formalism::Shortcut) mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), 1);
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), n.get_mpz_t(), 1);
  }
  return r;
}

LinearForm advance_form(const LinearForm& form, bool current_is_odd, Formalism f) {
  // With E = N / 2^e: an odd step maps N to 3N + 2^e; a halving only bumps e.
  LinearForm next = form;
  mpz_class num = form.remainder.num();
  std::uint64_t exp2 = form.remainder.exp2();
  if (current_is_odd) {
    num *= 3;
    mpz_class one_scaled;
    mpz_setbit(one_scaled.get_mpz_t(), exp2);
    num += one_scaled;
    ++next.q;
    if (f == Formalism::Shortcut) {
      ++next.e;
      ++exp2;
    }
  } else {
    ++next.e;
    ++exp2;
  }
  next.remainder = Dyadic(std::move(num), exp2);
  return next;
}

Trajectory trajectory(const Natural& n, std::uint64_t j, Formalism f) {
  if (sgn(n) <= 0) throw std::invalid_argument("trajectory start must be positive");
  Trajectory t;
  t.start = n;
  t.formalism = f;
  t.iterates.reserve(j + 1);
  t.forms.reserve(j + 1);
  t.iterates.push_back(n);
  t.forms.emplace_back();
  for (std::uint64_t k = 0; k < j; ++k) {
    const Natural& cur = t.iterates.back();
    const bool odd = mpz_odd_p(cur.get_mpz_t());
    t.forms.push_back(advance_form(t.forms.back(), odd, f));
    t.iterates.push_back(step(cur, f));
  }
  return t;
}

ParityVector parity_vector(const Natural& n, std::size_t j, Formalism f) {
  ParityVector v(j);
  Natural cur = n;
  for (std::size_t k = 0; k < j; ++k) {
    v.set(k, mpz_odd_p(cur.get_mpz_t()));
    cur = step(cur, f);
  }
  return v;
}

TrajectoryWalker::TrajectoryWalker(Natural start, Formalism f)
    : start_(std::move(start)), formalism_(f) {
  if (sgn(start_) <= 0) throw std::invalid_argument("trajectory start must be positive");
  iterate_ = start_;
}

void TrajectoryWalker::advance() {
  const bool odd = mpz_odd_p(iterate_.get_mpz_t());
  form_ = advance_form(form_, odd, formalism_);
  iterate_ = step(iterate_, formalism_);
  ++steps_;
}

}  // namespace paradox
