#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace efalloc {

/// Exact nonnegative rational, always in lowest terms.
///
/// Used for every probability in the library (lottery weights, profile
/// weights, top-choice probabilities, EF-probabilities) and also for the
/// positive dual potentials of the multiplicative assignment solver, so
/// values above one are allowed. Construction sites that need a value in
/// [0, 1] check it with is_probability().
class Prob {
 public:
  Prob() = default;
  Prob(std::uint64_t num, std::uint64_t den = 1);
  explicit Prob(const mpq_class& q);

  static Prob zero() { return Prob{}; }
  static Prob one() { return Prob{1}; }

  /// Parses "n/d", "n" or a plain decimal such as "0.125". Decimals are
  /// converted digit-by-digit, never through a binary float.
  static Prob parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_probability() const { return q_ <= 1; }

  /// Always "num/den", including "0/1" and "1/1".
  std::string str() const;

  Prob& operator+=(const Prob& o);
  /// Throws std::domain_error if the result would be negative.
  Prob& operator-=(const Prob& o);
  Prob& operator*=(const Prob& o);
  /// Throws std::domain_error on division by zero.
  Prob& operator/=(const Prob& o);

  friend Prob operator+(Prob a, const Prob& b) { return a += b; }
  friend Prob operator-(Prob a, const Prob& b) { return a -= b; }
  friend Prob operator*(Prob a, const Prob& b) { return a *= b; }
  friend Prob operator/(Prob a, const Prob& b) { return a /= b; }

  friend bool operator==(const Prob& a, const Prob& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Prob& a, const Prob& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

/// 1/k for a positive integer k.
inline Prob reciprocal(std::uint64_t k) { return Prob{1, k}; }

/// Integer power by repeated squaring.
Prob pow(Prob base, unsigned exponent);

}  // namespace efalloc
