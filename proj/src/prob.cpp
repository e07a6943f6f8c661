#include "efalloc/prob.hpp"

#include <cctype>
#include <stdexcept>

namespace efalloc {

Prob::Prob(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::domain_error("Prob: zero denominator");
  // mpz_class has no portable uint64 constructor.
  mpz_class n, d;
  mpz_import(n.get_mpz_t(), 1, 1, sizeof(num), 0, 0, &num);
  mpz_import(d.get_mpz_t(), 1, 1, sizeof(den), 0, 0, &den);
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Prob::Prob(const mpq_class& q) : q_(q) {
  q_.canonicalize();
  if (sgn(q_) < 0) throw std::domain_error("Prob: negative value");
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class to_mpz(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Prob Prob::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational: " + std::string(text));
    mpz_class d = to_mpz(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    return Prob(mpq_class(to_mpz(num), d));
  }

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("malformed decimal: " + std::string(text));
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class num = to_mpz(whole) * scale;
    if (!frac.empty()) num += to_mpz(frac);
    return Prob(mpq_class(num, scale));
  }

  if (!all_digits(text)) throw std::invalid_argument("malformed number: " + std::string(text));
  return Prob(mpq_class(to_mpz(text)));
}

std::string Prob::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Prob& Prob::operator+=(const Prob& o) {
  q_ += o.q_;
  return *this;
}

Prob& Prob::operator-=(const Prob& o) {
  if (q_ < o.q_) throw std::domain_error("Prob: subtraction below zero");
  q_ -= o.q_;
  return *this;
}

Prob& Prob::operator*=(const Prob& o) {
  q_ *= o.q_;
  return *this;
}

Prob& Prob::operator/=(const Prob& o) {
  if (o.is_zero()) throw std::domain_error("Prob: division by zero");
  q_ /= o.q_;
  return *this;
}

Prob pow(Prob base, unsigned exponent) {
  Prob result = Prob::one();
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    base *= base;
    exponent >>= 1u;
  }
  return result;
}

}  // namespace efalloc
