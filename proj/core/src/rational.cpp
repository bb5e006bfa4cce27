#include "gbs/rational.hpp"

#include <climits>
#include <functional>
#include <ostream>

#include "gbs/error.hpp"

namespace gbs {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + s + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (sgn(o.value_) == 0) throw Error("division by zero rational");
  value_ /= o.value_;
  return *this;
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

long Rational::to_long() const {
  if (!is_integer()) throw Error("rational " + to_string() + " is not an integer");
  if (!value_.get_num().fits_slong_p()) throw Error("integer " + to_string() + " out of range");
  return value_.get_num().get_si();
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) {
    if (sgn(value_) == 0) throw Error("zero to a negative power");
    return Rational(1) / pow(-exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(num, den));
}

std::string Rational::numerator_string() const { return value_.get_num().get_str(); }
std::string Rational::denominator_string() const { return value_.get_den().get_str(); }
std::string Rational::to_string() const { return numerator_string() + "/" + denominator_string(); }

std::size_t Rational::hash() const {
  const auto limb_hash = [](const mpz_class& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    const std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i)
      h = h * 1000003u ^ std::hash<mp_limb_t>{}(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
    return h;
  };
  return limb_hash(value_.get_num()) * 31u + limb_hash(value_.get_den());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

bool denominator_is_6_smooth(const Rational& r) {
  mpz_class d = r.raw().get_den();
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 3)) d /= 3;
  return d == 1;
}

}  // namespace gbs
