#include "cubicform/rational.hpp"

#include <cctype>

namespace cubicform {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool parse_integer(std::string_view s, Integer& out) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(text, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  Integer num;
  Integer den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw std::invalid_argument("not a rational: " + std::string(text));
  } else {
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(text.substr(slash + 1), den))
      throw std::invalid_argument("not a rational: " + std::string(text));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  }
  return make_rational(num, den);
}

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational reduce_mod(const Rational& x, const Rational& m) {
  if (m <= 0) throw std::domain_error("reduce_mod: modulus must be positive");
  Rational k = x / m;
  Rational r = x - Rational(floor_of(k)) * m;
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::string to_string(const Rational& x) { return x.get_str(10); }
std::string to_string(const Integer& x) { return x.get_str(10); }

}  // namespace cubicform
