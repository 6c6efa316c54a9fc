#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubicform/rational.hpp"

namespace cubicform {

/// Requested coefficient or operation lies outside the trusted exponent range.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverting a series whose leading coefficient is unknown or zero.
class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated formal series  Σ c_e q^e  with exact rational exponents and coefficients.
///
/// prec is an exclusive bound: every coefficient with exponent < prec is known, and
/// nothing at or beyond prec is stored. A series without prec is exact (finitely many
/// terms, nothing truncated). Zero coefficients are never stored.
class QSeries {
 public:
  using TermMap = std::map<Rational, Rational>;

  /// The exact zero series.
  QSeries() = default;
  /// Exact monomial c·q^e.
  static QSeries monomial(const Rational& coeff, const Rational& exponent);
  static QSeries one() { return monomial(1, 0); }
  /// Builds a series from terms, dropping zeros and anything at or beyond prec.
  QSeries(TermMap terms, std::optional<Rational> prec);

  const TermMap& terms() const { return terms_; }
  const std::optional<Rational>& prec() const { return prec_; }
  bool is_exact() const { return !prec_.has_value(); }
  /// True when no nonzero coefficient is known. The series may still be O(q^prec).
  bool empty() const { return terms_.empty(); }

  /// Smallest stored exponent. Throws PrecisionError when the series is empty.
  const Rational& leading_exponent() const;
  const Rational& leading_coefficient() const;

  /// Coefficient of q^e. Throws PrecisionError when e >= prec.
  Rational coefficient(const Rational& e) const;

  /// Drops everything at or beyond the new bound (which may not exceed the current one).
  QSeries truncate(const Rational& new_prec) const;

  friend bool operator==(const QSeries& a, const QSeries& b) = default;

 private:
  TermMap terms_;
  std::optional<Rational> prec_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const Rational& c);
/// prec = min(lead(a) + prec(b), lead(b) + prec(a)).
QSeries mul(const QSeries& a, const QSeries& b);
/// Multiplicative inverse. Throws InversionError for an empty series.
QSeries inverse(const QSeries& a);
QSeries pow(const QSeries& a, long k);

/// Terms whose exponent is congruent to r modulo 1.
QSeries restrict_residue(const QSeries& s, const Rational& r);

/// η(aτ) = q^{a/24} Π_{n≥1} (1 - q^{an}), truncated at prec.
/// Throws PrecisionError unless prec > a/24, std::domain_error unless a > 0.
QSeries eta_series(const Rational& scale, const Rational& prec);

struct EtaFactor {
  Rational scale;
  long power;
};

/// Π η(a_i τ)^{k_i}.
struct EtaQuotientSpec {
  std::vector<EtaFactor> factors;

  Rational leading_exponent() const;
};

/// Exact product of eta powers with every exponent below prec trusted.
QSeries eta_quotient(const EtaQuotientSpec& spec, const Rational& prec);

struct ComplexValue {
  std::complex<double> value;
  double tail_bound = 0.0;
};

/// Σ c_e exp(2πi e τ) over stored terms. The tail bound |c_last| |q|^prec / (1 - |q|) is a
/// heuristic, not a proof. Throws std::domain_error when Im τ <= 0.
ComplexValue eval_complex(const QSeries& s, std::complex<double> tau);

/// "c q^e + ... + O(q^prec)" in ascending exponent order.
std::string to_string(const QSeries& s);

/// {"terms": [[exp_num, exp_den, coeff_num, coeff_den], ...], "prec": [num, den] | null}.
/// Integers that do not fit in 64 bits are written as decimal strings.
nlohmann::json to_json(const QSeries& s);
QSeries qseries_from_json(const nlohmann::json& j);

nlohmann::json integer_json(const Integer& z);

}  // namespace cubicform
