#include "cubicform/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cubicform {

QSeries QSeries::monomial(const Rational& coeff, const Rational& exponent) {
  TermMap t;
  if (coeff != 0) t.emplace(exponent, coeff);
  return QSeries(std::move(t), std::nullopt);
}

QSeries::QSeries(TermMap terms, std::optional<Rational> prec) : prec_(std::move(prec)) {
  for (auto& [e, c] : terms) {
    if (c == 0) continue;
    if (prec_ && e >= *prec_) break;
    terms_.emplace_hint(terms_.end(), e, std::move(c));
  }
}

const Rational& QSeries::leading_exponent() const {
  if (terms_.empty()) throw PrecisionError("leading exponent of an empty series");
  return terms_.begin()->first;
}

const Rational& QSeries::leading_coefficient() const {
  if (terms_.empty()) throw PrecisionError("leading coefficient of an empty series");
  return terms_.begin()->second;
}

Rational QSeries::coefficient(const Rational& e) const {
  if (prec_ && e >= *prec_)
    throw PrecisionError("coefficient of q^" + to_string(e) + " is beyond precision O(q^" +
                         to_string(*prec_) + ")");
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

QSeries QSeries::truncate(const Rational& new_prec) const {
  if (prec_ && new_prec > *prec_)
    throw PrecisionError("cannot raise precision from " + to_string(*prec_) + " to " + to_string(new_prec));
  return QSeries(terms_, new_prec);
}

namespace {

std::optional<Rational> min_prec(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// Lowest exponent that may carry a nonzero coefficient; nullopt for the exact zero series.
std::optional<Rational> valuation(const QSeries& s) {
  if (!s.empty()) return s.leading_exponent();
  return s.prec();
}

}  // namespace

QSeries add(const QSeries& a, const QSeries& b) {
  QSeries::TermMap t = a.terms();
  for (const auto& [e, c] : b.terms()) t[e] += c;
  return QSeries(std::move(t), min_prec(a.prec(), b.prec()));
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, scale(b, -1)); }

QSeries scale(const QSeries& a, const Rational& c) {
  QSeries::TermMap t;
  if (c != 0)
    for (const auto& [e, x] : a.terms()) t.emplace_hint(t.end(), e, x * c);
  return QSeries(std::move(t), a.prec());
}

QSeries mul(const QSeries& a, const QSeries& b) {
  const auto va = valuation(a);
  const auto vb = valuation(b);
  if (!va || !vb) return QSeries();  // exact zero annihilates

  std::optional<Rational> prec;
  if (b.prec()) prec = *va + *b.prec();
  if (a.prec()) prec = min_prec(prec, *vb + *a.prec());

  QSeries::TermMap t;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Rational e = ea + eb;
      if (prec && e >= *prec) break;
      t[e] += ca * cb;
    }
  }
  return QSeries(std::move(t), std::move(prec));
}

QSeries inverse(const QSeries& a) {
  if (a.empty()) throw InversionError("cannot invert a series with no known nonzero coefficient");
  const Rational lead = a.leading_exponent();
  const Rational c = a.leading_coefficient();

  if (a.is_exact()) {
    if (a.terms().size() == 1) return QSeries::monomial(1 / c, -lead);
    throw PrecisionError("inverse of an exact multi-term series needs a precision bound");
  }

  // a = c q^lead (1 + r); invert 1 + r by the fixed point b = 1 - r b.
  const Rational rel = *a.prec() - lead;
  QSeries::TermMap rt;
  for (auto it = std::next(a.terms().begin()); it != a.terms().end(); ++it)
    rt.emplace_hint(rt.end(), it->first - lead, it->second / c);
  const QSeries r(std::move(rt), rel);

  QSeries b = QSeries::one().truncate(rel);
  while (true) {
    QSeries next = sub(QSeries::one(), mul(r, b)).truncate(rel);
    if (next == b) break;
    b = std::move(next);
  }

  QSeries::TermMap out;
  for (const auto& [e, x] : b.terms()) out.emplace_hint(out.end(), e - lead, x / c);
  return QSeries(std::move(out), rel - lead);
}

QSeries pow(const QSeries& a, long k) {
  if (k == 0) return QSeries::one();
  if (k < 0) return pow(inverse(a), -k);
  QSeries result = QSeries::one();
  QSeries base = a;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

QSeries restrict_residue(const QSeries& s, const Rational& r) {
  QSeries::TermMap t;
  for (const auto& [e, c] : s.terms())
    if (is_integer(e - r)) t.emplace_hint(t.end(), e, c);
  return QSeries(std::move(t), s.prec());
}

QSeries eta_series(const Rational& scale, const Rational& prec) {
  if (scale <= 0) throw std::domain_error("eta_series: scale must be positive");
  const Rational lead = scale / 24;
  if (prec <= lead)
    throw PrecisionError("eta_series: precision " + to_string(prec) + " does not reach the leading term q^" +
                         to_string(lead));

  // Exponents are lead + scale*m for 0 <= m <= top.
  Rational span = (prec - lead) / scale;
  Integer top_z = floor_of(span);
  if (is_integer(span)) top_z -= 1;
  const std::size_t top = top_z.get_ui();

  std::vector<Integer> poly(top + 1);
  poly[0] = 1;
  for (std::size_t n = 1; n <= top; ++n)
    for (std::size_t m = top; m >= n; --m) poly[m] -= poly[m - n];

  QSeries::TermMap t;
  for (std::size_t m = 0; m <= top; ++m)
    if (poly[m] != 0) t.emplace_hint(t.end(), lead + scale * static_cast<unsigned long>(m), Rational(poly[m]));
  return QSeries(std::move(t), prec);
}

Rational EtaQuotientSpec::leading_exponent() const {
  Rational s = 0;
  for (const auto& f : factors) s += f.scale * f.power / 24;
  return s;
}

QSeries eta_quotient(const EtaQuotientSpec& spec, const Rational& prec) {
  const Rational lead = spec.leading_exponent();
  const Rational rel = prec - lead;
  if (rel <= 0)
    throw PrecisionError("eta_quotient: precision " + to_string(prec) + " does not exceed the leading exponent " +
                         to_string(lead));
  QSeries result = QSeries::one();
  for (const auto& f : spec.factors) {
    if (f.scale <= 0) throw std::domain_error("eta_quotient: scale must be positive");
    if (f.power == 0) continue;
    // Each factor only needs relative precision rel.
    const QSeries eta = eta_series(f.scale, f.scale / 24 + rel);
    result = mul(result, pow(eta, f.power));
  }
  if (result.is_exact()) return result;
  return result.truncate(std::min(prec, *result.prec()));
}

ComplexValue eval_complex(const QSeries& s, std::complex<double> tau) {
  if (!(tau.imag() > 0)) throw std::domain_error("eval_complex: tau must lie in the upper half plane");
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  ComplexValue out;
  for (const auto& [e, c] : s.terms()) out.value += c.get_d() * std::exp(two_pi_i * e.get_d() * tau);
  if (s.prec()) {
    const double abs_q = std::exp(-2.0 * std::numbers::pi * tau.imag());
    const double c_last = s.empty() ? 1.0 : std::abs(std::prev(s.terms().end())->second.get_d());
    out.tail_bound = c_last * std::pow(abs_q, s.prec()->get_d()) / (1.0 - abs_q);
  }
  return out;
}

namespace {

std::string exponent_text(const Rational& e) {
  if (e == 1) return "q";
  if (is_integer(e) && e > 0) return "q^" + to_string(e);
  return "q^(" + to_string(e) + ")";
}

}  // namespace

std::string to_string(const QSeries& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << (is_integer(mag) ? to_string(mag) : "(" + to_string(mag) + ")");
      os << exponent_text(e);
    }
  }
  if (s.prec()) {
    if (!first) os << " + ";
    os << "O(" << exponent_text(*s.prec()) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

nlohmann::json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str(10);
}

namespace {

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>(), 10);
  throw std::invalid_argument("expected an integer or decimal string");
}

}  // namespace

nlohmann::json to_json(const QSeries& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms())
    terms.push_back({integer_json(e.get_num()), integer_json(e.get_den()), integer_json(c.get_num()),
                     integer_json(c.get_den())});
  nlohmann::json prec = nullptr;
  if (s.prec()) prec = {integer_json(s.prec()->get_num()), integer_json(s.prec()->get_den())};
  return {{"terms", terms}, {"prec", prec}};
}

QSeries qseries_from_json(const nlohmann::json& j) {
  QSeries::TermMap t;
  for (const auto& term : j.at("terms")) {
    if (!term.is_array() || term.size() != 4) throw std::invalid_argument("series term must have 4 entries");
    t[make_rational(integer_from_json(term[0]), integer_from_json(term[1]))] =
        make_rational(integer_from_json(term[2]), integer_from_json(term[3]));
  }
  std::optional<Rational> prec;
  const auto& p = j.at("prec");
  if (!p.is_null()) prec = make_rational(integer_from_json(p.at(0)), integer_from_json(p.at(1)));
  return QSeries(std::move(t), std::move(prec));
}

}  // namespace cubicform
