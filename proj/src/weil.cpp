#include "cubicform/weil.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cubicform {

std::array<unsigned long, 4> CountTable::class_sizes() const {
  std::array<unsigned long, 4> sizes{};
  for (auto v : kAllCosetTypes) sizes[type_index(v)] = at(CosetType::T00, v, 0);
  return sizes;
}

namespace {

std::size_t pairing_class(const Rational& p) {
  const Rational k = p * 3;
  if (!is_integer(k)) throw LatticeError("pairing " + to_string(p) + " is not a multiple of 1/3");
  return k.get_num().get_ui();
}

std::string describe_counts(const std::array<PairingCounts, 4>& row) {
  std::ostringstream os;
  for (std::size_t p = 0; p < 3; ++p) {
    os << (p ? " | " : "") << "p=" << p << "/3:";
    for (const auto& vc : row) os << " " << vc[p];
  }
  return os.str();
}

}  // namespace

CountTable tabulate_counts(const std::vector<CosetType>& types,
                           const std::function<std::size_t(std::size_t, std::size_t)>& pairing_class) {
  const std::size_t n = types.size();
  CountTable table;
  table.group_order = n;
  std::array<bool, 4> seen{};
  std::array<std::size_t, 4> first{};

  for (std::size_t u = 0; u < n; ++u) {
    std::array<PairingCounts, 4> row{};
    for (std::size_t v = 0; v < n; ++v) row[type_index(types[v])].at(pairing_class(u, v)) += 1;
    const std::size_t t = type_index(types[u]);
    if (!seen[t]) {
      table.counts[t] = row;
      seen[t] = true;
      first[t] = u;
    } else if (table.counts[t] != row) {
      throw TableUniformityError("count vector of element " + std::to_string(u) + " (type " + type_name(types[u]) +
                                 ") differs from element " + std::to_string(first[t]) + ": " + describe_counts(row) +
                                 " vs " + describe_counts(table.counts[t]));
    }
  }
  return table;
}

CountTable counting_table(const DiscGroup& group) {
  std::vector<CosetType> types;
  types.reserve(group.order());
  for (const auto& e : group.elements()) types.push_back(type_of(e));
  CountTable table =
      tabulate_counts(types, [&](std::size_t u, std::size_t v) { return pairing_class(group.pairing_mod1(u, v)); });
  table.signature = group.lattice().signature();
  return table;
}

ReducedSMatrix reduce_s_matrix(const CountTable& table) {
  ReducedSMatrix s;
  for (auto u : kAllCosetTypes)
    for (auto v : kAllCosetTypes) {
      const auto n0 = table.at(u, v, 0);
      const auto n1 = table.at(u, v, 1);
      const auto n2 = table.at(u, v, 2);
      if (n1 != n2)
        throw ComplexEntryError("pairing 1/3 and 2/3 counts differ for (u, v) = (" + type_name(u) + ", " +
                                type_name(v) + "): " + std::to_string(n1) + " vs " + std::to_string(n2));
      // e^{-2πi/3} + e^{-4πi/3} = -1
      s.entries(type_index(u), type_index(v)) = Rational(static_cast<long>(n0)) - Rational(static_cast<long>(n1));
    }

  const long bplus = static_cast<long>(table.signature.positive);
  const long bminus = static_cast<long>(table.signature.negative);
  const long eighth = ((bminus - bplus) % 8 + 8) % 8;
  const double order = static_cast<double>(table.group_order);
  s.multiplier = std::polar(1.0 / std::sqrt(order), std::numbers::pi * static_cast<double>(eighth) / 4.0);
  if ((2 - bminus) % 2 != 0) throw LatticeError("weight 1 - b⁻/2 is not an integer");
  s.weight = static_cast<int>((2 - bminus) / 2);

  static const char* const phases[] = {"", "e^(πi/4)*", "i*", "e^(3πi/4)*", "-", "e^(5πi/4)*", "-i*", "e^(7πi/4)*"};
  std::string magnitude = "|D|^(-1/2)";
  {
    std::size_t base = 0;
    for (std::size_t p = 2; p <= table.group_order; ++p)
      if (table.group_order % p == 0) {
        base = p;
        break;
      }
    std::size_t m = table.group_order, e = 0;
    while (base > 1 && m % base == 0) {
      m /= base;
      ++e;
    }
    if (table.group_order == 1) magnitude = "1";
    else if (m == 1) magnitude = std::to_string(base) + "^(-" + std::to_string(e) + "/2)";
  }
  s.multiplier_text = std::string(phases[eighth]) + magnitude;
  return s;
}

QSeries eta_quotient_h(const Rational& prec) {
  return eta_quotient({{{Rational(3), 3}, {Rational(1), -9}}}, prec);
}

QSeries eta_quotient_g(const Rational& prec) {
  return eta_quotient({{{Rational(1, 3), 3}, {Rational(1), -9}}}, prec);
}

FVector assemble_f(const Rational& prec) {
  if (prec < 3) throw PrecisionError("assemble_f needs prec >= 3, got " + to_string(prec));
  const QSeries h = eta_quotient_h(prec);
  const QSeries g = eta_quotient_g(prec);
  FVector f;
  f[CosetType::T00] = scale(h, 24);
  f[CosetType::T0] = scale(h, -3);
  f[CosetType::T1] = QSeries();
  f[CosetType::T2] = add(g, scale(h, 3));
  return f;
}

VerificationReport check_T(const FVector& f) {
  VerificationReport r{"T-transformation (support residues)"};
  for (auto t : kAllCosetTypes) {
    const Rational residue = type_residue(t);
    std::size_t bad = 0;
    for (const auto& [e, c] : f[t].terms())
      if (!is_integer(e - residue)) {
        r.fail("f_" + type_name(t) + " has term " + to_string(c) + "·q^(" + to_string(e) +
               ") with exponent not ≡ " + to_string(residue) + " mod 1");
        ++bad;
      }
    if (bad == 0)
      r.note("f_" + type_name(t) + ": " + std::to_string(f[t].terms().size()) + " terms, all exponents ≡ " +
             to_string(residue) + " mod 1");
  }
  if (!f[CosetType::T1].empty()) r.fail("f_1 is not identically zero");
  return r;
}

SCheckPoint evaluate_S(const FVector& f, const ReducedSMatrix& s, std::complex<double> tau) {
  if (!(tau.imag() > 0)) throw std::domain_error("S check needs Im τ > 0");
  SCheckPoint pt;
  pt.tau = tau;
  const std::complex<double> image = -1.0 / tau;
  std::array<std::complex<double>, 4> at_tau;
  for (auto t : kAllCosetTypes) {
    const auto i = type_index(t);
    const auto a = eval_complex(f[t], tau);
    const auto b = eval_complex(f[t], image);
    at_tau[i] = a.value;
    pt.lhs[i] = b.value;
    pt.max_tail = std::max({pt.max_tail, a.tail_bound, b.tail_bound});
  }
  std::complex<double> factor = s.multiplier;
  for (int k = 0; k < std::abs(s.weight); ++k) factor = s.weight < 0 ? factor / tau : factor * tau;
  for (std::size_t u = 0; u < 4; ++u) {
    std::complex<double> sum = 0.0;
    for (std::size_t v = 0; v < 4; ++v) sum += s.entries(u, v).get_d() * at_tau[v];
    pt.rhs[u] = factor * sum;
    pt.max_residual = std::max(pt.max_residual, std::abs(pt.lhs[u] - pt.rhs[u]));
  }
  return pt;
}

namespace {

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

VerificationReport check_S_numeric(const FVector& f, const ReducedSMatrix& s, std::complex<double> tau, double tol) {
  VerificationReport r{"S-transformation at τ = " + complex_text(tau)};
  const SCheckPoint pt = evaluate_S(f, s, tau);
  r.note("multiplier " + s.multiplier_text + ", weight " + std::to_string(s.weight));
  for (auto t : kAllCosetTypes) {
    const auto i = type_index(t);
    r.residuals.push_back(std::abs(pt.lhs[i] - pt.rhs[i]));
    r.note("f_" + type_name(t) + "(-1/τ) = " + complex_text(pt.lhs[i]) + ", S-side = " + complex_text(pt.rhs[i]));
  }
  std::ostringstream os;
  os << "max residual " << pt.max_residual << " (tol " << tol << "), max tail bound " << pt.max_tail;
  r.note(os.str());
  if (!(pt.max_tail < tol / 10)) {
    r.status = Status::Inconclusive;
    r.note("tail bound not below tol/10; evaluation is not conclusive at this precision");
  } else if (!(pt.max_residual < tol)) {
    r.fail("residual exceeds tolerance");
  }
  return r;
}

QSeries eta_cube_theta_series(const Rational& prec) {
  QSeries::TermMap t;
  // (4n+1)² / 8 grows in |n|; both signs of n until the exponent leaves the window.
  for (long n = 0;; ++n) {
    bool any = false;
    for (long m : {n, -n - 1}) {
      const long k = 4 * m + 1;
      const Rational e(k * k, 8);
      if (e < prec) {
        t[e] += k;
        any = true;
      }
    }
    if (!any) break;
  }
  return QSeries(std::move(t), prec);
}

VerificationReport check_series_equal(std::string name, const QSeries& lhs, const QSeries& rhs) {
  VerificationReport r{std::move(name)};
  std::optional<Rational> prec = lhs.prec();
  if (rhs.prec() && (!prec || *rhs.prec() < *prec)) prec = rhs.prec();
  const QSeries a = prec ? lhs.truncate(*prec) : lhs;
  const QSeries b = prec ? rhs.truncate(*prec) : rhs;
  const QSeries diff = sub(a, b);
  for (const auto& [e, c] : diff.terms())
    r.fail("mismatch at q^(" + to_string(e) + "): " + to_string(a.coefficient(e)) + " vs " + to_string(b.coefficient(e)));
  if (r.passed())
    r.note("equal coefficientwise on " + std::to_string(a.terms().size()) + " nonzero terms below " +
           (prec ? "q^(" + to_string(*prec) + ")" : std::string("∞")));
  return r;
}

VerificationReport check_eta_cube_identity(const Rational& prec) {
  if (prec < Rational(25, 8)) throw PrecisionError("eta cube identity needs prec >= 25/8");
  // η³ has leading exponent 1/8; η to prec - 1/12 gives η³ to prec.
  const QSeries cube = pow(eta_series(1, prec - Rational(1, 12)), 3);
  return check_series_equal("η(τ)³ = Σ (4n+1) q^((4n+1)²/8)", cube, eta_cube_theta_series(prec));
}

VerificationReport check_triple_shift(const QSeries& g, const QSeries& h) {
  auto r = check_series_equal("three-term shift identity (residue form: restrict_residue(g, 0) = -3h)",
                              restrict_residue(g, 0), scale(h, -3));
  r.note("Σ_j g(τ+j) = 3·restrict_residue(g, 0), so the identity Σ_j g(τ+j) = -9h is equivalent");
  return r;
}

VerificationReport check_triple_shift_identity(const Rational& prec) {
  if (prec < 3) throw PrecisionError("triple shift identity needs prec >= 3");
  return check_triple_shift(eta_quotient_g(prec), eta_quotient_h(prec));
}

VerificationReport check_s_squared(const ReducedSMatrix& s, std::size_t group_order) {
  VerificationReport r{"S² on the type-constant subspace"};
  const RatMatrix sq = s.entries * s.entries;
  const Rational d(static_cast<long>(group_order));
  int sign = 0;
  for (int candidate : {1, -1}) {
    bool match = true;
    for (std::size_t i = 0; i < 4 && match; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (sq(i, j) != (i == j ? d * candidate : Rational(0))) {
          match = false;
          break;
        }
    if (match) sign = candidate;
  }
  if (sign == 0) {
    r.fail("S² is not ±|D|·I");
  } else {
    r.note(std::string("S² = ") + (sign > 0 ? "+" : "-") + std::to_string(group_order) + "·I");
    // The multiplier squared times τ^{2k} bookkeeping: (multiplier)²·|D| is the scalar of S² on f.
    const auto scalar = s.multiplier * s.multiplier * static_cast<double>(group_order) * static_cast<double>(sign);
    r.note("multiplier² · S² = " + complex_text(scalar) + " · I");
  }
  return r;
}

VerificationReport check_proportionality(const FVector& f, const ReducedSMatrix& s) {
  VerificationReport r{"f_00 = -8 f_0 and consistency of the T00/T0 equations"};
  const QSeries d = sub(f[CosetType::T00], scale(f[CosetType::T0], -8));
  if (!d.empty()) r.fail("f_00 + 8 f_0 has " + std::to_string(d.terms().size()) + " nonzero terms");
  // Row T00 of S applied to f minus (-8)·row T0 applied to f must vanish.
  QSeries combo;
  for (auto v : kAllCosetTypes) {
    const Rational c = s.entries(0, type_index(v)) + 8 * s.entries(1, type_index(v));
    combo = add(combo, scale(f[v], c));
  }
  if (!combo.empty())
    r.fail("S-row(00)·f + 8·S-row(0)·f is nonzero (" + std::to_string(combo.terms().size()) + " terms)");
  if (r.passed()) r.note("f_00 = -8 f_0 exactly; S-row(00)·f = -8·S-row(0)·f exactly");
  return r;
}

VerificationReport compare_count_tables(const CountTable& computed, const CountTable& expected) {
  VerificationReport r{"counting table"};
  std::size_t matches = 0;
  for (auto u : kAllCosetTypes)
    for (auto v : kAllCosetTypes)
      for (std::size_t p = 0; p < 3; ++p) {
        if (computed.at(u, v, p) == expected.at(u, v, p)) {
          ++matches;
        } else {
          r.fail("u=" + type_name(u) + " v=" + type_name(v) + " pairing " + std::to_string(p) + "/3: computed " +
                 std::to_string(computed.at(u, v, p)) + ", expected " + std::to_string(expected.at(u, v, p)));
        }
      }
  r.note(std::to_string(matches) + " of 48 entries match");
  return r;
}

VerificationReport compare_s_matrix(const ReducedSMatrix& computed, const RatMatrix& expected) {
  VerificationReport r{"reduced S-matrix"};
  for (std::size_t i = 0; i < 4; ++i) {
    std::string row = "row " + type_name(kAllCosetTypes[i]) + ": (";
    for (std::size_t j = 0; j < 4; ++j) {
      row += (j ? ", " : "") + to_string(computed.entries(i, j));
      if (computed.entries(i, j) != expected(i, j))
        r.fail("entry (" + type_name(kAllCosetTypes[i]) + ", " + type_name(kAllCosetTypes[j]) + "): computed " +
               to_string(computed.entries(i, j)) + ", expected " + to_string(expected(i, j)));
    }
    r.note(row + ")");
  }
  return r;
}

namespace reference {

CountTable count_table() {
  CountTable t;
  t.group_order = 243;
  t.signature = {2, 8};
  const unsigned long zero_row[4][4] = {{1, 80, 90, 72}, {1, 26, 36, 18}, {1, 32, 24, 24}, {1, 20, 30, 30}};
  const unsigned long third_row[4][4] = {{0, 0, 0, 0}, {0, 27, 27, 27}, {0, 24, 33, 24}, {0, 30, 30, 21}};
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v) t.counts[u][v] = {zero_row[u][v], third_row[u][v], third_row[u][v]};
  return t;
}

RatMatrix s_matrix_rows() {
  return RatMatrix{{1, 80, 90, 72}, {1, -1, 9, -9}, {1, 8, -9, 0}, {1, -10, 0, 9}};
}

std::array<unsigned long, 4> class_sizes() { return {1, 80, 90, 72}; }

std::vector<Coefficient> f_coefficients() {
  return {
      {CosetType::T00, 0, 24},
      {CosetType::T00, 1, 216},
      {CosetType::T00, 2, 1296},
      {CosetType::T0, 0, -3},
      {CosetType::T2, Rational(-1, 3), 1},
      {CosetType::T2, Rational(2, 3), 14},
      {CosetType::T2, Rational(5, 3), 92},
  };
}

}  // namespace reference

VerificationReport check_f_coefficients(const FVector& f) {
  VerificationReport r{"q-expansion coefficients"};
  for (const auto& c : reference::f_coefficients()) {
    const Rational got = f[c.type].coefficient(c.exponent);
    const std::string where = "f_" + type_name(c.type) + " at q^(" + to_string(c.exponent) + ")";
    if (got != c.value) r.fail(where + ": computed " + to_string(got) + ", expected " + to_string(c.value));
    else r.note(where + " = " + to_string(got));
  }
  return r;
}

}  // namespace cubicform
