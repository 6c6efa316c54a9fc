#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "cubicform/weil.hpp"

using namespace cubicform;

namespace {

const CountTable& table() {
  static const CountTable t = counting_table(*discriminant_group(cubic_surface_lattice()));
  return t;
}

const FVector& f12() {
  static const FVector f = assemble_f(12);
  return f;
}

bool mentions(const VerificationReport& r, const std::string& needle) {
  return std::any_of(r.details.begin(), r.details.end(),
                     [&](const std::string& d) { return d.find(needle) != std::string::npos; });
}

}  // namespace

TEST_SUITE("weil_verify") {
  TEST_CASE("counting table entries") {
    const CountTable& t = table();
    CHECK(t.group_order == 243);
    CHECK(t.at(CosetType::T0, CosetType::T1, 0) == 36);
    CHECK(t.at(CosetType::T2, CosetType::T2, 1) == 21);
    CHECK(t.at(CosetType::T00, CosetType::T00, 0) == 1);
    CHECK(t.class_sizes() == std::array<unsigned long, 4>{1, 80, 90, 72});
    CHECK(t == reference::count_table());
    CHECK(compare_count_tables(t, reference::count_table()).passed());
  }

  TEST_CASE("each row of the counting table sums to |D|") {
    for (const auto u : kAllCosetTypes) {
      unsigned long total = 0;
      for (const auto v : kAllCosetTypes)
        for (std::size_t p = 0; p < 3; ++p) total += table().at(u, v, p);
      CHECK(total == 243);
    }
  }

  TEST_CASE("column sums over v recover the class sizes") {
    for (const auto u : kAllCosetTypes)
      for (const auto v : kAllCosetTypes) {
        const auto& c = table().counts[type_index(u)][type_index(v)];
        CHECK(c[0] + c[1] + c[2] == table().class_sizes()[type_index(v)]);
      }
  }

  TEST_CASE("non-uniform labels are rejected") {
    const auto d = discriminant_group(cubic_surface_lattice());
    std::vector<CosetType> types;
    for (const auto& e : d->elements()) types.push_back(type_of(e));
    const auto pairing = [&](std::size_t a, std::size_t b) {
      const Rational p = pairing_mod1(d->element(a), d->element(b)) * 3;
      return static_cast<std::size_t>(p.get_num().get_si());
    };
    CHECK_NOTHROW(tabulate_counts(types, pairing));

    // Relabel one T1 element as T2 and one T2 element as T1: class sizes stay, uniformity breaks.
    const auto t1 = std::find(types.begin(), types.end(), CosetType::T1);
    const auto t2 = std::find(types.begin(), types.end(), CosetType::T2);
    std::iter_swap(t1, t2);
    CHECK_THROWS_AS(tabulate_counts(types, pairing), TableUniformityError);
  }

  TEST_CASE("unequal ±1/3 counts make the reduced matrix complex") {
    CountTable t = reference::count_table();
    t.signature = Signature{2, 8};
    t.group_order = 243;
    t.counts[1][1][1] += 1;
    CHECK_THROWS_AS(reduce_s_matrix(t), ComplexEntryError);
  }

  TEST_CASE("reduced S-matrix") {
    const ReducedSMatrix s = reduce_s_matrix(table());
    CHECK(s.entries == reference::s_matrix_rows());
    CHECK(s.entries == RatMatrix{{1, 80, 90, 72}, {1, -1, 9, -9}, {1, 8, -9, 0}, {1, -10, 0, 9}});
    CHECK(s.weight == -3);
    CHECK(s.multiplier_text == "-i*3^(-5/2)");
    CHECK(s.multiplier.real() == doctest::Approx(0.0));
    CHECK(s.multiplier.imag() == doctest::Approx(-std::pow(3.0, -2.5)));
    CHECK(compare_s_matrix(s, reference::s_matrix_rows()).passed());

    RatMatrix wrong = reference::s_matrix_rows();
    wrong(2, 2) = -8;
    CHECK_FALSE(compare_s_matrix(s, wrong).passed());
  }

  TEST_CASE("S² on the type-constant subspace") {
    const ReducedSMatrix s = reduce_s_matrix(table());
    const RatMatrix sq = s.entries * s.entries;
    RatMatrix expected = RatMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) expected(i, i) = 243;
    CHECK(sq == expected);
    const auto r = check_s_squared(s, 243);
    CHECK(r.passed());
    CHECK(mentions(r, "+243"));

    ReducedSMatrix bad = s;
    bad.entries(0, 0) = 2;
    CHECK_FALSE(check_s_squared(bad, 243).passed());
  }

  TEST_CASE("assemble_f") {
    const FVector& f = f12();
    CHECK(f[CosetType::T00].coefficient(0) == 24);
    CHECK(f[CosetType::T00].coefficient(1) == 216);
    CHECK(f[CosetType::T00].coefficient(2) == 1296);
    CHECK(f[CosetType::T0].coefficient(0) == -3);
    CHECK(f[CosetType::T1].empty());
    // Frozen from tests/oracles/eta_quotient_coefficients.py.
    const long f2[] = {1, 14, 92, 462, 1932, 7132};
    for (long k = 0; k < 6; ++k) CHECK(f[CosetType::T2].coefficient(make_rational(3 * k - 1, 3)) == f2[k]);
    CHECK(check_f_coefficients(f).passed());

    CHECK_THROWS(assemble_f(Rational(5, 2)));
    CHECK_NOTHROW(assemble_f(3));
  }

  TEST_CASE("f_00 = -8 f_0 and proportionality check") {
    const FVector& f = f12();
    const QSeries diff = add(f[CosetType::T00], scale(f[CosetType::T0], 8));
    CHECK(diff.empty());
    const ReducedSMatrix s = reduce_s_matrix(table());
    CHECK(check_proportionality(f, s).passed());

    FVector bad = f;
    bad[CosetType::T0] = add(bad[CosetType::T0], QSeries::monomial(1, 1));
    CHECK_FALSE(check_proportionality(bad, s).passed());
  }

  TEST_CASE("T-law") {
    CHECK(check_T(f12()).passed());

    FVector stray = f12();
    stray[CosetType::T0] = add(stray[CosetType::T0], QSeries::monomial(5, Rational(1, 3)));
    const auto r = check_T(stray);
    CHECK(r.status == Status::Fail);
    CHECK(mentions(r, "q^(1/3)"));

    FVector nonzero = f12();
    nonzero[CosetType::T1] = QSeries::monomial(1, Rational(1, 3));
    const auto r1 = check_T(nonzero);
    CHECK(r1.status == Status::Fail);
    CHECK(mentions(r1, "f_1"));
  }

  TEST_CASE("S-law at the three test points") {
    const ReducedSMatrix s = reduce_s_matrix(table());
    for (const std::complex<double> tau : {std::complex<double>(0, 1), {0, 2}, {0.5, 1}}) {
      const auto r = check_S_numeric(f12(), s, tau, 1e-6);
      CHECK(r.status == Status::Pass);
      REQUIRE_FALSE(r.residuals.empty());
      CHECK(*std::max_element(r.residuals.begin(), r.residuals.end()) < 1e-6);
    }
  }

  TEST_CASE("S-law negative controls") {
    const ReducedSMatrix s = reduce_s_matrix(table());
    ReducedSMatrix perturbed = s;
    // Column 2 multiplies f_1 = 0, so perturb the T2 column.
    perturbed.entries(1, 3) += 1;
    CHECK(check_S_numeric(f12(), perturbed, {0, 1}, 1e-6).status == Status::Fail);

    ReducedSMatrix sign = s;
    sign.multiplier = -sign.multiplier;
    CHECK(check_S_numeric(f12(), sign, {0, 1}, 1e-6).status == Status::Fail);

    CHECK(check_S_numeric(f12(), s, {0, 1}, 1e-30).status == Status::Inconclusive);
  }

  TEST_CASE("τ = i is a fixed point of S") {
    const ReducedSMatrix s = reduce_s_matrix(table());
    const SCheckPoint pt = evaluate_S(f12(), s, {0, 1});
    for (std::size_t k = 0; k < 4; ++k) {
      const auto direct = eval_complex(f12().components[k], {0, 1});
      CHECK(std::abs(pt.lhs[k] - direct.value) < 1e-12);
      CHECK(std::abs(pt.lhs[k] - pt.rhs[k]) < 1e-9);
    }
  }

  TEST_CASE("η³ theta identity") {
    const QSeries theta = eta_cube_theta_series(10);
    CHECK(theta.coefficient(Rational(1, 8)) == 1);
    CHECK(theta.coefficient(Rational(9, 8)) == -3);
    CHECK(theta.coefficient(Rational(25, 8)) == 5);
    CHECK(theta.coefficient(Rational(49, 8)) == -7);
    CHECK(theta.coefficient(Rational(17, 8)) == 0);
    CHECK(check_eta_cube_identity(10).passed());
    CHECK_THROWS(check_eta_cube_identity(3));

    const QSeries wrong = add(pow(eta_series(1, 10), 3), QSeries::monomial(1, Rational(17, 8)));
    const auto r = check_series_equal("η³", wrong, theta);
    CHECK(r.status == Status::Fail);
    CHECK(mentions(r, "17/8"));
  }

  TEST_CASE("triple-shift identity in residue form") {
    const QSeries g = eta_quotient_g(10);
    const QSeries h = eta_quotient_h(10);
    const QSeries r0 = restrict_residue(g, 0);
    CHECK(r0.coefficient(0) == -3);
    CHECK(r0.coefficient(1) == -27);
    CHECK(r0.coefficient(2) == -162);
    CHECK(r0.coefficient(3) == -756);
    CHECK(check_triple_shift(g, h).passed());
    CHECK(check_triple_shift_identity(10).passed());
    CHECK_FALSE(check_triple_shift(g, scale(h, 2)).passed());
  }

  TEST_CASE("f_coefficients negative control") {
    FVector bad = f12();
    bad[CosetType::T2] = add(bad[CosetType::T2], QSeries::monomial(1, Rational(5, 3)));
    const auto r = check_f_coefficients(bad);
    CHECK(r.status == Status::Fail);
    CHECK(mentions(r, "expected 92"));
  }
}
