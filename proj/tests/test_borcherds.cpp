#include <algorithm>
#include <set>

#include "doctest.h"

#include "cubicform/borcherds.hpp"

using namespace cubicform;

namespace {

using Scaled = std::vector<long>;

Scaled scaled(const DivisorVector& v) {
  Scaled out;
  for (const auto& x : v.vec) {
    const Rational n = x * 3;
    out.push_back(n.get_num().get_si());
  }
  return out;
}

// Independent brute force over {-b..b}^10 with the full Gram matrix: λ = n/3 lies in M'
// iff G n ≡ 0 mod 3, and λ² = -2/3 iff nᵀGn = -6.
std::set<Scaled> brute_force(long b) {
  const Lattice m = cubic_surface_lattice();
  const IntMatrix& g = m.gram();
  long gram[10][10];
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) gram[i][j] = g(i, j).get_si();
  std::set<Scaled> out;
  Scaled n(10, -b);
  while (true) {
    bool dual = true;
    long norm = 0;
    for (int i = 0; i < 10 && dual; ++i) {
      long gi = 0;
      for (int j = 0; j < 10; ++j) gi += gram[i][j] * n[j];
      dual = gi % 3 == 0;
      norm += n[i] * gi;
    }
    if (dual && norm == -6) out.insert(n);
    int k = 9;
    while (k >= 0 && n[k] == b) n[k--] = -b;
    if (k < 0) break;
    ++n[k];
  }
  return out;
}

const FVector& f() {
  static const FVector v = assemble_f(12);
  return v;
}

}  // namespace

TEST_SUITE("borcherds_data") {
  TEST_CASE("weight of the lift") {
    CHECK(product_weight(f()) == 12);
    CHECK(check_weight(f(), 12).passed());
    CHECK_FALSE(check_weight(f(), 11).passed());

    FVector doubled = f();
    for (auto& c : doubled.components) c = scale(c, 2);
    CHECK(product_weight(doubled) == 24);

    FVector zero;
    for (auto& c : zero.components) c = QSeries(QSeries::TermMap{}, Rational(3));
    CHECK(product_weight(zero) == 0);
  }

  TEST_CASE("principal part") {
    const std::vector<PrincipalTerm> expected{{CosetType::T2, Rational(-1, 3), 1}};
    CHECK(principal_part(f()) == expected);
    CHECK(check_principal_part(f(), expected).passed());

    FVector extra = f();
    extra[CosetType::T1] = QSeries::monomial(2, Rational(-2, 3));
    const auto pp = principal_part(extra);
    REQUIRE(pp.size() == 2);
    CHECK(pp[0] == PrincipalTerm{CosetType::T1, Rational(-2, 3), 2});
    CHECK(pp[1] == expected[0]);
    CHECK_FALSE(check_principal_part(extra, expected).passed());

    FVector none = f();
    none[CosetType::T2] = restrict_residue(none[CosetType::T2], 0);
    CHECK(principal_part(none).empty());
  }

  TEST_CASE("zero multiplicities") {
    CHECK(divisor_multiplicities(principal_part(f())).passed());
    CHECK(divisor_multiplicities({}).passed());
    CHECK_FALSE(divisor_multiplicities({{CosetType::T2, Rational(-1, 3), Rational(1, 2)}}).passed());
    CHECK_FALSE(divisor_multiplicities({{CosetType::T2, Rational(-1, 3), -1}}).passed());
    CHECK_FALSE(divisor_multiplicities({{CosetType::T2, Rational(-1, 3), 2}}).passed());
  }

  TEST_CASE("ω isometry") {
    const Lattice m = cubic_surface_lattice();
    const OmegaIsometry w = omega_isometry();
    CHECK(w.matrix.rows() == 10);
    CHECK(w.matrix(0, 0) == 0);
    CHECK(w.matrix(1, 0) == 1);
    CHECK(w.matrix(0, 1) == -1);
    CHECK(w.matrix(1, 1) == -1);
    CHECK(check_omega(w, m).passed());

    OmegaIsometry bad = w;
    bad.matrix(0, 1) = 1;
    CHECK_FALSE(check_omega(bad, m).passed());

    const OmegaIsometry id{IntMatrix::identity(10)};
    CHECK_FALSE(check_omega(id, m).passed());

    CHECK_FALSE(check_omega(omega_isometry(4), m).passed());
  }

  TEST_CASE("minimal divisor vector of an A2(-1) block") {
    const auto vs = enumerate_divisor_vectors(1);
    RatVector expected(10);
    expected[2] = Rational(1, 3);
    expected[3] = Rational(-1, 3);
    const auto it = std::find_if(vs.begin(), vs.end(), [&](const DivisorVector& v) { return v.vec == expected; });
    REQUIRE(it != vs.end());
    CHECK(it->norm == Rational(-2, 3));
    CHECK(cubic_surface_lattice().norm(expected) == Rational(-2, 3));
  }

  TEST_CASE("enumeration is lexicographic, norm -2/3 and type 2") {
    const auto vs = enumerate_divisor_vectors(2);
    const auto d = discriminant_group(cubic_surface_lattice());
    std::vector<Scaled> keys;
    for (const auto& v : vs) {
      CHECK(v.norm == Rational(-2, 3));
      CHECK(type_of(d->element_of(v.vec)) == CosetType::T2);
      keys.push_back(scaled(v));
    }
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  }

  TEST_CASE("enumeration counts match the brute-force fixture") {
    // Frozen from tests/oracles/divisor_vector_count.py.
    CHECK(enumerate_divisor_vectors(1).size() == 56);
    CHECK(enumerate_divisor_vectors(2).size() == 1608);
    CHECK(enumerate_divisor_vectors(3).size() == 31320);
  }

  TEST_CASE("enumeration agrees with an unstructured brute force at bound 1") {
    std::set<Scaled> got;
    for (const auto& v : enumerate_divisor_vectors(1)) got.insert(scaled(v));
    CHECK(got == brute_force(1));
  }

  TEST_CASE("generic enumeration on a single block") {
    const Lattice a2m = rescale(a2_gram(), -1);
    const auto vs = enumerate_divisor_vectors(a2m, 3, 3, Rational(-2, 3));
    // The six minimal vectors of the dual of A2(-1).
    CHECK(vs.size() == 6);
    CHECK(enumerate_divisor_vectors(a2m, 3, 3, Rational(-1, 3)).empty());
    CHECK_THROWS(enumerate_divisor_vectors(0));
  }

  TEST_CASE("closure and ω-orbits") {
    const Lattice m = cubic_surface_lattice();
    const OmegaIsometry w = omega_isometry();
    const auto vs = enumerate_divisor_vectors(1);
    const auto closed = close_under_omega(vs, w);
    CHECK(closed.size() == 168);
    CHECK(close_under_omega(closed, w) == closed);

    const auto orbits = omega_orbits(closed, w, m);
    CHECK(orbits.size() == 56);
    std::set<std::size_t> seen;
    for (const auto& o : orbits) {
      RatVector sum(10);
      for (std::size_t k : o) {
        seen.insert(k);
        for (std::size_t i = 0; i < 10; ++i) sum[i] += closed[k].vec[i];
      }
      CHECK(std::all_of(sum.begin(), sum.end(), [](const Rational& x) { return x == 0; }));
      CHECK(m.inner(closed[o[0]].vec, closed[o[1]].vec) == Rational(1, 3));
      CHECK(m.inner(closed[o[1]].vec, closed[o[2]].vec) == Rational(1, 3));
      CHECK(m.inner(closed[o[0]].vec, closed[o[2]].vec) == Rational(1, 3));
    }
    CHECK(seen.size() == closed.size());

    CHECK(close_under_omega(enumerate_divisor_vectors(2), w).size() == 2184);
  }

  TEST_CASE("orbit misuse") {
    const Lattice m = cubic_surface_lattice();
    const OmegaIsometry w = omega_isometry();
    const auto vs = enumerate_divisor_vectors(1);
    CHECK_THROWS_AS(omega_orbits(vs, w, m), std::invalid_argument);
    CHECK_THROWS_AS(omega_orbits(vs, OmegaIsometry{IntMatrix::identity(10)}, m), SymmetryError);
  }

  TEST_CASE("check_divisor_orbits") {
    DivisorSummary s;
    const auto r = check_divisor_orbits(2, omega_isometry(), &s);
    CHECK(r.passed());
    CHECK(s.enumerated == 1608);
    CHECK(s.closed == 2184);
    CHECK(s.orbits == 728);
    CHECK_FALSE(check_divisor_orbits(1, OmegaIsometry{IntMatrix::identity(10)}).passed());
  }

  TEST_CASE("divisor JSON") {
    const OmegaIsometry w = omega_isometry();
    const auto closed = close_under_omega(enumerate_divisor_vectors(1), w);
    const auto orbits = omega_orbits(closed, w, cubic_surface_lattice());
    const auto j = to_json(closed, orbits);
    CHECK(j["vectors"].size() == 168);
    CHECK(j["orbits"].size() == 56);
    CHECK(j["vectors"][0]["norm"] == "-2/3");
    CHECK(j["vectors"][0]["coords"].size() == 10);
  }
}
