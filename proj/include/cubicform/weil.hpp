#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include "cubicform/lattice.hpp"
#include "cubicform/qseries.hpp"
#include "cubicform/report.hpp"

namespace cubicform {

/// The count vector of some u differs from another u of the same type.
class TableUniformityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pairing classes 1/3 and 2/3 have different counts, so the reduced matrix is not real.
class ComplexEntryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index 0, 1, 2 for pairings 0, 1/3, 2/3.
using PairingCounts = std::array<unsigned long, 3>;

/// Number of v of each type with each pairing against a fixed u, per type of u.
struct CountTable {
  // counts[u][v][p]
  std::array<std::array<PairingCounts, 4>, 4> counts{};
  std::size_t group_order = 0;
  Signature signature;

  unsigned long at(CosetType u, CosetType v, std::size_t pairing) const {
    return counts[type_index(u)][type_index(v)].at(pairing);
  }
  std::array<unsigned long, 4> class_sizes() const;

  friend bool operator==(const CountTable& a, const CountTable& b) { return a.counts == b.counts; }
};

/// Tabulates counts from a type label per element and a pairing class (0, 1, 2 for
/// 0, 1/3, 2/3) per ordered pair, requiring count vectors to be constant on each label.
/// Throws TableUniformityError otherwise.
CountTable tabulate_counts(const std::vector<CosetType>& types,
                           const std::function<std::size_t(std::size_t, std::size_t)>& pairing_class);

/// Walks every u in the group (|D|² pairings) and requires the count vector to depend
/// only on type_of(u). Throws TableUniformityError otherwise.
CountTable counting_table(const DiscGroup& group);

/// Action of S on type-constant vectors:
///   f_u(-1/τ) = multiplier · τ^weight · Σ_v entries(u, v) f_v(τ).
struct ReducedSMatrix {
  RatMatrix entries = RatMatrix(4, 4);
  std::complex<double> multiplier;
  std::string multiplier_text;
  int weight = 0;
};

/// entry(u, v) = N_0 - N_{1/3}. The multiplier is e^{πi(b⁻-b⁺)/4} / sqrt|D| and the weight
/// 1 - b⁻/2, read off the table's signature and order. Throws ComplexEntryError for
/// unequal ±1/3 counts.
ReducedSMatrix reduce_s_matrix(const CountTable& table);

/// Components indexed by CosetType.
struct FVector {
  std::array<QSeries, 4> components;

  const QSeries& operator[](CosetType t) const { return components[type_index(t)]; }
  QSeries& operator[](CosetType t) { return components[type_index(t)]; }
};

/// η(3τ)³η(τ)⁻⁹.
QSeries eta_quotient_h(const Rational& prec);
/// η(τ/3)³η(τ)⁻⁹.
QSeries eta_quotient_g(const Rational& prec);

/// f₀₀ = 24h, f₀ = -3h, f₁ = 0, f₂ = g + 3h. Requires prec >= 3.
FVector assemble_f(const Rational& prec);

/// q-expansion form of the T-law: the exponents of each component must be congruent to
/// its type residue mod 1, and f₁ must vanish.
VerificationReport check_T(const FVector& f);

struct SCheckPoint {
  std::complex<double> tau;
  std::array<std::complex<double>, 4> lhs;
  std::array<std::complex<double>, 4> rhs;
  double max_residual = 0.0;
  double max_tail = 0.0;
};

SCheckPoint evaluate_S(const FVector& f, const ReducedSMatrix& s, std::complex<double> tau);

/// Compares f(-1/τ) against the S-combination at τ. INCONCLUSIVE when a tail bound is
/// not below tol/10 at either point.
VerificationReport check_S_numeric(const FVector& f, const ReducedSMatrix& s, std::complex<double> tau,
                                   double tol);

/// Σ_n (4n+1) q^{(4n+1)²/8}, truncated at prec.
QSeries eta_cube_theta_series(const Rational& prec);

/// Exact coefficientwise equality of two truncated series up to the smaller precision.
VerificationReport check_series_equal(std::string name, const QSeries& lhs, const QSeries& rhs);

/// η(τ)³ against its theta-series form. Requires prec >= 25/8.
VerificationReport check_eta_cube_identity(const Rational& prec);

/// Residue form of the three-term shift identity: restrict_residue(g, 0) == -3h.
VerificationReport check_triple_shift(const QSeries& g, const QSeries& h);
VerificationReport check_triple_shift_identity(const Rational& prec);

/// S² = ±|D|·I on the type-constant subspace; the sign found is recorded in the details.
VerificationReport check_s_squared(const ReducedSMatrix& s, std::size_t group_order);

/// f₀₀ = -8 f₀ exactly, and the S-rows for T00 and T0 agree on f after that substitution.
VerificationReport check_proportionality(const FVector& f, const ReducedSMatrix& s);

VerificationReport compare_count_tables(const CountTable& computed, const CountTable& expected);
VerificationReport compare_s_matrix(const ReducedSMatrix& computed, const RatMatrix& expected);

/// Published values the checks are compared against.
namespace reference {
CountTable count_table();
RatMatrix s_matrix_rows();
std::array<unsigned long, 4> class_sizes();

struct Coefficient {
  CosetType type;
  Rational exponent;
  Rational value;
};
std::vector<Coefficient> f_coefficients();
}  // namespace reference

VerificationReport check_f_coefficients(const FVector& f);

}  // namespace cubicform
