#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "cubicform/lattice.hpp"
#include "cubicform/report.hpp"
#include "cubicform/weil.hpp"

namespace cubicform {

/// An ω-orbit that is not a triple with zero sum and pairwise pairing 1/3.
class SymmetryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weight of the lift: constant term of f₀₀ divided by 2.
Rational product_weight(const FVector& f);

struct PrincipalTerm {
  CosetType type;
  Rational exponent;
  Rational coefficient;
  friend bool operator==(const PrincipalTerm&, const PrincipalTerm&) = default;
};

/// Negative-exponent terms of every component, ordered by type then exponent.
std::vector<PrincipalTerm> principal_part(const FVector& f);

struct OmegaIsometry {
  IntMatrix matrix;
};

/// 120° rotation e₁ ↦ e₂, e₂ ↦ -e₁-e₂ on each of `blocks` consecutive A₂-type blocks.
OmegaIsometry omega_isometry(std::size_t blocks = 5);

/// Isometry of the lattice, order exactly 3, and 1 + ω + ω² = 0.
VerificationReport check_omega(const OmegaIsometry& omega, const Lattice& lattice);

struct DivisorVector {
  RatVector vec;  // lattice-basis coordinates
  Rational norm;
  friend bool operator==(const DivisorVector&, const DivisorVector&) = default;
};

/// All λ = n/e in M' with λ² = target and |n_i| <= bound, where e is the exponent of the
/// discriminant group (3 for the cubic-surface lattice). Lexicographic order in n.
/// Uses the block-diagonal structure of the Gram matrix when present.
std::vector<DivisorVector> enumerate_divisor_vectors(const Lattice& lattice, const Integer& exponent,
                                                     long bound, const Rational& target_norm);
/// Norm -2/3 vectors of the cubic-surface lattice.
std::vector<DivisorVector> enumerate_divisor_vectors(long bound);

/// Adds ω- and ω²-images and returns the sorted, duplicate-free result.
std::vector<DivisorVector> close_under_omega(const std::vector<DivisorVector>& vs, const OmegaIsometry& omega);

using Orbit = std::array<std::size_t, 3>;

/// Partitions vs into {λ, ωλ, ω²λ}, checking size 3, zero sum and (λ, ωλ) = 1/3 for each.
/// Throws std::invalid_argument when vs is not ω-closed, SymmetryError when an orbit is bad.
std::vector<Orbit> omega_orbits(const std::vector<DivisorVector>& vs, const OmegaIsometry& omega,
                                const Lattice& lattice);

struct DivisorSummary {
  std::size_t enumerated = 0;
  std::size_t closed = 0;
  std::size_t orbits = 0;
};

/// Enumeration, closure, type and ω-invariance checks, orbit partition.
VerificationReport check_divisor_orbits(long bound, const OmegaIsometry& omega, DivisorSummary* summary = nullptr);

VerificationReport check_weight(const FVector& f, const Rational& expected);
VerificationReport check_principal_part(const FVector& f, const std::vector<PrincipalTerm>& expected);

/// Zero orders: 1 per hyperplane of the symmetric space for each unit principal-part term,
/// 3 after restriction, and 1 after the cube root.
VerificationReport divisor_multiplicities(const std::vector<PrincipalTerm>& pp);

nlohmann::json to_json(const std::vector<DivisorVector>& vs, const std::vector<Orbit>& orbits);

}  // namespace cubicform
