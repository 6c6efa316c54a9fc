#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubicform/rational.hpp"

namespace cubicform {

/// Raised for malformed lattices and misuse of discriminant-group operations.
class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// An even nondegenerate integral lattice given by its Gram matrix in a fixed basis.
class Lattice {
 public:
  /// Validates symmetry, evenness and nondegeneracy; throws LatticeError otherwise.
  explicit Lattice(IntMatrix gram);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  const Integer& determinant() const { return det_; }
  Signature signature() const;

  /// v·G·w for vectors in basis coordinates.
  Rational inner(const RatVector& v, const RatVector& w) const;
  Rational norm(const RatVector& v) const { return inner(v, v); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  Integer det_;
};

Integer determinant(const IntMatrix& m);

/// Smith normal form: left * m * right == diagonal, with diagonal[i] | diagonal[i+1]
/// and every diagonal entry nonnegative. left and right are unimodular.
struct SmithForm {
  IntMatrix left;
  IntMatrix right;
  std::vector<Integer> diagonal;
};

SmithForm smith_normal_form(const IntMatrix& m);

Lattice a2_gram();
/// Gram matrix scaled entrywise by k. Throws LatticeError for k == 0.
Lattice rescale(const Lattice& lattice, const Integer& k);
/// Block-diagonal sum. Throws LatticeError for an empty list.
Lattice direct_sum(std::span<const Lattice> summands);
/// A2 ⊕ A2(-1)^4, the rank 10 lattice of signature (2,8).
Lattice cubic_surface_lattice();

enum class CosetType { T00, T0, T1, T2 };

inline constexpr CosetType kAllCosetTypes[] = {CosetType::T00, CosetType::T0, CosetType::T1,
                                               CosetType::T2};

inline constexpr std::size_t type_index(CosetType t) { return static_cast<std::size_t>(t); }
std::string type_name(CosetType t);
/// Residue n/3 of the q-exponents allowed for components of this type.
Rational type_residue(CosetType t);

class DiscGroup;

/// An element of M'/M, identified by its Smith coordinates.
class DiscElement {
 public:
  const DiscGroup& group() const { return *group_; }
  std::size_t index() const { return index_; }
  /// Coset representative in lattice-basis coordinates.
  const RatVector& rep() const;
  /// Residues modulo each invariant factor.
  std::vector<Integer> residues() const;
  bool is_zero() const { return index_ == 0; }

  DiscElement operator+(const DiscElement& other) const;
  DiscElement operator-() const;

  friend bool operator==(const DiscElement& a, const DiscElement& b);

 private:
  friend class DiscGroup;
  DiscElement(std::shared_ptr<const DiscGroup> group, std::size_t index)
      : group_(std::move(group)), index_(index) {}

  std::shared_ptr<const DiscGroup> group_;
  std::size_t index_;
};

/// The finite quadratic module M'/M of an even lattice.
class DiscGroup : public std::enable_shared_from_this<DiscGroup> {
 public:
  const Lattice& lattice() const { return lattice_; }
  /// Invariant factors greater than one, in divisibility order.
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t order() const { return reps_.size(); }
  const std::vector<RatVector>& coset_reps() const { return reps_; }

  DiscElement zero() const { return element(0); }
  DiscElement element(std::size_t index) const;
  std::vector<DiscElement> elements() const;
  /// Coset of a dual vector given in lattice-basis coordinates. Throws LatticeError if v is not in M'.
  DiscElement element_of(const RatVector& v) const;

  std::size_t index_of(const std::vector<Integer>& residues) const;
  std::vector<Integer> residues_of(std::size_t index) const;

  Rational norm_mod2(std::size_t index) const;
  Rational pairing_mod1(std::size_t a, std::size_t b) const;

 private:
  friend std::shared_ptr<const DiscGroup> discriminant_group(const Lattice& lattice);
  explicit DiscGroup(const Lattice& lattice);

  Lattice lattice_;
  std::vector<Integer> factors_;
  // Rows of the Smith left transform belonging to nontrivial factors.
  std::vector<IntVector> coordinate_rows_;
  std::vector<RatVector> reps_;
  std::vector<IntVector> gram_reps_;
  std::vector<Rational> norms_;
};

/// Discriminant group via Smith normal form. The group order equals |det(gram)|.
std::shared_ptr<const DiscGroup> discriminant_group(const Lattice& lattice);

/// γ² reduced to [0, 2).
Rational norm_mod2(const DiscElement& g);
/// (γ, δ) reduced to [0, 1). Throws LatticeError when the elements come from different groups.
Rational pairing_mod1(const DiscElement& g, const DiscElement& d);
/// T00 for zero; Tn when γ²/2 ≡ n/3 mod 1. Throws LatticeError for any other residue.
CosetType type_of(const DiscElement& g);

}  // namespace cubicform
