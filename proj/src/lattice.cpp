#include "cubicform/lattice.hpp"

#include <algorithm>
#include <utility>

namespace cubicform {

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw LatticeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(rows);
  IntMatrix right = IntMatrix::identity(cols);
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      swap_rows(a, t, pi);
      swap_rows(left, t, pi);
      swap_cols(a, t, pj);
      swap_cols(right, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row(a, i, t, -q);
        add_row(left, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col(a, j, t, -q);
        add_col(right, j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(a, t, i, 1);
            add_row(left, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) left(t, j) = -left(t, j);
    }
  }

  SmithForm form{std::move(left), std::move(right), {}};
  for (std::size_t t = 0; t < steps; ++t) form.diagonal.push_back(a(t, t));
  return form;
}

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols())
    throw LatticeError("Gram matrix must be square and nonempty");
  for (std::size_t i = 0; i < rank(); ++i) {
    if (gram_(i, i) % 2 != 0) throw LatticeError("Gram matrix has an odd diagonal entry");
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw LatticeError("Gram matrix is not symmetric");
  }
  det_ = cubicform::determinant(gram_);
  if (det_ == 0) throw LatticeError("Gram matrix is degenerate");
}

Signature Lattice::signature() const {
  // Congruence diagonalisation over Q; Sylvester's law of inertia gives the sign counts.
  const std::size_t n = rank();
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = gram_(i, j);

  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, p) == 0) ++p;
      if (p < n) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, p));
      } else {
        p = k + 1;
        while (p < n && a(k, p) == 0) ++p;
        if (p == n) throw LatticeError("degenerate form in signature");
        // e_k += e_p gives a(k,k) = 2 a(k,p) != 0 since a(p,p) == 0.
        for (std::size_t j = 0; j < n; ++j) a(k, j) += a(p, j);
        for (std::size_t i = 0; i < n; ++i) a(i, k) += a(i, p);
      }
    }
    const Rational pivot = a(k, k);
    (pivot > 0 ? sig.positive : sig.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = k; j < n; ++j) a(j, i) = a(i, j);
    }
  }
  return sig;
}

Rational Lattice::inner(const RatVector& v, const RatVector& w) const {
  if (v.size() != rank() || w.size() != rank()) throw LatticeError("vector length does not match rank");
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      if (gram_(i, j) != 0) row += gram_(i, j) * w[j];
    s += v[i] * row;
  }
  return s;
}

Lattice a2_gram() { return Lattice(IntMatrix{{2, -1}, {-1, 2}}); }

Lattice rescale(const Lattice& lattice, const Integer& k) {
  if (k == 0) throw LatticeError("rescale: scale factor must be nonzero");
  IntMatrix g = lattice.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= k;
  return Lattice(std::move(g));
}

Lattice direct_sum(std::span<const Lattice> summands) {
  if (summands.empty()) throw LatticeError("direct_sum: empty list of summands");
  std::size_t n = 0;
  for (const auto& l : summands) n += l.rank();
  IntMatrix g(n, n);
  std::size_t offset = 0;
  for (const auto& l : summands) {
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t j = 0; j < l.rank(); ++j) g(offset + i, offset + j) = l.gram()(i, j);
    offset += l.rank();
  }
  return Lattice(std::move(g));
}

Lattice cubic_surface_lattice() {
  const Lattice a2 = a2_gram();
  const Lattice a2neg = rescale(a2, -1);
  const Lattice blocks[] = {a2, a2neg, a2neg, a2neg, a2neg};
  return direct_sum(blocks);
}

std::string type_name(CosetType t) {
  switch (t) {
    case CosetType::T00: return "00";
    case CosetType::T0: return "0";
    case CosetType::T1: return "1";
    case CosetType::T2: return "2";
  }
  return "?";
}

Rational type_residue(CosetType t) {
  switch (t) {
    case CosetType::T00:
    case CosetType::T0: return 0;
    case CosetType::T1: return Rational(1, 3);
    case CosetType::T2: return Rational(2, 3);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Discriminant group

DiscGroup::DiscGroup(const Lattice& lattice) : lattice_(lattice) {
  const SmithForm snf = smith_normal_form(lattice_.gram());
  const std::size_t n = lattice_.rank();

  // U G V = D, so M' = G^{-1} Z^n = V D^{-1} Z^n. The columns of V divided by d_i
  // generate M'/M, and the Smith coordinates of a dual vector v are (U G v)_i mod d_i.
  std::vector<RatVector> generators;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = snf.diagonal[i];
    if (d == 1) continue;
    factors_.push_back(d);
    IntVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = snf.left(i, j);
    coordinate_rows_.push_back(std::move(row));
    RatVector g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = make_rational(snf.right(j, i), d);
    generators.push_back(std::move(g));
  }

  Integer order = 1;
  for (const auto& d : factors_) order *= d;
  if (abs(lattice_.determinant()) != order)
    throw LatticeError("Smith form order does not match |det|");
  if (!order.fits_ulong_p() || order.get_ui() > (1ul << 24))
    throw LatticeError("discriminant group too large to enumerate");

  const std::size_t count = order.get_ui();
  reps_.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto res = residues_of(idx);
    RatVector v(n);
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (res[g] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] += res[g] * generators[g][j];
    }
    reps_.push_back(std::move(v));
  }

  gram_reps_.reserve(count);
  norms_.reserve(count);
  for (const auto& v : reps_) {
    IntVector gv(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += lattice_.gram()(i, j) * v[j];
      if (!is_integer(s)) throw LatticeError("coset representative is not a dual vector");
      gv[i] = s.get_num();
    }
    Rational nrm = 0;
    for (std::size_t i = 0; i < n; ++i) nrm += v[i] * gv[i];
    norms_.push_back(reduce_mod(nrm, 2));
    gram_reps_.push_back(std::move(gv));
  }
}

std::vector<Integer> DiscGroup::residues_of(std::size_t index) const {
  std::vector<Integer> res(factors_.size());
  for (std::size_t g = factors_.size(); g-- > 0;) {
    const unsigned long d = factors_[g].get_ui();
    res[g] = index % d;
    index /= d;
  }
  return res;
}

std::size_t DiscGroup::index_of(const std::vector<Integer>& residues) const {
  if (residues.size() != factors_.size()) throw LatticeError("residue vector has wrong length");
  std::size_t idx = 0;
  for (std::size_t g = 0; g < factors_.size(); ++g) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), residues[g].get_mpz_t(), factors_[g].get_mpz_t());
    idx = idx * factors_[g].get_ui() + r.get_ui();
  }
  return idx;
}

DiscElement DiscGroup::element(std::size_t index) const {
  if (index >= order()) throw LatticeError("discriminant element index out of range");
  return DiscElement(shared_from_this(), index);
}

std::vector<DiscElement> DiscGroup::elements() const {
  std::vector<DiscElement> out;
  out.reserve(order());
  for (std::size_t i = 0; i < order(); ++i) out.push_back(element(i));
  return out;
}

DiscElement DiscGroup::element_of(const RatVector& v) const {
  const std::size_t n = lattice_.rank();
  if (v.size() != n) throw LatticeError("vector length does not match rank");
  IntVector gv(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += lattice_.gram()(i, j) * v[j];
    if (!is_integer(s)) throw LatticeError("vector is not in the dual lattice");
    gv[i] = s.get_num();
  }
  std::vector<Integer> res(factors_.size());
  for (std::size_t g = 0; g < factors_.size(); ++g)
    for (std::size_t j = 0; j < n; ++j) res[g] += coordinate_rows_[g][j] * gv[j];
  return element(index_of(res));
}

Rational DiscGroup::norm_mod2(std::size_t index) const { return norms_.at(index); }

Rational DiscGroup::pairing_mod1(std::size_t a, std::size_t b) const {
  const auto& v = reps_.at(a);
  const auto& gw = gram_reps_.at(b);
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0 && gw[i] != 0) s += v[i] * gw[i];
  return reduce_mod(s, 1);
}

std::shared_ptr<const DiscGroup> discriminant_group(const Lattice& lattice) {
  return std::shared_ptr<const DiscGroup>(new DiscGroup(lattice));
}

const RatVector& DiscElement::rep() const { return group_->coset_reps()[index_]; }

std::vector<Integer> DiscElement::residues() const { return group_->residues_of(index_); }

DiscElement DiscElement::operator+(const DiscElement& other) const {
  if (group_ != other.group_) throw LatticeError("adding elements of different discriminant groups");
  auto a = residues();
  const auto b = other.residues();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return group_->element(group_->index_of(a));
}

DiscElement DiscElement::operator-() const {
  auto a = residues();
  for (auto& r : a) r = -r;
  return group_->element(group_->index_of(a));
}

bool operator==(const DiscElement& a, const DiscElement& b) {
  return a.group_ == b.group_ && a.index_ == b.index_;
}

Rational norm_mod2(const DiscElement& g) { return g.group().norm_mod2(g.index()); }

Rational pairing_mod1(const DiscElement& g, const DiscElement& d) {
  if (&g.group() != &d.group()) throw LatticeError("pairing elements of different discriminant groups");
  return g.group().pairing_mod1(g.index(), d.index());
}

CosetType type_of(const DiscElement& g) {
  if (g.is_zero()) return CosetType::T00;
  const Rational q = reduce_mod(norm_mod2(g) / 2, 1);
  if (q == 0) return CosetType::T0;
  if (q == Rational(1, 3)) return CosetType::T1;
  if (q == Rational(2, 3)) return CosetType::T2;
  throw LatticeError("cannot classify coset with γ²/2 ≡ " + to_string(q) + " mod 1");
}

}  // namespace cubicform
