#include "cubicform/borcherds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cubicform {

Rational product_weight(const FVector& f) { return f[CosetType::T00].coefficient(0) / 2; }

std::vector<PrincipalTerm> principal_part(const FVector& f) {
  std::vector<PrincipalTerm> out;
  for (auto t : kAllCosetTypes)
    for (const auto& [e, c] : f[t].terms()) {
      if (e >= 0) break;
      out.push_back({t, e, c});
    }
  return out;
}

OmegaIsometry omega_isometry(std::size_t blocks) {
  IntMatrix m(2 * blocks, 2 * blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t o = 2 * b;
    // columns are the images of e1 and e2
    m(o + 1, o) = 1;
    m(o, o + 1) = -1;
    m(o + 1, o + 1) = -1;
  }
  return {std::move(m)};
}

VerificationReport check_omega(const OmegaIsometry& omega, const Lattice& lattice) {
  VerificationReport r{"ω isometry"};
  const IntMatrix& w = omega.matrix;
  if (w.rows() != lattice.rank() || w.cols() != lattice.rank()) {
    r.fail("ω has the wrong size for this lattice");
    return r;
  }
  const IntMatrix id = IntMatrix::identity(w.rows());
  if (w.transpose() * lattice.gram() * w == lattice.gram()) r.note("ωᵀ G ω = G");
  else r.fail("ωᵀ G ω ≠ G");
  const IntMatrix w2 = w * w;
  if (w2 * w == id) r.note("ω³ = I");
  else r.fail("ω³ ≠ I");
  if (w == id) r.fail("ω = I");
  else r.note("ω ≠ I");
  if (id + w + w2 == IntMatrix(w.rows(), w.cols())) r.note("1 + ω + ω² = 0");
  else r.fail("1 + ω + ω² ≠ 0");
  return r;
}

namespace {

using IVec = std::vector<long>;

struct Block {
  std::size_t offset;
  std::size_t size;
};

std::vector<Block> diagonal_blocks(const IntMatrix& g) {
  const std::size_t n = g.rows();
  std::vector<Block> blocks;
  std::size_t start = 0;
  // reach = furthest column coupled to any row seen so far in the current block
  std::size_t reach = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (g(i, j) != 0) reach = std::max(reach, j);
    if (reach <= i) {
      blocks.push_back({start, i + 1 - start});
      start = i + 1;
      reach = i + 1;
    }
  }
  return blocks;
}

struct Candidate {
  IVec coords;
  long norm;  // nᵀ G n
};

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("Gram entry does not fit in a machine integer");
  return z.get_si();
}

}  // namespace

std::vector<DivisorVector> enumerate_divisor_vectors(const Lattice& lattice, const Integer& exponent, long bound,
                                                     const Rational& target_norm) {
  if (bound < 1) throw std::invalid_argument("enumeration bound must be >= 1");
  if (exponent < 1) throw std::invalid_argument("denominator must be positive");
  const long e = to_long(exponent);
  const Rational scaled_target = target_norm * e * e;
  if (!is_integer(scaled_target)) return {};
  const long target = to_long(scaled_target.get_num());

  const IntMatrix& gram = lattice.gram();
  const auto blocks = diagonal_blocks(gram);

  // Per block: every coordinate vector in the box whose image under G is divisible by e.
  std::vector<std::vector<Candidate>> cands(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [off, sz] = blocks[b];
    std::vector<long> g(sz * sz);
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) g[i * sz + j] = to_long(gram(off + i, off + j));
    IVec n(sz, -bound);
    while (true) {
      bool dual = true;
      long norm = 0;
      for (std::size_t i = 0; i < sz; ++i) {
        long gi = 0;
        for (std::size_t j = 0; j < sz; ++j) gi += g[i * sz + j] * n[j];
        if (gi % e != 0) dual = false;
        norm += n[i] * gi;
      }
      if (dual) cands[b].push_back({n, norm});
      std::size_t k = sz;
      while (k > 0 && n[k - 1] == bound) n[--k] = -bound;
      if (k == 0) break;
      ++n[k - 1];
    }
  }

  // reachable[b] = norms attainable by blocks b..end
  std::vector<std::set<long>> reachable(blocks.size() + 1);
  reachable[blocks.size()] = {0};
  for (std::size_t b = blocks.size(); b-- > 0;)
    for (const auto& c : cands[b])
      for (long rest : reachable[b + 1]) reachable[b].insert(c.norm + rest);

  std::vector<DivisorVector> out;
  IVec current(lattice.rank());
  auto recurse = [&](auto&& self, std::size_t b, long need) -> void {
    if (b == blocks.size()) {
      if (need != 0) return;
      RatVector v(current.size());
      for (std::size_t i = 0; i < current.size(); ++i) v[i] = make_rational(current[i], e);
      out.push_back({std::move(v), target_norm});
      return;
    }
    for (const auto& c : cands[b]) {
      if (!reachable[b + 1].contains(need - c.norm)) continue;
      std::copy(c.coords.begin(), c.coords.end(), current.begin() + static_cast<long>(blocks[b].offset));
      self(self, b + 1, need - c.norm);
    }
  };
  recurse(recurse, 0, target);
  return out;
}

std::vector<DivisorVector> enumerate_divisor_vectors(long bound) {
  return enumerate_divisor_vectors(cubic_surface_lattice(), 3, bound, Rational(-2, 3));
}

namespace {

// Common-denominator integer form of a family of rational vectors.
struct ScaledFamily {
  long denom = 1;
  std::vector<IVec> vecs;
};

ScaledFamily scale_family(const std::vector<DivisorVector>& vs) {
  Integer d = 1;
  for (const auto& v : vs)
    for (const auto& x : v.vec) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  ScaledFamily f;
  f.denom = to_long(d);
  f.vecs.reserve(vs.size());
  for (const auto& v : vs) {
    IVec n(v.vec.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
      const Integer s = v.vec[i].get_num() * (d / v.vec[i].get_den());
      n[i] = to_long(s);
    }
    f.vecs.push_back(std::move(n));
  }
  return f;
}

IVec apply_int(const std::vector<long>& m, std::size_t n, const IVec& v) {
  IVec out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
  return out;
}

long inner_int(const std::vector<long>& g, std::size_t n, const IVec& a, const IVec& b) {
  long s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    long row = 0;
    for (std::size_t j = 0; j < n; ++j) row += g[i * n + j] * b[j];
    s += a[i] * row;
  }
  return s;
}

std::vector<long> flatten(const IntMatrix& m) {
  std::vector<long> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(to_long(m(i, j)));
  return out;
}

std::string vec_text(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace

std::vector<DivisorVector> close_under_omega(const std::vector<DivisorVector>& vs, const OmegaIsometry& omega) {
  if (vs.empty()) return {};
  const std::size_t n = omega.matrix.rows();
  const ScaledFamily fam = scale_family(vs);
  const auto w = flatten(omega.matrix);
  std::vector<std::pair<IVec, std::size_t>> all;  // scaled vector, source index for the norm
  all.reserve(3 * vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    IVec a = fam.vecs[i];
    IVec b = apply_int(w, n, a);
    IVec c = apply_int(w, n, b);
    all.emplace_back(std::move(a), i);
    all.emplace_back(std::move(b), i);
    all.emplace_back(std::move(c), i);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
            all.end());
  std::vector<DivisorVector> out;
  out.reserve(all.size());
  for (const auto& [iv, src] : all) {
    RatVector v(iv.size());
    for (std::size_t k = 0; k < iv.size(); ++k) v[k] = make_rational(iv[k], fam.denom);
    out.push_back({std::move(v), vs[src].norm});
  }
  return out;
}

std::vector<Orbit> omega_orbits(const std::vector<DivisorVector>& vs, const OmegaIsometry& omega,
                                const Lattice& lattice) {
  const std::size_t n = lattice.rank();
  const ScaledFamily fam = scale_family(vs);
  const auto g = flatten(lattice.gram());
  const auto w = flatten(omega.matrix);
  const long d2 = fam.denom * fam.denom;

  std::map<IVec, std::size_t> index;
  for (std::size_t i = 0; i < fam.vecs.size(); ++i) index.emplace(fam.vecs[i], i);

  std::vector<Orbit> orbits;
  std::vector<bool> visited(vs.size(), false);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (visited[i]) continue;
    const IVec& a = fam.vecs[i];
    const IVec b = apply_int(w, n, a);
    const IVec c = apply_int(w, n, b);
    const auto jb = index.find(b);
    const auto jc = index.find(c);
    if (jb == index.end() || jc == index.end())
      throw std::invalid_argument("vector set is not closed under ω at " + vec_text(vs[i].vec));
    if (apply_int(w, n, c) != a) throw SymmetryError("ω³λ ≠ λ at " + vec_text(vs[i].vec));
    const Orbit orbit{i, jb->second, jc->second};
    if (orbit[0] == orbit[1] || orbit[1] == orbit[2] || orbit[0] == orbit[2])
      throw SymmetryError("orbit of " + vec_text(vs[i].vec) + " has fewer than 3 elements");
    for (std::size_t k = 0; k < n; ++k)
      if (a[k] + b[k] + c[k] != 0) throw SymmetryError("λ + ωλ + ω²λ ≠ 0 at " + vec_text(vs[i].vec));
    // (λ, ωλ) = 1/3 for each consecutive pair of the orbit, i.e. 3·(x, y)·d² = d².
    for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&b, &c}, std::pair{&c, &a}})
      if (3 * inner_int(g, n, *x, *y) != d2)
        throw SymmetryError("(λ, ωλ) ≠ 1/3 in the orbit of " + vec_text(vs[i].vec));
    for (auto k : orbit) {
      if (visited[k]) throw SymmetryError("orbits overlap at " + vec_text(vs[k].vec));
      visited[k] = true;
    }
    orbits.push_back(orbit);
  }
  return orbits;
}

VerificationReport check_divisor_orbits(long bound, const OmegaIsometry& omega, DivisorSummary* summary) {
  VerificationReport r{"norm -2/3 divisor vectors and ω-orbits (bound " + std::to_string(bound) + ")"};
  const Lattice m = cubic_surface_lattice();
  const auto group = discriminant_group(m);
  const auto found = enumerate_divisor_vectors(bound);

  if (omega.matrix.rows() != m.rank()) {
    r.fail("ω has the wrong size");
    return r;
  }
  const ScaledFamily fam = scale_family(found);
  const auto g = flatten(m.gram());
  const auto w = flatten(omega.matrix);
  const std::size_t n = m.rank();
  const long d2 = fam.denom * fam.denom;

  // The coset of n/d depends only on n mod d, so classify each residue pattern once.
  std::map<IVec, CosetType> coset_type;
  std::size_t wrong_norm = 0, wrong_type = 0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (3 * inner_int(g, n, fam.vecs[i], fam.vecs[i]) != -2 * d2) ++wrong_norm;
    IVec key = fam.vecs[i];
    for (auto& x : key) x = ((x % fam.denom) + fam.denom) % fam.denom;
    auto it = coset_type.find(key);
    if (it == coset_type.end()) it = coset_type.emplace(std::move(key), type_of(group->element_of(found[i].vec))).first;
    if (it->second != CosetType::T2) ++wrong_type;
  }
  if (wrong_norm) r.fail(std::to_string(wrong_norm) + " vectors do not have norm -2/3");
  if (wrong_type) r.fail(std::to_string(wrong_type) + " vectors are not of type 2");
  if (!wrong_norm && !wrong_type)
    r.note("all " + std::to_string(found.size()) + " enumerated vectors have norm -2/3 and type 2");

  // ω must preserve norms of every vector and pairings of neighbouring vectors.
  std::size_t broken = 0;
  for (std::size_t i = 0; i < fam.vecs.size(); ++i) {
    const IVec& a = fam.vecs[i];
    const IVec& b = fam.vecs[(i + 1) % fam.vecs.size()];
    const IVec wa = apply_int(w, n, a);
    const IVec wb = apply_int(w, n, b);
    if (inner_int(g, n, wa, wa) != inner_int(g, n, a, a) || inner_int(g, n, wa, wb) != inner_int(g, n, a, b))
      ++broken;
  }
  if (broken) r.fail("ω changes norms or pairings for " + std::to_string(broken) + " vectors");
  else r.note("ω preserves the norm of every enumerated vector and the pairing of each consecutive pair");

  const auto closed = close_under_omega(found, omega);
  r.note(std::to_string(closed.size()) + " vectors after closing under ω");
  try {
    const auto orbits = omega_orbits(closed, omega, m);
    r.note(std::to_string(orbits.size()) + " orbits, each of size 3 with zero sum and pairwise pairing 1/3");
    if (summary) *summary = {found.size(), closed.size(), orbits.size()};
  } catch (const std::exception& ex) {
    r.fail(ex.what());
  }
  return r;
}

VerificationReport check_weight(const FVector& f, const Rational& expected) {
  VerificationReport r{"weight of the automorphic product"};
  const Rational w = product_weight(f);
  if (w != expected) r.fail("weight " + to_string(w) + ", expected " + to_string(expected));
  else r.note("weight = constant term of f_00 / 2 = " + to_string(w));
  return r;
}

namespace {

std::string term_text(const PrincipalTerm& t) {
  return "(" + type_name(t.type) + ", " + to_string(t.exponent) + ", " + to_string(t.coefficient) + ")";
}

}  // namespace

VerificationReport check_principal_part(const FVector& f, const std::vector<PrincipalTerm>& expected) {
  VerificationReport r{"principal part"};
  const auto pp = principal_part(f);
  std::string got;
  for (const auto& t : pp) got += term_text(t) + " ";
  if (pp != expected) r.fail("principal part " + got + "does not match the expected terms");
  else r.note("principal part: " + got);
  return r;
}

VerificationReport divisor_multiplicities(const std::vector<PrincipalTerm>& pp) {
  VerificationReport r{"zero multiplicities"};
  if (pp.empty()) r.note("no principal part: the lift has no zeros");
  for (const auto& t : pp) {
    const Rational norm = 2 * t.exponent;
    if (!is_integer(t.coefficient) || t.coefficient < 0) {
      r.fail("coefficient " + to_string(t.coefficient) + " of " + term_text(t) +
             " is not a nonnegative integer, so the lift is not holomorphic");
      continue;
    }
    const Rational order = t.coefficient;
    const Rational restricted = order * 3;
    r.note("type " + type_name(t.type) + ": zeros of order " + to_string(order) + " on λ^⊥ for λ ∈ M' with λ² = " +
           to_string(norm));
    r.note("restriction: 3 such hyperplanes (one ω-orbit) meet in each reflection hyperplane, order " +
           to_string(restricted));
    r.note("cube root: order " + to_string(restricted / 3));
    if (restricted / 3 != 1) r.fail("cube root does not have simple zeros");
  }
  return r;
}

nlohmann::json to_json(const std::vector<DivisorVector>& vs, const std::vector<Orbit>& orbits) {
  nlohmann::json vecs = nlohmann::json::array();
  for (const auto& v : vs) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& x : v.vec) coords.push_back(to_string(x));
    vecs.push_back({{"coords", coords}, {"norm", to_string(v.norm)}});
  }
  nlohmann::json orb = nlohmann::json::array();
  for (const auto& o : orbits) orb.push_back({o[0], o[1], o[2]});
  return {{"vectors", vecs}, {"orbits", orb}};
}

}  // namespace cubicform
