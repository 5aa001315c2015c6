#include "msets/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "msets/errors.hpp"

namespace msets {

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  const std::size_t n = std::min(D.rows(), D.cols());
  d.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

namespace {

// Quotient rounded toward zero; remainders shrink strictly in absolute value.
Integer tquot(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer a = abs(d(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pr = i;
        pc = j;
      }
    }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition out{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = out.D;
  IntMatrix& u = out.U;
  IntMatrix& v = out.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pr = t, pc = t;
    if (!find_pivot(d, t, pr, pc)) break;
    for (;;) {
      d.swap_rows(t, pr);
      u.swap_rows(t, pr);
      d.swap_columns(t, pc);
      v.swap_columns(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = -tquot(d(i, t), d(t, t));
        d.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = -tquot(d(t, j), d(t, t));
        d.add_column_multiple(j, t, q);
        v.add_column_multiple(j, t, q);
        if (d(t, j) != 0) clean = false;
      }

      if (clean) {
        // Enforce d_t | every remaining entry by folding an offending row in.
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
              d.add_row_multiple(t, i, 1);
              u.add_row_multiple(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      find_pivot(d, t, pr, pc);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return out;
}

std::size_t rank_over_q(const IntMatrix& a) { return smith_normal_form(a).rank(); }

std::size_t rank_mod_2(const IntMatrix& a) {
  // U and V stay invertible mod 2, so the rank is the count of odd invariant factors.
  std::size_t r = 0;
  for (const auto& d : smith_normal_form(a).diagonal())
    if (mpz_odd_p(d.get_mpz_t())) ++r;
  return r;
}

// ---------------------------------------------------------------------------

LatticeBasis::LatticeBasis(std::size_t ambient_rank, std::vector<IntVector> basis)
    : ambient_rank_(ambient_rank), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    if (b.size() != ambient_rank_) throw std::invalid_argument("basis vector has wrong length");
  snf_ = smith_normal_form(matrix());
  if (snf_.rank() != basis_.size())
    throw std::invalid_argument("lattice basis vectors are linearly dependent");
}

LatticeBasis LatticeBasis::standard(std::size_t n) {
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  return LatticeBasis(n, std::move(basis));
}

IntMatrix LatticeBasis::matrix() const { return IntMatrix::from_columns(basis_, ambient_rank_); }

std::optional<IntVector> LatticeBasis::try_coordinates(const IntVector& x) const {
  if (x.size() != ambient_rank_) throw std::invalid_argument("vector has wrong ambient rank");
  // B c = x  <=>  D z = U x  with  c = V z.
  const IntVector y = snf_.U * x;
  const std::size_t k = basis_.size();
  IntVector z(k);
  for (std::size_t i = 0; i < ambient_rank_; ++i) {
    if (i < k) {
      const Integer& d = snf_.D(i, i);
      if (!mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      z[i] = y[i] / d;
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.V * z;
}

IntVector LatticeBasis::coordinates(const IntVector& x) const {
  auto c = try_coordinates(x);
  if (!c) throw NotInLattice("vector " + to_string(x) + " is not in the lattice");
  return *c;
}

IntVector LatticeBasis::element(const IntVector& coords) const {
  if (coords.size() != basis_.size()) throw std::invalid_argument("coordinate count mismatch");
  return matrix() * coords;
}

Integer divisibility(const IntVector& x, const LatticeBasis& lattice) {
  return gcd_of(lattice.coordinates(x));
}

SublatticeIndex sublattice_index(const LatticeBasis& sub, const LatticeBasis& lattice) {
  if (sub.ambient_rank() != lattice.ambient_rank())
    throw NotSublattice("lattices live in different ambient ranks");
  std::vector<IntVector> coords;
  for (const auto& b : sub.vectors()) {
    auto c = lattice.try_coordinates(b);
    if (!c) throw NotSublattice("vector " + to_string(b) + " is not in the ambient lattice");
    coords.push_back(std::move(*c));
  }
  if (sub.rank() < lattice.rank()) return {std::nullopt};
  Integer order = 1;
  for (const auto& d : smith_normal_form(IntMatrix::from_columns(coords, lattice.rank())).diagonal())
    order *= d;
  return {order};
}

// ---------------------------------------------------------------------------

AffineSublattice::AffineSublattice(IntVector off, LatticeBasis sub)
    : offset(std::move(off)), sublattice(std::move(sub)) {
  if (offset.size() != sublattice.ambient_rank())
    throw std::invalid_argument("offset length differs from ambient rank");
}

bool AffineSublattice::contains(const IntVector& x) const {
  if (x.size() != offset.size()) return false;
  IntVector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - offset[i];
  return sublattice.contains(diff);
}

Integer AffineSublattice::index() const {
  if (!is_full()) throw NotFullSublattice("affine sublattice is not full");
  auto idx = sublattice_index(sublattice, LatticeBasis::standard(sublattice.ambient_rank()));
  return *idx.order;
}

IntVector prime_witness(const AffineSublattice& s, const Integer& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw std::invalid_argument(p.get_str() + " is not prime");
  const Integer index = s.index();
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), index.get_mpz_t());
  if (g != 1)
    throw PrimeDividesIndex("prime " + p.get_str() + " divides the index " + index.get_str());

  // B c = l0 (mod p) is solvable since every invariant factor of B is a unit mod p.
  const IntMatrix b = s.sublattice.matrix();
  const auto snf = smith_normal_form(b);
  const IntVector y = snf.U * s.offset;
  const std::size_t n = y.size();
  IntVector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), snf.D(i, i).get_mpz_t(), p.get_mpz_t());
    Integer r = y[i] * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    if (2 * r > p) r -= p;
    z[i] = r;
  }
  const IntVector lp = b * (snf.V * z);
  IntVector w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = s.offset[i] - lp[i];
  return w;
}

std::vector<SpectrumEntry> divisibility_spectrum(const AffineSublattice& s, std::size_t count,
                                                 std::stop_token stop) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  const Integer index = s.index();
  const auto ambient = LatticeBasis::standard(s.offset.size());
  const IntVector& first = s.sublattice.vectors().front();

  std::vector<SpectrumEntry> out;
  Integer p = 2;
  while (out.size() < count) {
    if (stop.stop_requested()) throw Cancelled();
    if (!mpz_divisible_p(index.get_mpz_t(), p.get_mpz_t())) {
      IntVector w = prime_witness(s, p);
      // A zero witness (offset already in L0) is moved along L0 by p * b_1,
      // which keeps it in S and divisible by p.
      if (is_zero(w))
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = p * first[i];
      Integer d = divisibility(w, ambient);
      bool seen = std::any_of(out.begin(), out.end(),
                              [&](const SpectrumEntry& e) { return e.divisibility == d; });
      if (!seen) out.push_back({p, std::move(w), d});
    }
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  return out;
}

IntVector element_with_divisibility_above(const LatticeBasis& lattice, const Integer& bound) {
  if (lattice.is_zero()) throw std::invalid_argument("zero lattice has only divisibility 0");
  Integer m = bound < 0 ? Integer(1) : Integer(bound + 1);
  IntVector x = lattice.vectors().front();
  for (auto& c : x) c *= m;
  return x;
}

IntVector clear_scale(const std::vector<Rational>& x, const Integer& scale) {
  IntVector out;
  out.reserve(x.size());
  for (const auto& q : x) {
    Rational scaled = q * scale;
    if (scaled.get_den() != 1)
      throw NotInLattice("class " + q.get_str() + " is not in (1/" + scale.get_str() + ")-lattice");
    out.push_back(scaled.get_num());
  }
  return out;
}

}  // namespace msets
