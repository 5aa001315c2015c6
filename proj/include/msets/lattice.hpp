#pragma once

#include <optional>
#include <stop_token>
#include <vector>

#include "msets/arith.hpp"

namespace msets {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

// Pivots on the smallest nonzero absolute value, ties broken by lowest row
// and then lowest column, so decompositions are reproducible.
SmithDecomposition smith_normal_form(const IntMatrix& a);

std::size_t rank_over_q(const IntMatrix& a);
std::size_t rank_mod_2(const IntMatrix& a);

// Free abelian group spanned by rationally independent vectors in Z^n.
class LatticeBasis {
 public:
  // Throws std::invalid_argument on length mismatch or linear dependence.
  LatticeBasis(std::size_t ambient_rank, std::vector<IntVector> basis);

  static LatticeBasis standard(std::size_t n);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<IntVector>& vectors() const { return basis_; }

  // Columns are the basis vectors.
  IntMatrix matrix() const;

  // Integer coordinates of x in this basis, or nullopt when x is not in the lattice.
  std::optional<IntVector> try_coordinates(const IntVector& x) const;
  IntVector coordinates(const IntVector& x) const;  // throws NotInLattice
  bool contains(const IntVector& x) const { return try_coordinates(x).has_value(); }

  IntVector element(const IntVector& coords) const;

 private:
  std::size_t ambient_rank_;
  std::vector<IntVector> basis_;
  SmithDecomposition snf_;  // of matrix()
};

// Largest d with x = d * x0 for some x0 in L; 0 for x = 0.
Integer divisibility(const IntVector& x, const LatticeBasis& lattice);

struct SublatticeIndex {
  std::optional<Integer> order;  // nullopt: infinite index

  bool finite() const { return order.has_value(); }
};

// |L / L0|. Throws NotSublattice when some vector of L0 is not in L.
SublatticeIndex sublattice_index(const LatticeBasis& sub, const LatticeBasis& lattice);

// l0 + L0 inside the standard lattice Z^n.
struct AffineSublattice {
  IntVector offset;
  LatticeBasis sublattice;

  AffineSublattice(IntVector offset, LatticeBasis sublattice);

  bool is_full() const { return sublattice.rank() == sublattice.ambient_rank(); }
  bool contains(const IntVector& x) const;
  // |Z^n / L0|; throws NotFullSublattice when infinite.
  Integer index() const;
};

// Element of S whose divisibility is a multiple of p. Requires S full and p a
// prime not dividing the index of its sublattice.
IntVector prime_witness(const AffineSublattice& s, const Integer& p);

struct SpectrumEntry {
  Integer prime;
  IntVector witness;
  Integer divisibility;
};

// At least `count` elements of S with pairwise distinct divisibilities, one
// prime (coprime to the index, in increasing order) per entry.
std::vector<SpectrumEntry> divisibility_spectrum(const AffineSublattice& s, std::size_t count,
                                                 std::stop_token stop = {});

// Element of a nonzero lattice whose divisibility exceeds `bound`.
IntVector element_with_divisibility_above(const LatticeBasis& lattice, const Integer& bound);

// Integer coordinates of a rational class in the lattice (1/scale) * Z^n.
// Throws NotInLattice when scale * x is not integral.
IntVector clear_scale(const std::vector<Rational>& x, const Integer& scale);

}  // namespace msets
