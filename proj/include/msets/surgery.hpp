#pragma once

// Surgery-exact-sequence bookkeeping for the supported fundamental groups
// (trivial and free abelian) together with the decision procedures for when
// manifold sets are infinite.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "msets/homology.hpp"
#include "msets/lattice.hpp"

namespace msets {

// L-groups of Z: Z, 0, Z/2, 0 by n mod 4 for n >= 1, zero for n <= 0
// (the 1-connective cover).
FgAbelianGroup l_group_z(long n);
// Same table extended 4-periodically to all integers.
FgAbelianGroup l_coefficient(long m);

// L_n(Z[Z^r]) = sum_j H_j(T^r; L_{n-j}(Z)) over all 0 <= j <= r.
FgAbelianGroup l_group_free_abelian(long n, unsigned r);

struct RationalNormalInvariant {
  int degree;          // n - 4k
  std::size_t rank;    // b_{n-4k}
  friend bool operator==(const RationalNormalInvariant&, const RationalNormalInvariant&) = default;
};

// (n - 4k, b_{n-4k}) for 0 < 4k < n, k ascending. Throws DescriptorError on
// an invalid descriptor.
std::vector<RationalNormalInvariant> normal_invariants_rational(const ManifoldDescriptor& d);

struct NormalInvariantSummand {
  int degree;                    // i
  FgAbelianGroup coefficients;   // L_{m-i}(Z)
  FgAbelianGroup group;          // H_i(M; L_{m-i}(Z))
};

// Nonzero summands of H_m(M; L<1>) from the collapsed Atiyah-Hirzebruch
// spectral sequence. Throws CollapseNotJustified unless the flag is set.
std::vector<NormalInvariantSummand> normal_invariants_integral(const ManifoldDescriptor& d, int m);

// ker(theta: N(M) -> L_n(Z pi)), with theta = assembly o c_* and assembly
// injective for the supported groups.
FgAbelianGroup kernel_of_theta(const ManifoldDescriptor& d);

// coker(theta: N(M x I) -> L_{n+1}(Z pi)), i.e. the image of the L-group
// action on the structure set.
FgAbelianGroup cokernel_of_theta_odd(const ManifoldDescriptor& d);

// 0 -> sub -> S(M) -> quotient -> 0; the extension itself is not determined.
struct ExtensionPresentation {
  FgAbelianGroup sub;
  FgAbelianGroup quotient;

  bool total_determined() const { return sub.is_trivial() || quotient.is_trivial(); }
  bool total_infinite() const { return sub.is_infinite() || quotient.is_infinite(); }
  // "0 → Z → S → (Z/2)^3 → 0", or "S ≅ Z ⊕ Z/2" when sub is trivial.
  std::string to_string() const;
};

ExtensionPresentation structure_set(const ManifoldDescriptor& d);

// Divisibility of v (coordinates of (f^{-1})^* L_k(N) in the scale-cleared
// lattice FH^{4k}(M)) in Z^{b_4k}.
Integer div_k_invariant(const IntVector& v, const ManifoldDescriptor& d, int k, const Integer& t = 1);

// ---------------------------------------------------------------------------
// Verdicts

enum class Status { Infinite, Finite, SizeOne, Inconclusive };
std::string to_string(Status s);

enum class Criterion {
  SimplyConnected,        // |S| = inf <=> |M| = inf <=> some b_{4i} != 0, 0 < 4i < n
  StablyParallelizable,   // infinite eta image + stably trivial tangent bundle
  LatticePair,            // infinite eta image + full sublattice pair containing L_k(M)
  PoincareDualityGroup,   // nonzero degree c and infinite ker(c_*)
  FreeAbelianStructure,   // infinite structure set of M_{r,g} via the L-group action
  PolarizedManifoldSet,   // one-element pi_1-polarized manifold set of M_{r,g}
};
std::string to_string(Criterion c);

struct Hypothesis {
  std::string name;
  bool verified = false;
  std::string detail;
};

struct Witness {
  std::string what;  // "degree", "kernel rank", "index", ...
  Integer value;
};

struct Verdict {
  Status status = Status::Inconclusive;
  Criterion criterion = Criterion::SimplyConnected;
  std::vector<Hypothesis> hypotheses;
  std::optional<Witness> witness;

  const Hypothesis* failed_hypothesis() const;
  bool all_verified() const;
};

// Pi1 must be trivial and n >= 5 (std::invalid_argument / UnsupportedGroup
// otherwise). An invalid descriptor yields INCONCLUSIVE.
Verdict decide_simply_connected(const ManifoldDescriptor& d);

struct ParallelizableCondition {};

struct LatticePairCondition {
  LatticeBasis sub;       // L
  LatticeBasis lattice;   // L'
  int k = 1;
  // Coordinates of L_k(M); the descriptor's l_class is used when absent.
  std::optional<IntVector> l_class;
};

struct PdGroupCondition {
  std::map<int, IntMatrix> c_matrices;  // c_*: H_j(M) -> H_j(B pi), j = n - 4k
  Integer degree_of_c;
};

using TheoremBCondition = std::variant<ParallelizableCondition, LatticePairCondition, PdGroupCondition>;

// Evidence that eta(S^h(M)) is infinite. With ahss_collapses set it is
// re-derived from the rational normal invariants; otherwise the caller's
// assertion is recorded as an unverified-by-computation hypothesis.
struct EtaEvidence {
  bool asserted_infinite = false;
};

Verdict theorem_b_check(const ManifoldDescriptor& d, const TheoremBCondition& condition,
                        const EtaEvidence& evidence = {});

// Requires pi1 Other or FreeAbelian; throws DimensionMismatch when a matrix
// does not match the homology ranks.
Verdict pd_group_check(const ManifoldDescriptor& d, const std::map<int, IntMatrix>& c_matrices,
                       const Integer& degree_of_c);

struct TheoremCSummary {
  Verdict structure_set;           // INFINITE or INCONCLUSIVE
  Verdict polarized_manifold_set;  // SIZE_ONE or INCONCLUSIVE
  ExtensionPresentation presentation;

  bool structure_set_infinite() const { return structure_set.status == Status::Infinite; }
  bool polarized_manifold_set_size_one() const {
    return polarized_manifold_set.status == Status::SizeOne;
  }
};

TheoremCSummary theorem_c_summary(long r, long g, long k);

struct ThetaOrders {
  Integer sphere_group_top;      // |Theta_{4k+2}|
  Integer sphere_group_odd;      // |Theta_{4k+1} / bP_{4k+2}|
  Integer sphere_group_middle;   // |Theta_{4k}|
};

// Upper bound for the smooth pi_1-polarized manifold set of M_{r,g}: 1 for
// k = 1, otherwise a + r b + C(r,2) c.
Integer theorem_e_bound(long r, long g, long k, const std::optional<ThetaOrders>& orders);

}  // namespace msets
