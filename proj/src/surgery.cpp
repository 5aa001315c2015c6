#include "msets/surgery.hpp"

#include <stdexcept>

#include "msets/errors.hpp"

namespace msets {

namespace {

long mod4(long n) { return ((n % 4) + 4) % 4; }

void require_valid(const ManifoldDescriptor& d) {
  const auto violations = validate(d);
  if (violations.empty()) return;
  std::string msg = "invalid descriptor '" + d.name + "':";
  for (const auto& v : violations) msg += " " + v.label();
  throw DescriptorError(msg);
}

// Preconditions shared by the kernel/cokernel computations.
unsigned supported_torus_rank(const ManifoldDescriptor& d) {
  require_valid(d);
  if (!d.flags.ahss_collapses)
    throw CollapseNotJustified("descriptor '" + d.name + "' does not declare a collapsing spectral sequence");
  switch (d.pi1.kind) {
    case Pi1::Kind::Trivial:
      return 0;
    case Pi1::Kind::FreeAbelian:
      return d.pi1.rank;
    case Pi1::Kind::Other:
      break;
  }
  throw UnsupportedGroup("fundamental group '" + d.pi1.to_string() + "' is not supported");
}

// H_i(M; coef) for coef in {0, Z, Z/2} by universal coefficients.
FgAbelianGroup homology_with(const GradedGroup& h, int i, const FgAbelianGroup& coef) {
  if (coef.is_trivial()) return {};
  if (coef == FgAbelianGroup::free(1)) return h.at(i);
  if (coef == FgAbelianGroup::cyclic(2)) {
    const auto hi = h.at(i);
    const std::size_t count = hi.free_rank() + hi.even_torsion_count() + h.at(i - 1).even_torsion_count();
    return count ? FgAbelianGroup::elementary(2, count) : FgAbelianGroup();
  }
  throw std::logic_error("unexpected L-theory coefficient group " + coef.to_string());
}

// c_*: H_j(M) -> H_j(T^r) as a C(r,j) x b_j matrix (T^0 is a point).
IntMatrix torus_map(const ManifoldDescriptor& d, unsigned r, int j) {
  const std::size_t target = binomial(r, j).get_ui();
  const std::size_t source = d.betti(j);
  if (target == 0 || source == 0) return IntMatrix(target, source);
  if (d.pi1.kind == Pi1::Kind::Trivial) return IntMatrix::identity(1);
  auto it = d.classifying_map.find(j);
  if (it == d.classifying_map.end())
    throw MissingClassifyingMap("no classifying map in degree " + std::to_string(j) + " for '" + d.name + "'");
  if (it->second.rows() != target || it->second.cols() != source)
    throw DimensionMismatch("classifying map in degree " + std::to_string(j) + " has the wrong shape");
  return it->second;
}

FgAbelianGroup kernel_with(const IntMatrix& a, const FgAbelianGroup& coef) {
  if (coef == FgAbelianGroup::free(1)) return FgAbelianGroup::free(a.cols() - rank_over_q(a));
  const std::size_t k = a.cols() - rank_mod_2(a);
  return k ? FgAbelianGroup::elementary(2, k) : FgAbelianGroup();
}

FgAbelianGroup cokernel_with(const IntMatrix& a, const FgAbelianGroup& coef) {
  if (coef == FgAbelianGroup::free(1)) {
    std::vector<Integer> orders;
    const auto snf = smith_normal_form(a);
    for (const auto& dd : snf.diagonal())
      if (dd != 0) orders.push_back(dd);
    return FgAbelianGroup::from_cyclic_orders(a.rows() - snf.rank(), orders);
  }
  const std::size_t c = a.rows() - rank_mod_2(a);
  return c ? FgAbelianGroup::elementary(2, c) : FgAbelianGroup();
}

FgAbelianGroup power(const FgAbelianGroup& g, std::size_t count) {
  FgAbelianGroup out;
  for (std::size_t i = 0; i < count; ++i) out = out + g;
  return out;
}

Hypothesis hypothesis(std::string name, bool verified, std::string detail = {}) {
  return {std::move(name), verified, std::move(detail)};
}

std::size_t rational_normal_rank(const ManifoldDescriptor& d) {
  std::size_t total = 0;
  for (int k = 1; 4 * k < d.dimension; ++k) total += d.betti(d.dimension - 4 * k);
  return total;
}

void finish(Verdict& v, Status success) {
  v.status = v.all_verified() ? success : Status::Inconclusive;
}

}  // namespace

FgAbelianGroup l_group_z(long n) {
  if (n <= 0) return {};
  return l_coefficient(n);
}

FgAbelianGroup l_coefficient(long m) {
  switch (mod4(m)) {
    case 0:
      return FgAbelianGroup::free(1);
    case 2:
      return FgAbelianGroup::cyclic(2);
    default:
      return {};
  }
}

FgAbelianGroup l_group_free_abelian(long n, unsigned r) {
  FgAbelianGroup total;
  for (unsigned j = 0; j <= r; ++j)
    total = total + power(l_coefficient(n - static_cast<long>(j)), binomial(r, j).get_ui());
  return total;
}

std::vector<RationalNormalInvariant> normal_invariants_rational(const ManifoldDescriptor& d) {
  require_valid(d);
  std::vector<RationalNormalInvariant> out;
  for (int k = 1; 4 * k < d.dimension; ++k)
    out.push_back({d.dimension - 4 * k, d.betti(d.dimension - 4 * k)});
  return out;
}

std::vector<NormalInvariantSummand> normal_invariants_integral(const ManifoldDescriptor& d, int m) {
  require_valid(d);
  if (!d.flags.ahss_collapses)
    throw CollapseNotJustified("descriptor '" + d.name + "' does not declare a collapsing spectral sequence");
  std::vector<NormalInvariantSummand> out;
  for (int i = 0; i < m; ++i) {
    auto coef = l_group_z(m - i);
    auto group = homology_with(d.homology, i, coef);
    if (!group.is_trivial()) out.push_back({i, std::move(coef), std::move(group)});
  }
  return out;
}

FgAbelianGroup kernel_of_theta(const ManifoldDescriptor& d) {
  const unsigned r = supported_torus_rank(d);
  const int n = d.dimension;
  FgAbelianGroup total;
  for (int i = 0; i < n; ++i) {
    const auto coef = l_group_z(n - i);
    if (coef.is_trivial() || d.betti(i) == 0) continue;
    total = total + kernel_with(torus_map(d, r, i), coef);
  }
  return total;
}

FgAbelianGroup cokernel_of_theta_odd(const ManifoldDescriptor& d) {
  const unsigned r = supported_torus_rank(d);
  const long m = d.dimension + 1;
  FgAbelianGroup total;
  for (unsigned j = 0; j <= r; ++j) {
    const auto target_coef = l_coefficient(m - static_cast<long>(j));
    if (target_coef.is_trivial()) continue;
    const std::size_t target = binomial(r, j).get_ui();
    const auto source_coef = l_group_z(m - static_cast<long>(j));
    const int deg = static_cast<int>(j);
    if (source_coef.is_trivial() || d.betti(deg) == 0) {
      total = total + power(target_coef, target);
    } else {
      total = total + cokernel_with(torus_map(d, r, deg), target_coef);
    }
  }
  return total;
}

std::string ExtensionPresentation::to_string() const {
  if (sub.is_trivial()) return "S ≅ " + quotient.to_string();
  return "0 → " + sub.to_string() + " → S → " + quotient.to_string() + " → 0";
}

ExtensionPresentation structure_set(const ManifoldDescriptor& d) {
  return {cokernel_of_theta_odd(d), kernel_of_theta(d)};
}

Integer div_k_invariant(const IntVector& v, const ManifoldDescriptor& d, int k, const Integer& t) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  const std::size_t b = d.betti(4 * k);
  if (v.size() != b)
    throw DimensionMismatch("L-class vector has length " + std::to_string(v.size()) + " but b_" +
                            std::to_string(4 * k) + " = " + std::to_string(b));
  return divisibility(v, LatticeBasis::standard(b));
}

// ---------------------------------------------------------------------------

std::string to_string(Status s) {
  switch (s) {
    case Status::Infinite:
      return "INFINITE";
    case Status::Finite:
      return "FINITE";
    case Status::SizeOne:
      return "SIZE_ONE";
    case Status::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::SimplyConnected:
      return "simply-connected criterion";
    case Criterion::StablyParallelizable:
      return "stably parallelizable criterion";
    case Criterion::LatticePair:
      return "lattice pair criterion";
    case Criterion::PoincareDualityGroup:
      return "Poincare duality group criterion";
    case Criterion::FreeAbelianStructure:
      return "free abelian structure set";
    case Criterion::PolarizedManifoldSet:
      return "polarized manifold set";
  }
  return "?";
}

const Hypothesis* Verdict::failed_hypothesis() const {
  for (const auto& h : hypotheses)
    if (!h.verified) return &h;
  return nullptr;
}

bool Verdict::all_verified() const { return failed_hypothesis() == nullptr; }

Verdict decide_simply_connected(const ManifoldDescriptor& d) {
  if (d.pi1.kind != Pi1::Kind::Trivial)
    throw UnsupportedGroup("decide_simply_connected needs a simply connected manifold");
  if (d.dimension < 5) throw std::invalid_argument("decide_simply_connected needs dimension >= 5");

  Verdict v{Status::Inconclusive, Criterion::SimplyConnected, {}, std::nullopt};
  v.hypotheses.push_back(hypothesis("simply connected", true));
  v.hypotheses.push_back(hypothesis("dimension >= 5", true, "n = " + std::to_string(d.dimension)));
  const auto violations = validate(d);
  std::string detail;
  for (const auto& viol : violations) detail += (detail.empty() ? "" : " ") + viol.label();
  v.hypotheses.push_back(hypothesis("descriptor valid", violations.empty(), detail));
  if (!violations.empty()) return v;

  for (int i = 4; i < d.dimension; i += 4) {
    if (d.betti(i) > 0) {
      v.hypotheses.push_back(hypothesis("some H^{4i}(M;Q) != 0 with 0 < 4i < n", true,
                                        "b_" + std::to_string(i) + " = " + std::to_string(d.betti(i))));
      v.witness = Witness{"degree", i};
      v.status = Status::Infinite;
      return v;
    }
  }
  v.hypotheses.push_back(hypothesis("H^{4i}(M;Q) = 0 for all 0 < 4i < n", true));
  v.status = Status::Finite;
  return v;
}

Verdict pd_group_check(const ManifoldDescriptor& d, const std::map<int, IntMatrix>& c_matrices,
                       const Integer& degree_of_c) {
  if (d.pi1.kind == Pi1::Kind::Trivial)
    throw UnsupportedGroup("Poincare duality group check needs a nontrivial fundamental group");
  const int n = d.dimension;

  std::size_t kernel_rank = 0;
  for (int k = 1; 4 * k < n; ++k) {
    const int j = n - 4 * k;
    const std::size_t b = d.betti(j);
    if (b == 0) continue;
    auto it = c_matrices.find(j);
    if (it == c_matrices.end())
      throw DimensionMismatch("no c_* matrix for degree " + std::to_string(j) + " where b_" +
                              std::to_string(j) + " = " + std::to_string(b));
    if (it->second.cols() != b)
      throw DimensionMismatch("c_* matrix in degree " + std::to_string(j) + " has " +
                              std::to_string(it->second.cols()) + " columns but b_" +
                              std::to_string(j) + " = " + std::to_string(b));
    kernel_rank += b - rank_over_q(it->second);
  }

  Verdict v{Status::Inconclusive, Criterion::PoincareDualityGroup, {}, std::nullopt};
  if (d.pi1.kind == Pi1::Kind::FreeAbelian) {
    v.hypotheses.push_back(hypothesis("pi is a Poincare duality group of dimension n",
                                      static_cast<int>(d.pi1.rank) == n,
                                      "Z^" + std::to_string(d.pi1.rank) + " has dimension " +
                                          std::to_string(d.pi1.rank)));
  } else {
    v.hypotheses.push_back(hypothesis("pi is a Poincare duality group of dimension n", true,
                                      "declared for '" + d.pi1.to_string() + "'"));
  }
  v.hypotheses.push_back(hypothesis("classifying map has nonzero degree", degree_of_c != 0,
                                    "deg c = " + degree_of_c.get_str()));
  v.hypotheses.push_back(hypothesis("ker(c_*) on sum of H_{n-4k} is infinite", kernel_rank > 0,
                                    "kernel rank " + std::to_string(kernel_rank)));
  v.witness = Witness{"kernel rank", static_cast<unsigned long>(kernel_rank)};
  finish(v, Status::Infinite);
  return v;
}

Verdict theorem_b_check(const ManifoldDescriptor& d, const TheoremBCondition& condition,
                        const EtaEvidence& evidence) {
  const int n = d.dimension;
  std::vector<Hypothesis> common;
  common.push_back(hypothesis("dimension >= 5", n >= 5, "n = " + std::to_string(n)));
  const auto violations = validate(d);
  common.push_back(hypothesis("descriptor valid", violations.empty(),
                              violations.empty() ? "" : violations.front().label()));
  if (d.flags.ahss_collapses) {
    const std::size_t rank = rational_normal_rank(d);
    common.push_back(hypothesis("eta(S(M)) infinite", rank > 0,
                                "rational normal invariants of rank " + std::to_string(rank)));
  } else {
    common.push_back(hypothesis("eta(S(M)) infinite", evidence.asserted_infinite, "asserted by caller"));
  }

  Verdict v;
  if (std::holds_alternative<ParallelizableCondition>(condition)) {
    v.criterion = Criterion::StablyParallelizable;
    v.hypotheses = common;
    v.hypotheses.push_back(hypothesis("homotopy equivalent to a stably parallelizable manifold",
                                      d.flags.stably_parallelizable));
    for (int k = 1; 4 * k < n; ++k)
      if (d.betti(n - 4 * k) > 0) {
        v.witness = Witness{"degree", n - 4 * k};
        break;
      }
    finish(v, Status::Infinite);
  } else if (const auto* pair = std::get_if<LatticePairCondition>(&condition)) {
    v.criterion = Criterion::LatticePair;
    const int k = pair->k;
    if (k < 1 || 4 * k >= n)
      throw MalformedCondition("lattice pair needs 0 < 4k < n, got k = " + std::to_string(k));
    const std::size_t b = d.betti(4 * k);
    if (pair->sub.ambient_rank() != b || pair->lattice.ambient_rank() != b)
      throw MalformedCondition("lattice pair must live in FH^" + std::to_string(4 * k) +
                               " of rank " + std::to_string(b));
    std::optional<IntVector> l_class = pair->l_class;
    if (!l_class) {
      if (auto it = d.l_class.find(k); it != d.l_class.end()) l_class = it->second;
    }
    if (l_class && l_class->size() != b) throw MalformedCondition("L-class vector has the wrong length");

    v.hypotheses = common;
    v.hypotheses.push_back(hypothesis("L nonzero", !pair->sub.is_zero()));
    std::optional<SublatticeIndex> index;
    try {
      index = sublattice_index(pair->sub, pair->lattice);
    } catch (const NotSublattice&) {
    }
    v.hypotheses.push_back(hypothesis("L is a sublattice of L'", index.has_value()));
    v.hypotheses.push_back(hypothesis("L has finite index in L'", index && index->finite(),
                                      index && index->finite() ? "index " + index->order->get_str() : ""));
    v.hypotheses.push_back(hypothesis("L_k(M) coordinates known", l_class.has_value()));
    v.hypotheses.push_back(hypothesis("L_k(M) lies in L'", l_class && pair->lattice.contains(*l_class)));
    if (index && index->finite()) v.witness = Witness{"index", *index->order};
    finish(v, Status::Infinite);
  } else {
    const auto& pd = std::get<PdGroupCondition>(condition);
    v = pd_group_check(d, pd.c_matrices, pd.degree_of_c);
    v.hypotheses.insert(v.hypotheses.begin(), common.begin(), common.end());
    finish(v, Status::Infinite);
  }
  return v;
}

TheoremCSummary theorem_c_summary(long r, long g, long k) {
  if (r < 1 || g < 0 || k < 1) throw std::invalid_argument("theorem C needs r >= 1, g >= 0, k >= 1");
  const auto d = builtin("mrg", {r, g, k});
  TheoremCSummary out;
  out.presentation = structure_set(d);
  const auto u = binomial(r, 3);

  out.structure_set.criterion = Criterion::FreeAbelianStructure;
  out.structure_set.hypotheses.push_back(hypothesis("r >= 3", r >= 3, "r = " + std::to_string(r)));
  out.structure_set.hypotheses.push_back(
      hypothesis("L-group action has infinite image Z^u", out.presentation.sub.is_infinite(),
                 "u = C(r,3) = " + u.get_str() + ", sub = " + out.presentation.sub.to_string()));
  out.structure_set.witness = Witness{"u", Integer(out.presentation.sub.free_rank())};
  finish(out.structure_set, Status::Infinite);

  out.polarized_manifold_set.criterion = Criterion::PolarizedManifoldSet;
  out.polarized_manifold_set.hypotheses.push_back(hypothesis("r >= 3", r >= 3, "r = " + std::to_string(r)));
  out.polarized_manifold_set.hypotheses.push_back(
      hypothesis("g >= r + 3", g >= r + 3, "g = " + std::to_string(g)));
  finish(out.polarized_manifold_set, Status::SizeOne);
  return out;
}

Integer theorem_e_bound(long r, long g, long k, const std::optional<ThetaOrders>& orders) {
  if (r < 1 || g < 0 || k < 1) throw std::invalid_argument("theorem E needs r >= 1, g >= 0, k >= 1");
  if (k == 1) return 1;
  if (!orders) throw std::invalid_argument("exotic sphere group orders are required for k >= 2");
  if (orders->sphere_group_top < 1 || orders->sphere_group_odd < 1 || orders->sphere_group_middle < 1)
    throw std::invalid_argument("exotic sphere group orders must be positive");
  return orders->sphere_group_top + Integer(r) * orders->sphere_group_odd +
         binomial(r, 2) * orders->sphere_group_middle;
}

}  // namespace msets
