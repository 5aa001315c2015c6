#include <doctest.h>

#include "msets/errors.hpp"
#include "msets/surgery.hpp"
#include "oracles.hpp"

using namespace msets;

namespace {

FgAbelianGroup from_count(const oracle::GroupCount& c) {
  return FgAbelianGroup(c.free_rank, std::vector<Integer>(c.two_torsion, 2));
}

FgAbelianGroup z(std::size_t n = 1) { return FgAbelianGroup::free(n); }
FgAbelianGroup z2(std::size_t n = 1) { return FgAbelianGroup::elementary(2, n); }

ManifoldDescriptor pd_example() {
  ManifoldDescriptor d;
  d.name = "pd example";
  d.dimension = 6;
  d.pi1 = Pi1::other("G");
  for (int j : {0, 2, 4, 6}) d.homology.set(j, z());
  return d;
}

}  // namespace

TEST_CASE("L-groups of Z") {
  CHECK(l_group_z(0).is_trivial());
  CHECK(l_group_z(-4).is_trivial());
  CHECK(l_group_z(4) == z());
  CHECK(l_group_z(5).is_trivial());
  CHECK(l_group_z(6) == z2());
  CHECK(l_group_z(7).is_trivial());
  CHECK(l_coefficient(0) == z());
  CHECK(l_coefficient(-2) == z2());
  CHECK(l_coefficient(-1).is_trivial());
}

TEST_CASE("L-groups of Z[Z^r] against the binomial sum") {
  for (unsigned r = 0; r <= 8; ++r)
    for (long n = -3; n <= 12; ++n) {
      CAPTURE(r);
      CAPTURE(n);
      CHECK(l_group_free_abelian(n, r) == from_count(oracle::binomial_l_sum(n, r)));
    }
  CHECK(l_group_free_abelian(6, 3) == z(3) + z2(1));
  CHECK(l_group_free_abelian(7, 3) == z(1) + z2(3));
}

TEST_CASE("rational normal invariants") {
  using R = RationalNormalInvariant;
  CHECK(normal_invariants_rational(builtin("sphere", {9})) == std::vector<R>{{5, 0}, {1, 0}});
  CHECK(normal_invariants_rational(builtin("wg", {1, 1})) == std::vector<R>{{4, 2}});
  CHECK(normal_invariants_rational(builtin("cpn", {3})) == std::vector<R>{{2, 1}});
  CHECK(normal_invariants_rational(builtin("sphere", {3})).empty());
}

TEST_CASE("integral normal invariants of M_{3,6}") {
  const auto s = normal_invariants_integral(builtin("mrg", {3, 6, 1}), 6);
  REQUIRE(s.size() == 3);
  CHECK(s[0].degree == 0);
  CHECK(s[0].group == z2());
  CHECK(s[1].degree == 2);
  CHECK(s[1].group == z(3));
  CHECK(s[2].degree == 4);
  CHECK(s[2].group == z2(3));

  auto no_collapse = builtin("mrg", {3, 6, 1});
  no_collapse.flags.ahss_collapses = false;
  CHECK_THROWS_AS(normal_invariants_integral(no_collapse, 6), CollapseNotJustified);
}

TEST_CASE("kernel of theta") {
  CHECK(kernel_of_theta(builtin("cpn", {3})) == z() + z2());
  CHECK(kernel_of_theta(builtin("cpn", {4})) == z() + z2(2));
  for (long g = 1; g <= 5; ++g) CHECK(kernel_of_theta(builtin("wg", {g, 1})) == z(2 * g));
  CHECK(kernel_of_theta(builtin("wg", {2, 2})) == z(4));
  CHECK(kernel_of_theta(builtin("sphere", {7})).is_trivial());
  CHECK(kernel_of_theta(builtin("mrg", {3, 6, 1})) == z2(3));
  CHECK(kernel_of_theta(builtin("mrg", {4, 7, 1})) == z2(6));
  CHECK(kernel_of_theta(builtin("torus", {5})).is_trivial());
}

TEST_CASE("cokernel of theta") {
  CHECK(cokernel_of_theta_odd(builtin("mrg", {3, 6, 1})) == z());
  CHECK(cokernel_of_theta_odd(builtin("mrg", {4, 7, 1})) == z(4));
  CHECK(cokernel_of_theta_odd(builtin("sphere", {7})).is_trivial());
  for (long n = 2; n <= 6; ++n) CHECK(cokernel_of_theta_odd(builtin("cpn", {n})).is_trivial());
  CHECK(cokernel_of_theta_odd(builtin("torus", {5})).is_trivial());
}

TEST_CASE("structure set presentation") {
  const auto p = structure_set(builtin("mrg", {3, 6, 1}));
  CHECK(p.sub == z());
  CHECK(p.quotient == z2(3));
  CHECK(p.to_string() == "0 → Z → S → (Z/2)^3 → 0");
  CHECK_FALSE(p.total_determined());
  CHECK(p.total_infinite());
  const auto c = structure_set(builtin("cpn", {3}));
  CHECK(c.to_string() == "S ≅ Z ⊕ Z/2");
  CHECK(c.total_determined());
}

TEST_CASE("surgery preconditions") {
  auto other = builtin("mrg", {3, 6, 1});
  other.pi1 = Pi1::other("G");
  other.classifying_map.clear();
  CHECK_THROWS_AS(kernel_of_theta(other), UnsupportedGroup);

  auto no_map = builtin("mrg", {3, 6, 1});
  no_map.classifying_map.erase(2);
  CHECK_THROWS_AS(kernel_of_theta(no_map), MissingClassifyingMap);

  auto no_collapse = builtin("cpn", {3});
  no_collapse.flags.ahss_collapses = false;
  CHECK_THROWS_AS(structure_set(no_collapse), CollapseNotJustified);

  auto invalid = builtin("cpn", {3});
  invalid.homology.set(2, FgAbelianGroup());
  CHECK_THROWS_AS(kernel_of_theta(invalid), DescriptorError);
  CHECK_THROWS_AS(normal_invariants_rational(invalid), DescriptorError);
}

TEST_CASE("div_k invariant") {
  const auto w = builtin("wg", {1, 1});
  CHECK(div_k_invariant(make_vector({6, 9}), w, 1) == 3);
  CHECK(div_k_invariant(make_vector({0, 0}), w, 1) == 0);
  CHECK_THROWS_AS(div_k_invariant(make_vector({1}), w, 1), DimensionMismatch);
  CHECK_THROWS_AS(div_k_invariant(make_vector({1, 1}), w, 0), std::invalid_argument);
  CHECK_THROWS_AS(div_k_invariant(make_vector({1, 1}), w, 1, 0), std::invalid_argument);
}

TEST_CASE("simply connected decision") {
  for (long n = 5; n <= 11; ++n) {
    const auto v = decide_simply_connected(builtin("sphere", {n}));
    CHECK(v.status == Status::Finite);
    CHECK(v.all_verified());
  }
  const auto c = decide_simply_connected(builtin("cpn", {3}));
  CHECK(c.status == Status::Infinite);
  REQUIRE(c.witness);
  CHECK(c.witness->value == 4);
  CHECK(c.criterion == Criterion::SimplyConnected);

  auto broken = builtin("cpn", {4});
  broken.homology.set(2, FgAbelianGroup());
  const auto b = decide_simply_connected(broken);
  CHECK(b.status == Status::Inconclusive);
  REQUIRE(b.failed_hypothesis());
  CHECK(b.failed_hypothesis()->name == "descriptor valid");

  CHECK_THROWS_AS(decide_simply_connected(builtin("mrg", {3, 6, 1})), UnsupportedGroup);
  CHECK_THROWS_AS(decide_simply_connected(builtin("sphere", {4})), std::invalid_argument);
}

TEST_CASE("stably parallelizable criterion") {
  const auto v = theorem_b_check(builtin("mrg", {3, 6, 1}), ParallelizableCondition{});
  CHECK(v.status == Status::Infinite);
  CHECK(v.criterion == Criterion::StablyParallelizable);
  CHECK(theorem_b_check(builtin("cpn", {3}), ParallelizableCondition{}).status == Status::Inconclusive);
  CHECK(theorem_b_check(builtin("sphere", {7}), ParallelizableCondition{}).status == Status::Inconclusive);
  CHECK(theorem_b_check(builtin("sphere", {4}), ParallelizableCondition{}).status == Status::Inconclusive);

  auto asserted = builtin("mrg", {3, 6, 1});
  asserted.flags.ahss_collapses = false;
  CHECK(theorem_b_check(asserted, ParallelizableCondition{}).status == Status::Inconclusive);
  CHECK(theorem_b_check(asserted, ParallelizableCondition{}, EtaEvidence{true}).status == Status::Infinite);
}

TEST_CASE("lattice pair criterion") {
  const auto w = builtin("wg", {1, 1});
  const auto z2lat = LatticeBasis::standard(2);
  const LatticeBasis even(2, {make_vector({2, 0}), make_vector({0, 2})});

  const auto v = theorem_b_check(w, LatticePairCondition{even, z2lat, 1, std::nullopt});
  CHECK(v.status == Status::Infinite);
  REQUIRE(v.witness);
  CHECK(v.witness->value == 4);

  CHECK(theorem_b_check(w, LatticePairCondition{z2lat, even, 1, std::nullopt}).status == Status::Inconclusive);
  CHECK(theorem_b_check(w, LatticePairCondition{even, even, 1, make_vector({1, 0})}).status ==
        Status::Inconclusive);
  const LatticeBasis line(2, {make_vector({1, 0})});
  CHECK(theorem_b_check(w, LatticePairCondition{line, z2lat, 1, std::nullopt}).status == Status::Inconclusive);

  CHECK_THROWS_AS(theorem_b_check(w, LatticePairCondition{even, z2lat, 2, std::nullopt}), MalformedCondition);
  CHECK_THROWS_AS(theorem_b_check(w, LatticePairCondition{LatticeBasis::standard(3), LatticeBasis::standard(3), 1,
                                                          std::nullopt}),
                  MalformedCondition);
  CHECK_THROWS_AS(theorem_b_check(w, LatticePairCondition{even, z2lat, 1, make_vector({1})}), MalformedCondition);
}

TEST_CASE("Poincare duality group criterion") {
  const auto d = pd_example();
  std::map<int, IntMatrix> zero{{2, IntMatrix(1, 1)}};
  const auto v = pd_group_check(d, zero, 1);
  CHECK(v.status == Status::Infinite);
  REQUIRE(v.witness);
  CHECK(v.witness->value == 1);
  CHECK(pd_group_check(d, zero, 0).status == Status::Inconclusive);
  CHECK(pd_group_check(d, {{2, IntMatrix::identity(1)}}, 1).status == Status::Inconclusive);
  CHECK_THROWS_AS(pd_group_check(d, {}, 1), DimensionMismatch);
  CHECK_THROWS_AS(pd_group_check(d, {{2, IntMatrix(1, 2)}}, 1), DimensionMismatch);
  CHECK_THROWS_AS(pd_group_check(builtin("cpn", {3}), zero, 1), UnsupportedGroup);

  const auto t = builtin("torus", {6});
  CHECK(pd_group_check(t, t.classifying_map, 1).status == Status::Inconclusive);

  auto through_b = theorem_b_check(d, PdGroupCondition{zero, 1}, EtaEvidence{true});
  CHECK(through_b.status == Status::Infinite);
  CHECK(through_b.criterion == Criterion::PoincareDualityGroup);
  CHECK(theorem_b_check(d, PdGroupCondition{zero, 1}).status == Status::Inconclusive);
}

TEST_CASE("free abelian structure set summary") {
  const auto s = theorem_c_summary(3, 6, 1);
  CHECK(s.structure_set_infinite());
  CHECK(s.polarized_manifold_set_size_one());
  CHECK(s.presentation.to_string() == "0 → Z → S → (Z/2)^3 → 0");

  const auto small_g = theorem_c_summary(3, 5, 1);
  CHECK(small_g.structure_set_infinite());
  CHECK_FALSE(small_g.polarized_manifold_set_size_one());
  CHECK(small_g.polarized_manifold_set.status == Status::Inconclusive);

  const auto r2 = theorem_c_summary(2, 8, 1);
  CHECK_FALSE(r2.structure_set_infinite());
  CHECK(r2.structure_set.status == Status::Inconclusive);
  CHECK_THROWS_AS(theorem_c_summary(0, 3, 1), std::invalid_argument);
}

TEST_CASE("polarized manifold set bound") {
  CHECK(theorem_e_bound(3, 1, 1, std::nullopt) == 1);
  CHECK(theorem_e_bound(3, 6, 2, ThetaOrders{1, 1, 1}) == 7);
  CHECK(theorem_e_bound(4, 7, 2, ThetaOrders{3, 2, 5}) == 3 + 4 * 2 + 6 * 5);
  CHECK_THROWS_AS(theorem_e_bound(3, 6, 2, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(theorem_e_bound(3, 6, 0, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(theorem_e_bound(3, 6, 2, ThetaOrders{0, 1, 1}), std::invalid_argument);
}
