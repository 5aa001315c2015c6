#include <doctest.h>

#include "msets/lpoly.hpp"
#include "oracles.hpp"

using namespace msets;

namespace {

CohomologyClass cpn_pontryagin(int n) {
  // u = x^2 in degree 4; p(CP^n) = (1 + u)^{n+1}
  const std::vector<int> degrees{4};
  auto one = CohomologyClass::constant(degrees, 1);
  return (one + CohomologyClass::generator(degrees, 0)).pow(n + 1).truncated(2 * n);
}

Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("q_series matches Bernoulli numbers") {
  const auto q = q_series(8);
  const auto expected = oracle::q_coefficients(8);
  REQUIRE(q.size() == expected.size());
  for (std::size_t n = 0; n < q.size(); ++n) CHECK(q[n] == expected[n]);
  CHECK(q[1] == Rational(1, 3));
  CHECK(q[2] == Rational(-1, 45));
  CHECK_THROWS_AS(q_series(-1), std::invalid_argument);
}

TEST_CASE("L_2 golden value") {
  const auto l2 = l_polynomial(2);
  CHECK(l2.coefficient({2}) == Rational(7, 45));
  CHECK(l2.coefficient({1, 1}) == Rational(-1, 45));
  CHECK(l2.terms().size() == 2);
  CHECK(l2.to_string() == "7/45 p2 - 1/45 p1^2");
  CHECK(denominator_constants(2).c_k == 45);
}

TEST_CASE("L_k agrees with the multi-variable expansion") {
  for (int k = 1; k <= 5; ++k) {
    CAPTURE(k);
    const auto expected = oracle::l_polynomial_by_expansion(k);
    const auto poly = l_polynomial(k);
    CHECK(poly.terms().size() == expected.size());
    for (const auto& [partition, coeff] : expected) CHECK(poly.coefficient(partition) == coeff);
    CHECK(denominator_constants(k).c_k == oracle::denominator_lcm(expected));
  }
}

TEST_CASE("denominators") {
  CHECK(denominator_constants(1).c_k == 3);
  CHECK(denominator_constants(3).c_k == 945);
  CHECK(denominator_constants(4).c_k == 14175);
  const auto dc = denominator_constants(3, 8);
  CHECK(dc.t == 8);
  CHECK(dc.r_k == 7560);
  CHECK_THROWS_AS(denominator_constants(2, 0), std::invalid_argument);
}

TEST_CASE("L_3 and L_4 expanded forms") {
  const auto l3 = l_polynomial(3);
  CHECK(l3.to_string() == "62/945 p3 - 13/945 p1 p2 + 2/945 p1^3");
  const auto l4 = l_polynomial(4);
  CHECK(l4.coefficient({4}) == fraction(381, 14175));
  CHECK(l4.coefficient({3, 1}) == fraction(-71, 14175));
  CHECK(l4.coefficient({2, 2}) == fraction(-19, 14175));
  CHECK(l4.coefficient({2, 1, 1}) == fraction(22, 14175));
  CHECK(l4.coefficient({1, 1, 1, 1}) == fraction(-3, 14175));
}

TEST_CASE("degree bounds") {
  CHECK_THROWS_AS(l_polynomial(0), std::invalid_argument);
  CHECK_THROWS_AS(l_polynomial(9), std::invalid_argument);
  CHECK_NOTHROW(l_polynomial(9, LPolyOptions{9}));
}

TEST_CASE("coefficient sum is the top Q coefficient") {
  // Setting all x_i but one to zero leaves p_1 = x, p_j = 0 for j > 1.
  const auto q = q_series(6);
  for (int k = 1; k <= 6; ++k) CHECK(l_polynomial(k).coefficient(Partition(k, 1)) == q[k]);
}

TEST_CASE("LPolynomial validation") {
  CHECK_THROWS_AS(LPolynomial(2, {{{1, 2}, Rational(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(LPolynomial(3, {{{2}, Rational(1)}}), std::invalid_argument);
  LPolynomial p(2, {{{2}, Rational(0)}, {{1, 1}, Rational(1, 2)}});
  CHECK(p.terms().size() == 1);
  CHECK(p.to_string() == "1/2 p1^2");
}

TEST_CASE("signature of CP^{2k} is one") {
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const auto l = evaluate_l_class(cpn_pontryagin(2 * k), k);
    CHECK(l.coefficient({k}) == 1);
  }
}

TEST_CASE("L-class of CP^3 in degree 4") {
  const auto l = evaluate_l_class(cpn_pontryagin(3), 1);
  CHECK(l.coefficient({1}) == Rational(4, 3));
}

TEST_CASE("evaluate_l_class input checks") {
  const std::vector<int> deg2{2};
  auto x = CohomologyClass::generator(deg2, 0);
  CHECK_THROWS_AS(evaluate_l_class(CohomologyClass::constant(deg2, 1) + x, 1), std::invalid_argument);
  const std::vector<int> deg4{4};
  CHECK_THROWS_AS(evaluate_l_class(CohomologyClass::constant(deg4, 2), 1), std::invalid_argument);
  CHECK_THROWS_AS(CohomologyClass(std::vector<int>{0}), std::invalid_argument);
}

TEST_CASE("cohomology class arithmetic") {
  const std::vector<int> degrees{2};
  auto x = CohomologyClass::generator(degrees, 0);
  auto one = CohomologyClass::constant(degrees, 1);
  auto p = (one + x).pow(3);
  CHECK(p.coefficient({2}) == 3);
  CHECK(p.truncated(2).terms().size() == 2);
  CHECK((p - p).is_zero());
  CHECK((one + Rational(4) * x.pow(2)).to_string() == "1 + 4 x^2");
}
