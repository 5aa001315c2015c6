#pragma once

// Hirzebruch L-polynomials with exact rational coefficients.
//
// L_k is the weight-k part of prod_i Q(x_i) with Q(x) = sqrt(x)/tanh(sqrt(x)),
// rewritten in the elementary symmetric functions p_j = e_j(x_1, ..., x_k).

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "msets/arith.hpp"

namespace msets {

// Weakly decreasing list of positive parts, e.g. {2, 1, 1} stands for p_2 p_1^2.
using Partition = std::vector<int>;

std::vector<Partition> partitions_of(int n);

class LPolynomial {
 public:
  // Iteration order puts p_k first and p_1^k last.
  using Terms = std::map<Partition, Rational, std::greater<>>;

  LPolynomial(int degree, Terms terms);

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  Rational coefficient(const Partition& p) const;

  // "7/45 p2 - 1/45 p1^2"
  std::string to_string() const;

  friend bool operator==(const LPolynomial&, const LPolynomial&) = default;

 private:
  int degree_;
  Terms terms_;
};

struct LPolyOptions {
  // Symmetric-function linear algebra grows with the partition count; raise
  // this explicitly for larger degrees.
  int max_degree = 8;
};

struct DenominatorConstants {
  Integer c_k;  // lcm of |denominators| of L_k
  Integer t;    // topological integrality parameter, 1 in the smooth case
  Integer r_k;  // c_k * t
};

// Coefficients q_0..q_max of sqrt(x)/tanh(sqrt(x)) as a series in x.
std::vector<Rational> q_series(int max_degree);

LPolynomial l_polynomial(int k, const LPolyOptions& options = {});

DenominatorConstants denominator_constants(int k, const Integer& t = 1,
                                           const LPolyOptions& options = {});

// Polynomial over Q in graded cohomology generators. Generator degrees are
// cohomological (x in H^2(CP^n) has degree 2). Relations such as x^{n+1} = 0
// are not imposed; use truncated() when they matter.
class CohomologyClass {
 public:
  using Exponents = std::vector<int>;

  explicit CohomologyClass(std::vector<int> generator_degrees);

  static CohomologyClass constant(std::vector<int> generator_degrees, const Rational& c);
  static CohomologyClass generator(std::vector<int> generator_degrees, std::size_t index);

  const std::vector<int>& generator_degrees() const { return degrees_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  int degree_of(const Exponents& e) const;
  Rational coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  CohomologyClass homogeneous_part(int degree) const;
  CohomologyClass truncated(int max_degree) const;
  CohomologyClass pow(unsigned exponent) const;
  bool is_zero() const { return terms_.empty(); }

  friend CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b);
  friend CohomologyClass operator-(const CohomologyClass& a, const CohomologyClass& b);
  friend CohomologyClass operator*(const CohomologyClass& a, const CohomologyClass& b);
  friend CohomologyClass operator*(const Rational& s, const CohomologyClass& a);
  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_compatible(const CohomologyClass& other) const;

  std::vector<int> degrees_;
  std::map<Exponents, Rational> terms_;
};

// Substitutes the degree-4j components of `total_pontryagin` for p_j in L_k.
// Throws std::invalid_argument unless the constant term is exactly 1 and all
// components sit in degrees divisible by 4.
CohomologyClass evaluate_l_class(const CohomologyClass& total_pontryagin, int k,
                                 const LPolyOptions& options = {});

}  // namespace msets
