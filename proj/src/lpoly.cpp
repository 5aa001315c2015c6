#include "msets/lpoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace msets {

namespace {

void partitions_rec(int remaining, int max_part, Partition& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_rec(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

Rational inverse_factorial(int n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(Integer(1), f);
}

// Number of 0-1 matrices with the given row sums and column sums, i.e. the
// coefficient of x^lambda in e_mu. Columns are interchangeable, so the
// remaining column sums are kept sorted to share memo entries.
class ZeroOneCounter {
 public:
  explicit ZeroOneCounter(Partition rows) : rows_(std::move(rows)) {}

  Integer count(std::vector<int> columns) {
    std::sort(columns.begin(), columns.end(), std::greater<>());
    return count_from(0, columns);
  }

 private:
  Integer count_from(std::size_t row, const std::vector<int>& columns) {
    if (row == rows_.size()) {
      for (int c : columns)
        if (c != 0) return 0;
      return 1;
    }
    auto key = std::make_pair(row, columns);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Integer total = 0;
    std::vector<int> next = columns;
    choose(row, 0, rows_[row], next, total);
    memo_.emplace(std::move(key), total);
    return total;
  }

  void choose(std::size_t row, std::size_t col, int needed, std::vector<int>& cols, Integer& total) {
    if (needed == 0) {
      std::vector<int> sorted = cols;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      total += count_from(row + 1, sorted);
      return;
    }
    if (col == cols.size()) return;
    if (static_cast<int>(cols.size() - col) < needed) return;
    if (cols[col] > 0) {
      --cols[col];
      choose(row, col + 1, needed - 1, cols, total);
      ++cols[col];
    }
    choose(row, col + 1, needed, cols, total);
  }

  Partition rows_;
  std::map<std::pair<std::size_t, std::vector<int>>, Integer> memo_;
};

// Solves A x = b over Q for square invertible A.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::logic_error("singular change-of-basis matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

void check_degree(int k, const LPolyOptions& options) {
  if (k < 1) throw std::invalid_argument("L-polynomial degree must be >= 1");
  if (k > options.max_degree)
    throw std::invalid_argument("L-polynomial degree " + std::to_string(k) +
                                " exceeds the configured limit " +
                                std::to_string(options.max_degree));
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  Partition prefix;
  partitions_rec(n, n, prefix, out);
  return out;
}

LPolynomial::LPolynomial(int degree, Terms terms) : degree_(degree) {
  if (degree < 1) throw std::invalid_argument("L-polynomial degree must be >= 1");
  for (auto& [partition, c] : terms) {
    if (c == 0) continue;
    int weight = 0;
    for (std::size_t i = 0; i < partition.size(); ++i) {
      if (partition[i] < 1 || (i && partition[i] > partition[i - 1]))
        throw std::invalid_argument("partition keys must be weakly decreasing and positive");
      weight += partition[i];
    }
    if (weight != degree) throw std::invalid_argument("partition weight differs from degree");
    terms_.emplace(partition, c);
  }
}

Rational LPolynomial::coefficient(const Partition& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string LPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [partition, c] : terms_) {
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    s += magnitude.get_str();

    // Ascending index order: {2, 1} prints as "p1 p2".
    std::map<int, int> powers;
    for (int part : partition) ++powers[part];
    for (const auto& [index, power] : powers) {
      s += " p" + std::to_string(index);
      if (power > 1) s += "^" + std::to_string(power);
    }
  }
  return s;
}

std::vector<Rational> q_series(int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  // sqrt(x)/tanh(sqrt(x)) = cosh(sqrt x) / (sinh(sqrt x)/sqrt x)
  //                       = (sum x^n/(2n)!) / (sum x^n/(2n+1)!)
  std::vector<Rational> even(max_degree + 1), odd(max_degree + 1), q(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) {
    even[n] = inverse_factorial(2 * n);
    odd[n] = inverse_factorial(2 * n + 1);
  }
  for (int n = 0; n <= max_degree; ++n) {
    Rational acc = even[n];
    for (int i = 1; i <= n; ++i) acc -= odd[i] * q[n - i];
    q[n] = acc / odd[0];
  }
  return q;
}

LPolynomial l_polynomial(int k, const LPolyOptions& options) {
  check_degree(k, options);
  const auto q = q_series(k);
  const auto parts = partitions_of(k);
  const std::size_t size = parts.size();

  // In k variables, prod_i Q(x_i) has weight-k part sum_lambda a_lambda m_lambda
  // with a_lambda = prod_j q_{lambda_j}.
  std::vector<Rational> monomial_coeffs(size);
  for (std::size_t i = 0; i < size; ++i) {
    Rational a = 1;
    for (int part : parts[i]) a *= q[part];
    monomial_coeffs[i] = a;
  }

  // e_mu = sum_lambda M[mu][lambda] m_lambda; solve sum_mu b_mu M[mu][lambda] = a_lambda.
  std::vector<std::vector<Rational>> system(size, std::vector<Rational>(size));
  for (std::size_t mu = 0; mu < size; ++mu) {
    ZeroOneCounter counter(parts[mu]);
    for (std::size_t lambda = 0; lambda < size; ++lambda)
      system[lambda][mu] = Rational(counter.count(parts[lambda]));
  }
  const auto b = solve_exact(std::move(system), std::move(monomial_coeffs));

  LPolynomial::Terms terms;
  for (std::size_t i = 0; i < size; ++i)
    if (b[i] != 0) terms.emplace(parts[i], b[i]);
  return LPolynomial(k, std::move(terms));
}

DenominatorConstants denominator_constants(int k, const Integer& t, const LPolyOptions& options) {
  if (t < 1) throw std::invalid_argument("integrality parameter t must be >= 1");
  const auto poly = l_polynomial(k, options);
  Integer c = 1;
  for (const auto& [partition, coeff] : poly.terms())
    mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), coeff.get_den_mpz_t());
  return {c, t, c * t};
}

// ---------------------------------------------------------------------------

CohomologyClass::CohomologyClass(std::vector<int> generator_degrees)
    : degrees_(std::move(generator_degrees)) {
  for (int d : degrees_)
    if (d <= 0) throw std::invalid_argument("generator degrees must be positive");
}

CohomologyClass CohomologyClass::constant(std::vector<int> generator_degrees, const Rational& c) {
  CohomologyClass out(std::move(generator_degrees));
  out.add_term(Exponents(out.degrees_.size(), 0), c);
  return out;
}

CohomologyClass CohomologyClass::generator(std::vector<int> generator_degrees, std::size_t index) {
  CohomologyClass out(std::move(generator_degrees));
  if (index >= out.degrees_.size()) throw std::out_of_range("generator index");
  Exponents e(out.degrees_.size(), 0);
  e[index] = 1;
  out.add_term(e, 1);
  return out;
}

int CohomologyClass::degree_of(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * degrees_[i];
  return d;
}

Rational CohomologyClass::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void CohomologyClass::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != degrees_.size()) throw std::invalid_argument("exponent vector length");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CohomologyClass CohomologyClass::homogeneous_part(int degree) const {
  CohomologyClass out(degrees_);
  for (const auto& [e, c] : terms_)
    if (degree_of(e) == degree) out.terms_.emplace(e, c);
  return out;
}

CohomologyClass CohomologyClass::truncated(int max_degree) const {
  CohomologyClass out(degrees_);
  for (const auto& [e, c] : terms_)
    if (degree_of(e) <= max_degree) out.terms_.emplace(e, c);
  return out;
}

CohomologyClass CohomologyClass::pow(unsigned exponent) const {
  CohomologyClass result = constant(degrees_, 1);
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

void CohomologyClass::check_compatible(const CohomologyClass& other) const {
  if (degrees_ != other.degrees_) throw std::invalid_argument("incompatible cohomology generators");
}

CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b) {
  a.check_compatible(b);
  CohomologyClass out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

CohomologyClass operator-(const CohomologyClass& a, const CohomologyClass& b) {
  return a + Rational(-1) * b;
}

CohomologyClass operator*(const CohomologyClass& a, const CohomologyClass& b) {
  a.check_compatible(b);
  CohomologyClass out(a.degrees_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      CohomologyClass::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

CohomologyClass operator*(const Rational& s, const CohomologyClass& a) {
  CohomologyClass out(a.degrees_);
  if (s == 0) return out;
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, s * c);
  return out;
}

std::string CohomologyClass::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](std::size_t i) {
    if (i < names.size()) return names[i];
    return degrees_.size() == 1 ? std::string("x") : "x" + std::to_string(i + 1);
  };
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool constant_term = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (constant_term || magnitude != 1) s += magnitude.get_str();
    bool need_space = constant_term || magnitude != 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_space) s += " ";
      s += name(i);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
      need_space = true;
    }
  }
  return s;
}

CohomologyClass evaluate_l_class(const CohomologyClass& total_pontryagin, int k,
                                 const LPolyOptions& options) {
  const auto& degrees = total_pontryagin.generator_degrees();
  for (const auto& [e, c] : total_pontryagin.terms())
    if (total_pontryagin.degree_of(e) % 4 != 0)
      throw std::invalid_argument("Pontryagin class has a component outside degrees 4j");
  if (total_pontryagin.homogeneous_part(0) != CohomologyClass::constant(degrees, 1))
    throw std::invalid_argument("total Pontryagin class must have constant term 1");

  const auto poly = l_polynomial(k, options);
  std::vector<CohomologyClass> p;
  p.reserve(k + 1);
  for (int j = 0; j <= k; ++j) p.push_back(total_pontryagin.homogeneous_part(4 * j));

  CohomologyClass result(degrees);
  for (const auto& [partition, coeff] : poly.terms()) {
    CohomologyClass product = CohomologyClass::constant(degrees, coeff);
    for (int part : partition) product = product * p[part];
    result = result + product;
  }
  return result;
}

}  // namespace msets
