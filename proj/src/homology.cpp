#include "msets/homology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "msets/errors.hpp"
#include "msets/lattice.hpp"
#include "msets/lpoly.hpp"

namespace msets {

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw std::invalid_argument("torsion factors must be >= 2");
    if (i && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
      throw std::invalid_argument("torsion factors must form a divisibility chain");
  }
}

FgAbelianGroup FgAbelianGroup::from_cyclic_orders(std::size_t free_rank,
                                                  const std::vector<Integer>& orders) {
  std::vector<Integer> finite;
  for (const auto& o : orders) {
    if (o == 0) {
      ++free_rank;
    } else if (abs(o) != 1) {
      finite.push_back(abs(o));
    }
  }
  IntMatrix diag(finite.size(), finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) diag(i, i) = finite[i];
  std::vector<Integer> torsion;
  for (const auto& d : smith_normal_form(diag).diagonal())
    if (d > 1) torsion.push_back(d);
  return FgAbelianGroup(free_rank, std::move(torsion));
}

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) {
  return from_cyclic_orders(0, {order});
}

FgAbelianGroup FgAbelianGroup::elementary(const Integer& p, std::size_t count) {
  if (p < 2) throw std::invalid_argument("elementary group needs order >= 2");
  return FgAbelianGroup(0, std::vector<Integer>(count, p));
}

std::size_t FgAbelianGroup::even_torsion_count() const {
  return static_cast<std::size_t>(std::count_if(torsion_.begin(), torsion_.end(), [](const Integer& t) {
    return mpz_even_p(t.get_mpz_t()) != 0;
  }));
}

FgAbelianGroup operator+(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<Integer> orders = a.torsion_;
  orders.insert(orders.end(), b.torsion_.begin(), b.torsion_.end());
  return FgAbelianGroup::from_cyclic_orders(a.free_rank_ + b.free_rank_, orders);
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (std::size_t i = 0; i < torsion_.size();) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
    const std::string base = "Z/" + torsion_[i].get_str();
    parts.push_back(j - i == 1 ? base : "(" + base + ")^" + std::to_string(j - i));
    i = j;
  }
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += " ⊕ ";
    s += parts[i];
  }
  return s;
}

void GradedGroup::set(int degree, FgAbelianGroup group) {
  if (group.is_trivial()) {
    groups_.erase(degree);
  } else {
    groups_[degree] = std::move(group);
  }
}

FgAbelianGroup GradedGroup::at(int degree) const {
  auto it = groups_.find(degree);
  return it == groups_.end() ? FgAbelianGroup() : it->second;
}

std::optional<int> GradedGroup::max_degree() const {
  if (groups_.empty()) return std::nullopt;
  return groups_.rbegin()->first;
}

std::string Pi1::to_string() const {
  switch (kind) {
    case Kind::Trivial:
      return "1";
    case Kind::FreeAbelian:
      return "Z^" + std::to_string(rank);
    case Kind::Other:
      return label.empty() ? "other" : label;
  }
  return "?";
}

GradedGroup torus_homology(unsigned r) {
  GradedGroup h;
  for (unsigned j = 0; j <= r; ++j)
    h.set(static_cast<int>(j), FgAbelianGroup::free(binomial(r, j).get_ui()));
  return h;
}

GradedGroup k_complex_homology(unsigned r) {
  if (r < 1) throw std::invalid_argument("2-skeleton of T^r needs r >= 1");
  GradedGroup h;
  h.set(0, FgAbelianGroup::free(1));
  h.set(1, FgAbelianGroup::free(r));
  h.set(2, FgAbelianGroup::free(binomial(r, 2).get_ui()));
  return h;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("parameter out of range: " + what);
}

std::vector<WedgeSummand> merge_wedge(const std::vector<WedgeSummand>& raw) {
  std::map<int, std::size_t> counts;
  for (const auto& w : raw)
    if (w.count) counts[w.degree] += w.count;
  std::vector<WedgeSummand> out;
  for (const auto& [deg, count] : counts) out.push_back({deg, count});
  return out;
}

GradedGroup homology_from_wedge(const std::vector<WedgeSummand>& wedge) {
  GradedGroup h;
  h.set(0, FgAbelianGroup::free(1));
  for (const auto& w : wedge) h.set(w.degree, h.at(w.degree) + FgAbelianGroup::free(w.count));
  return h;
}

// Zero L-classes on every nonzero FH^{4k}, 0 < 4k <= n.
std::map<int, IntVector> zero_l_class(const ManifoldDescriptor& d) {
  std::map<int, IntVector> l;
  for (int k = 1; 4 * k <= d.dimension; ++k)
    if (std::size_t b = d.betti(4 * k)) l[k] = IntVector(b, Integer(0));
  return l;
}

ManifoldDescriptor make_sphere(long n) {
  require(n >= 2, "sphere(n) needs n >= 2");
  ManifoldDescriptor d;
  d.name = "S^" + std::to_string(n);
  d.dimension = static_cast<int>(n);
  d.pi1 = Pi1::trivial();
  d.wedge_model = std::vector<WedgeSummand>{{d.dimension, 1}};
  d.homology = homology_from_wedge(*d.wedge_model);
  d.flags = {true, true, true};
  d.l_class = zero_l_class(d);
  return d;
}

ManifoldDescriptor make_cpn(long n) {
  require(n >= 1 && n <= 16, "cpn(n) needs 1 <= n <= 16");
  ManifoldDescriptor d;
  d.name = "CP^" + std::to_string(n);
  d.dimension = static_cast<int>(2 * n);
  d.pi1 = Pi1::trivial();
  for (int i = 0; i <= n; ++i) d.homology.set(2 * i, FgAbelianGroup::free(1));
  d.flags = {false, true, true};

  // p(CP^n) = (1 + x^2)^{n+1}, x of degree 2.
  const std::vector<int> gens{2};
  const auto x = CohomologyClass::generator(gens, 0);
  const auto p = (CohomologyClass::constant(gens, 1) + x * x).pow(static_cast<unsigned>(n + 1))
                     .truncated(d.dimension);
  for (int k = 1; 4 * k <= d.dimension; ++k) {
    const auto l = evaluate_l_class(p, k);
    const auto r = denominator_constants(k).r_k;
    d.l_class[k] = clear_scale({l.coefficient({2 * k})}, r);
  }
  return d;
}

ManifoldDescriptor make_wg(long g, long k) {
  require(g >= 0 && g <= 100000, "wg(g, k) needs g >= 0");
  require(k >= 1 && k <= 1000, "wg(g, k) needs k >= 1");
  ManifoldDescriptor d;
  d.name = "W_" + std::to_string(g) + "(k=" + std::to_string(k) + ")";
  d.dimension = static_cast<int>(8 * k);
  d.pi1 = Pi1::trivial();
  d.wedge_model = merge_wedge({{static_cast<int>(4 * k), static_cast<std::size_t>(2 * g)},
                               {d.dimension, 1}});
  d.homology = homology_from_wedge(*d.wedge_model);
  d.flags = {true, true, true};
  d.l_class = zero_l_class(d);
  return d;
}

ManifoldDescriptor make_mrg(long r, long g, long k) {
  require(r >= 1 && r <= 30, "mrg(r, g, k) needs 1 <= r <= 30");
  require(g >= 0 && g <= 100000, "mrg(r, g, k) needs g >= 0");
  require(k >= 1 && k <= 1000, "mrg(r, g, k) needs k >= 1");
  const auto s = binomial(r, 2).get_ui();
  const auto ur = static_cast<std::size_t>(r);
  const int dk = static_cast<int>(k);

  ManifoldDescriptor d;
  d.name = "M_{" + std::to_string(r) + "," + std::to_string(g) + "}(k=" + std::to_string(k) + ")";
  d.dimension = 4 * dk + 2;
  d.pi1 = Pi1::free_abelian(static_cast<unsigned>(r));
  d.wedge_model = merge_wedge({{1, ur},
                               {2, s},
                               {2 * dk + 1, static_cast<std::size_t>(2 * g)},
                               {4 * dk, s},
                               {4 * dk + 1, ur},
                               {4 * dk + 2, 1}});
  d.homology = homology_from_wedge(*d.wedge_model);

  // c_* is an isomorphism onto H_j(T^r) for j <= 2 and vanishes above.
  for (int j = 0; j <= d.dimension; ++j) {
    const std::size_t target = binomial(r, j).get_ui();
    const std::size_t source = d.betti(j);
    if (!target || !source) continue;
    if (j <= 2) {
      if (target != source) throw std::logic_error("2-skeleton homology mismatch");
      d.classifying_map[j] = IntMatrix::identity(source);
    } else {
      d.classifying_map[j] = IntMatrix(target, source);
    }
  }
  d.flags = {true, true, true};
  d.l_class = zero_l_class(d);
  return d;
}

ManifoldDescriptor make_torus(long r) {
  require(r >= 1 && r <= 30, "torus(r) needs 1 <= r <= 30");
  ManifoldDescriptor d;
  d.name = "T^" + std::to_string(r);
  d.dimension = static_cast<int>(r);
  d.pi1 = Pi1::free_abelian(static_cast<unsigned>(r));
  d.homology = torus_homology(static_cast<unsigned>(r));
  std::vector<WedgeSummand> wedge;
  for (int j = 1; j <= r; ++j) wedge.push_back({j, binomial(r, j).get_ui()});
  d.wedge_model = wedge;
  for (int j = 0; j <= r; ++j) d.classifying_map[j] = IntMatrix::identity(d.betti(j));
  d.flags = {true, true, true};
  d.l_class = zero_l_class(d);
  return d;
}

}  // namespace

ManifoldDescriptor builtin(const std::string& name, const std::vector<long>& params) {
  auto arity = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument(name + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (name == "sphere") {
    arity(1);
    return make_sphere(params[0]);
  }
  if (name == "cpn") {
    arity(1);
    return make_cpn(params[0]);
  }
  if (name == "wg") {
    arity(2);
    return make_wg(params[0], params[1]);
  }
  if (name == "mrg") {
    arity(3);
    return make_mrg(params[0], params[1], params[2]);
  }
  if (name == "torus") {
    arity(1);
    return make_torus(params[0]);
  }
  throw std::invalid_argument("unknown built-in manifold '" + name + "'");
}

ManifoldDescriptor builtin_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<long> params;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size())
        throw std::invalid_argument("bad built-in parameter '" + item + "'");
      params.push_back(v);
    }
  }
  return builtin(name, params);
}

// ---------------------------------------------------------------------------

std::string Violation::label() const {
  static const char* names[] = {"BadDimension",        "DegreeOutOfRange",    "H0NotZ",
                                "PoincareDuality",     "SimplyConnectedH1",   "FreeAbelianH1",
                                "WedgeModel",          "TorsionWithCollapse", "ClassifyingMapShape",
                                "LClassShape"};
  return std::string(names[static_cast<int>(kind)]) + "(" + std::to_string(degree) + ")";
}

std::vector<Violation> validate(const ManifoldDescriptor& d) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const int n = d.dimension;
  if (n < 0) {
    out.push_back({K::BadDimension, n, "dimension must be nonnegative"});
    return out;
  }

  for (const auto& [deg, group] : d.homology.entries())
    if (deg < 0 || deg > n)
      out.push_back({K::DegreeOutOfRange, deg, "homology in degree outside [0, n]"});

  if (d.homology.at(0) != FgAbelianGroup::free(1))
    out.push_back({K::H0NotZ, 0, "H_0 must be Z for a connected manifold"});

  if (d.flags.orientable)
    for (int j = 0; 2 * j < n; ++j)
      if (d.betti(j) != d.betti(n - j))
        out.push_back({K::PoincareDuality, j,
                       "b_" + std::to_string(j) + " = " + std::to_string(d.betti(j)) + " but b_" +
                           std::to_string(n - j) + " = " + std::to_string(d.betti(n - j))});

  if (d.pi1.kind == Pi1::Kind::Trivial && !d.homology.at(1).is_trivial())
    out.push_back({K::SimplyConnectedH1, 1, "trivial fundamental group but H_1 = " +
                                                d.homology.at(1).to_string()});
  if (d.pi1.kind == Pi1::Kind::FreeAbelian && n >= 1 &&
      d.homology.at(1) != FgAbelianGroup::free(d.pi1.rank))
    out.push_back({K::FreeAbelianH1, 1, "H_1 must be the abelianization Z^" +
                                            std::to_string(d.pi1.rank)});

  if (d.wedge_model) {
    std::map<int, std::size_t> counts;
    for (const auto& w : *d.wedge_model) {
      if (w.degree <= 0 || w.degree > n)
        out.push_back({K::WedgeModel, w.degree, "wedge summand degree outside [1, n]"});
      counts[w.degree] += w.count;
    }
    for (int j = 1; j <= n; ++j) {
      const auto it = counts.find(j);
      const std::size_t c = it == counts.end() ? 0 : it->second;
      const auto h = d.homology.at(j);
      if (c != h.free_rank() || !h.is_free())
        out.push_back({K::WedgeModel, j, "wedge model gives Z^" + std::to_string(c) +
                                             " but H_" + std::to_string(j) + " = " + h.to_string()});
    }
  }

  if (d.flags.ahss_collapses)
    for (const auto& [deg, group] : d.homology.entries())
      if (!group.is_free())
        out.push_back({K::TorsionWithCollapse, deg,
                       "collapse is only supported for torsion-free homology"});

  for (const auto& [deg, m] : d.classifying_map) {
    bool ok = deg >= 0 && deg <= n && m.cols() == d.betti(deg);
    if (ok && d.pi1.kind == Pi1::Kind::FreeAbelian)
      ok = m.rows() == binomial(d.pi1.rank, deg).get_ui();
    if (ok && d.pi1.kind == Pi1::Kind::Trivial) ok = m.rows() == (deg == 0 ? 1u : 0u);
    if (!ok)
      out.push_back({K::ClassifyingMapShape, deg,
                     "classifying map is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols())});
  }

  for (const auto& [k, v] : d.l_class)
    if (k < 1 || 4 * k > n || v.size() != d.betti(4 * k))
      out.push_back({K::LClassShape, 4 * k, "L-class vector has length " +
                                                std::to_string(v.size())});
  return out;
}

}  // namespace msets
