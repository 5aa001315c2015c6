#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "msets/arith.hpp"

namespace msets {

// Z^free_rank + Z/t_1 + ... + Z/t_m with t_i >= 2 and t_i | t_{i+1}.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  // Throws std::invalid_argument unless `torsion` is already an invariant-factor chain.
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion = {});

  // Accepts arbitrary cyclic orders (0 means Z, 1 is dropped) and normalizes.
  static FgAbelianGroup from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders);
  static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank); }
  static FgAbelianGroup cyclic(const Integer& order);
  static FgAbelianGroup elementary(const Integer& p, std::size_t count);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_infinite() const { return free_rank_ > 0; }
  bool is_free() const { return torsion_.empty(); }
  // Number of torsion factors of even order (= dim of the 2-torsion subgroup).
  std::size_t even_torsion_count() const;

  // Direct sum.
  friend FgAbelianGroup operator+(const FgAbelianGroup& a, const FgAbelianGroup& b);
  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

  // "0", "Z", "Z^3 ⊕ Z/2", "(Z/2)^3 ⊕ Z/4"
  std::string to_string() const;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

// Degree -> group; absent degrees are trivial, trivial groups are never stored.
class GradedGroup {
 public:
  GradedGroup() = default;

  void set(int degree, FgAbelianGroup group);
  FgAbelianGroup at(int degree) const;
  std::size_t rank(int degree) const { return at(degree).free_rank(); }
  const std::map<int, FgAbelianGroup>& entries() const { return groups_; }
  std::optional<int> max_degree() const;

  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

 private:
  std::map<int, FgAbelianGroup> groups_;
};

struct Pi1 {
  enum class Kind { Trivial, FreeAbelian, Other };

  Kind kind = Kind::Trivial;
  unsigned rank = 0;   // FreeAbelian only
  std::string label;   // Other only

  static Pi1 trivial() { return {}; }
  static Pi1 free_abelian(unsigned r) { return {Kind::FreeAbelian, r, {}}; }
  static Pi1 other(std::string label) { return {Kind::Other, 0, std::move(label)}; }

  std::string to_string() const;
  friend bool operator==(const Pi1&, const Pi1&) = default;
};

struct WedgeSummand {
  int degree;
  std::size_t count;
  friend bool operator==(const WedgeSummand&, const WedgeSummand&) = default;
};

struct DescriptorFlags {
  bool stably_parallelizable = false;
  bool ahss_collapses = false;
  bool orientable = true;
  friend bool operator==(const DescriptorFlags&, const DescriptorFlags&) = default;
};

// Homotopy-theoretic data about a closed manifold M that the surgery
// computations consume. The schema is this library's own convention.
struct ManifoldDescriptor {
  std::string name;
  int dimension = 0;
  Pi1 pi1;
  GradedGroup homology;  // integral
  // Stable homotopy type as a wedge of spheres, merged per degree.
  std::optional<std::vector<WedgeSummand>> wedge_model;
  // c_*: H_j(M) -> H_j(B pi), one matrix per degree (rows: target rank).
  std::map<int, IntMatrix> classifying_map;
  // Coordinates of L_k(M) in the scale-cleared lattice (1/r_k) FH^{4k}(M).
  std::map<int, IntVector> l_class;
  DescriptorFlags flags;

  std::size_t betti(int degree) const { return homology.rank(degree); }

  friend bool operator==(const ManifoldDescriptor&, const ManifoldDescriptor&) = default;
};

GradedGroup torus_homology(unsigned r);
// Homology of the 2-skeleton of the r-torus.
GradedGroup k_complex_homology(unsigned r);

// Names: sphere(n), cpn(n), wg(g, k), mrg(r, g, k), torus(r).
ManifoldDescriptor builtin(const std::string& name, const std::vector<long>& params);
// "mrg:3,6,1" or "sphere:7"
ManifoldDescriptor builtin_from_spec(const std::string& spec);

struct Violation {
  enum class Kind {
    BadDimension,
    DegreeOutOfRange,
    H0NotZ,
    PoincareDuality,
    SimplyConnectedH1,
    FreeAbelianH1,
    WedgeModel,
    TorsionWithCollapse,
    ClassifyingMapShape,
    LClassShape,
  };

  Kind kind;
  int degree;
  std::string message;

  // "PoincareDuality(1)"
  std::string label() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate(const ManifoldDescriptor& d);

// JSON descriptor files. Unknown fields are rejected with DescriptorError.
nlohmann::json to_json(const ManifoldDescriptor& d);
ManifoldDescriptor descriptor_from_json(const nlohmann::json& j);
ManifoldDescriptor read_descriptor(const std::filesystem::path& path);
void write_descriptor(const ManifoldDescriptor& d, const std::filesystem::path& path);

}  // namespace msets
