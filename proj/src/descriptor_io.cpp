#include <fstream>
#include <set>

#include "msets/errors.hpp"
#include "msets/homology.hpp"

namespace msets {

using nlohmann::json;

namespace {

json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw DescriptorError(where + ": expected an integer");
}

long small_integer(const json& j, const std::string& where, long min = 0) {
  if (!j.is_number_integer()) throw DescriptorError(where + ": expected an integer");
  long v = j.get<long>();
  if (v < min) throw DescriptorError(where + ": must be >= " + std::to_string(min));
  return v;
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw DescriptorError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw DescriptorError(where + ": unknown field '" + key + "'");
}

const json& required(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw DescriptorError(where + ": missing field '" + key + "'");
  return *it;
}

const json& array_field(const json& j, const std::string& where) {
  if (!j.is_array()) throw DescriptorError(where + ": expected an array");
  return j;
}

json vector_to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

IntVector vector_from_json(const json& j, const std::string& where) {
  IntVector v;
  for (const auto& x : array_field(j, where)) v.push_back(integer_from_json(x, where));
  return v;
}

}  // namespace

json to_json(const ManifoldDescriptor& d) {
  json j;
  j["name"] = d.name;
  j["dimension"] = d.dimension;

  json pi1;
  switch (d.pi1.kind) {
    case Pi1::Kind::Trivial:
      pi1["type"] = "trivial";
      break;
    case Pi1::Kind::FreeAbelian:
      pi1["type"] = "free_abelian";
      pi1["rank"] = d.pi1.rank;
      break;
    case Pi1::Kind::Other:
      pi1["type"] = "other";
      pi1["label"] = d.pi1.label;
      break;
  }
  j["pi1"] = pi1;

  json homology = json::array();
  for (const auto& [deg, g] : d.homology.entries()) {
    json torsion = json::array();
    for (const auto& t : g.torsion()) torsion.push_back(integer_to_json(t));
    homology.push_back({{"degree", deg}, {"free_rank", g.free_rank()}, {"torsion", torsion}});
  }
  j["homology"] = homology;

  if (d.wedge_model) {
    json wedge = json::array();
    for (const auto& w : *d.wedge_model) wedge.push_back({{"degree", w.degree}, {"count", w.count}});
    j["wedge_model"] = wedge;
  }
  if (!d.classifying_map.empty()) {
    json maps = json::array();
    for (const auto& [deg, m] : d.classifying_map) {
      json rows = json::array();
      for (const auto& r : m.row_vectors()) rows.push_back(vector_to_json(r));
      maps.push_back({{"degree", deg}, {"matrix", rows}});
    }
    j["classifying_map"] = maps;
  }
  if (!d.l_class.empty()) {
    json l = json::array();
    for (const auto& [k, v] : d.l_class) l.push_back({{"k", k}, {"vector", vector_to_json(v)}});
    j["l_class"] = l;
  }
  j["flags"] = {{"stably_parallelizable", d.flags.stably_parallelizable},
                {"ahss_collapses", d.flags.ahss_collapses},
                {"orientable", d.flags.orientable}};
  return j;
}

ManifoldDescriptor descriptor_from_json(const json& j) {
  check_keys(j, "descriptor",
             {"name", "dimension", "pi1", "homology", "wedge_model", "classifying_map", "l_class",
              "flags"});
  ManifoldDescriptor d;
  const auto& name = required(j, "name", "descriptor");
  if (!name.is_string()) throw DescriptorError("name: expected a string");
  d.name = name.get<std::string>();
  d.dimension = static_cast<int>(small_integer(required(j, "dimension", "descriptor"), "dimension"));

  const auto& pi1 = required(j, "pi1", "descriptor");
  check_keys(pi1, "pi1", {"type", "rank", "label"});
  const auto& type = required(pi1, "type", "pi1");
  if (!type.is_string()) throw DescriptorError("pi1.type: expected a string");
  const auto t = type.get<std::string>();
  if (t == "trivial") {
    d.pi1 = Pi1::trivial();
  } else if (t == "free_abelian") {
    d.pi1 = Pi1::free_abelian(static_cast<unsigned>(small_integer(required(pi1, "rank", "pi1"), "pi1.rank")));
  } else if (t == "other") {
    std::string label;
    if (pi1.contains("label")) {
      if (!pi1["label"].is_string()) throw DescriptorError("pi1.label: expected a string");
      label = pi1["label"].get<std::string>();
    }
    d.pi1 = Pi1::other(label);
  } else {
    throw DescriptorError("pi1.type: unknown value '" + t + "'");
  }

  std::set<int> seen;
  for (const auto& entry : array_field(required(j, "homology", "descriptor"), "homology")) {
    check_keys(entry, "homology entry", {"degree", "free_rank", "torsion"});
    const int deg = static_cast<int>(small_integer(required(entry, "degree", "homology"), "homology.degree"));
    if (!seen.insert(deg).second)
      throw DescriptorError("homology: degree " + std::to_string(deg) + " listed twice");
    const auto rank = static_cast<std::size_t>(small_integer(required(entry, "free_rank", "homology"), "homology.free_rank"));
    IntVector torsion;
    if (entry.contains("torsion")) torsion = vector_from_json(entry["torsion"], "homology.torsion");
    try {
      d.homology.set(deg, FgAbelianGroup(rank, torsion));
    } catch (const std::invalid_argument& e) {
      throw DescriptorError("homology degree " + std::to_string(deg) + ": " + e.what());
    }
  }

  if (j.contains("wedge_model")) {
    std::vector<WedgeSummand> wedge;
    for (const auto& entry : array_field(j["wedge_model"], "wedge_model")) {
      check_keys(entry, "wedge_model entry", {"degree", "count"});
      wedge.push_back({static_cast<int>(small_integer(required(entry, "degree", "wedge_model"), "wedge_model.degree")),
                       static_cast<std::size_t>(small_integer(required(entry, "count", "wedge_model"), "wedge_model.count"))});
    }
    d.wedge_model = std::move(wedge);
  }

  if (j.contains("classifying_map")) {
    for (const auto& entry : array_field(j["classifying_map"], "classifying_map")) {
      check_keys(entry, "classifying_map entry", {"degree", "matrix"});
      const int deg = static_cast<int>(small_integer(required(entry, "degree", "classifying_map"), "classifying_map.degree"));
      std::vector<IntVector> rows;
      for (const auto& row : array_field(required(entry, "matrix", "classifying_map"), "classifying_map.matrix"))
        rows.push_back(vector_from_json(row, "classifying_map.matrix"));
      try {
        if (!d.classifying_map.emplace(deg, IntMatrix::from_rows(rows, d.betti(deg))).second)
          throw DescriptorError("classifying_map: degree " + std::to_string(deg) + " listed twice");
      } catch (const std::invalid_argument& e) {
        throw DescriptorError("classifying_map degree " + std::to_string(deg) + ": " + e.what());
      }
    }
  }

  if (j.contains("l_class")) {
    for (const auto& entry : array_field(j["l_class"], "l_class")) {
      check_keys(entry, "l_class entry", {"k", "vector"});
      const int k = static_cast<int>(small_integer(required(entry, "k", "l_class"), "l_class.k", 1));
      if (!d.l_class.emplace(k, vector_from_json(required(entry, "vector", "l_class"), "l_class.vector")).second)
        throw DescriptorError("l_class: k = " + std::to_string(k) + " listed twice");
    }
  }

  if (j.contains("flags")) {
    const auto& flags = j["flags"];
    check_keys(flags, "flags", {"stably_parallelizable", "ahss_collapses", "orientable"});
    auto flag = [&](const char* key, bool fallback) {
      if (!flags.contains(key)) return fallback;
      if (!flags[key].is_boolean()) throw DescriptorError(std::string("flags.") + key + ": expected a boolean");
      return flags[key].get<bool>();
    };
    d.flags.stably_parallelizable = flag("stably_parallelizable", false);
    d.flags.ahss_collapses = flag("ahss_collapses", false);
    d.flags.orientable = flag("orientable", true);
  }
  return d;
}

ManifoldDescriptor read_descriptor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("cannot read descriptor file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DescriptorError(path.string() + ": " + e.what());
  }
  return descriptor_from_json(j);
}

void write_descriptor(const ManifoldDescriptor& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DescriptorError("cannot write descriptor file " + path.string());
  out << to_json(d).dump(2) << '\n';
}

}  // namespace msets
