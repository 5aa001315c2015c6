#include "msets/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msets/errors.hpp"
#include "msets/homology.hpp"
#include "msets/lattice.hpp"
#include "msets/lpoly.hpp"
#include "msets/surgery.hpp"

namespace msets::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  long k = 1;
  long r = 0;
  long g = 0;
  long n = 0;
  long m = 0;
  std::string t = "1";
  std::string file;
  std::string builtin;
  std::string format = "text";
  std::size_t count = 10;
  std::string orders;
  std::string offset;
  std::string basis;
  std::string condition;
  std::string lattice;
  std::string superlattice;
  std::vector<std::string> c_matrices;
  std::string degree_of_c = "1";
  bool eta_infinite = false;
};

// ---------------------------------------------------------------------------
// Parsing helpers

Integer parse_integer(std::string s, const std::string& what) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer x;
  if (s.empty() || x.set_str(s, 10) != 0) throw UsageError(what + ": '" + s + "' is not an integer");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

IntVector parse_vector(const std::string& s, const std::string& what) {
  IntVector v;
  if (s.empty()) return v;
  for (const auto& part : split(s, ',')) v.push_back(parse_integer(part, what));
  return v;
}

// "2,0;0,2" -> rows {2,0}, {0,2}
std::vector<IntVector> parse_rows(const std::string& s, const std::string& what) {
  std::vector<IntVector> rows;
  if (s.empty()) return rows;
  for (const auto& part : split(s, ';')) rows.push_back(parse_vector(part, what));
  return rows;
}

LatticeBasis parse_lattice(const std::string& s, std::size_t ambient, const std::string& what) {
  auto rows = parse_rows(s, what);
  for (const auto& r : rows)
    if (r.size() != ambient)
      throw UsageError(what + ": vectors must have " + std::to_string(ambient) + " entries");
  return LatticeBasis(ambient, std::move(rows));
}

ManifoldDescriptor load_descriptor(const Options& o) {
  if (o.file.empty() && o.builtin.empty()) throw UsageError("one of --file or --builtin is required");
  auto d = o.file.empty() ? builtin_from_spec(o.builtin) : read_descriptor(o.file);
  const auto violations = validate(d);
  if (!violations.empty()) {
    std::string msg = "descriptor '" + d.name + "' is invalid:";
    for (const auto& v : violations) msg += "\n  " + v.label() + ": " + v.message;
    throw DescriptorError(msg);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Rendering helpers

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json vector_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

json group_json(const FgAbelianGroup& g) {
  json torsion = json::array();
  for (const auto& t : g.torsion()) torsion.push_back(integer_json(t));
  return {{"free_rank", g.free_rank()}, {"torsion", torsion}, {"text", g.to_string()}};
}

json verdict_json(const Verdict& v) {
  json hyps = json::array();
  for (const auto& h : v.hypotheses)
    hyps.push_back({{"name", h.name}, {"verified", h.verified}, {"detail", h.detail}});
  json j = {{"status", to_string(v.status)}, {"criterion", to_string(v.criterion)}, {"hypotheses", hyps}};
  if (v.witness) j["witness"] = {{"what", v.witness->what}, {"value", integer_json(v.witness->value)}};
  return j;
}

class Table {
 public:
  explicit Table(std::vector<std::string> headers) : rows_{std::move(headers)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& out, const std::string& indent = "  ") const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_)
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], display_width(row[i]));
      }
    for (const auto& row : rows_) {
      std::string line = indent;
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) line += std::string(width[i] - display_width(row[i]) + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  // UTF-8 code points, so "⊕" counts once.
  static std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
  }

  std::vector<std::vector<std::string>> rows_;
};

void render_hypotheses(std::ostream& out, const Verdict& v) {
  for (const auto& h : v.hypotheses) {
    out << "  [" << (h.verified ? 'x' : ' ') << "] " << h.name;
    if (!h.detail.empty()) out << " (" << h.detail << ")";
    out << '\n';
  }
}

std::string verdict_line(const Verdict& v) {
  std::string line = to_string(v.status) + " (" + to_string(v.criterion);
  if (const auto* failed = v.failed_hypothesis()) {
    line += ": unverified hypothesis '" + failed->name + "'";
  } else if (v.witness) {
    line += ": " + v.witness->what + " " + v.witness->value.get_str();
  }
  return line + ")";
}

// ---------------------------------------------------------------------------
// Subcommands. Each renders into `out` (a buffer) and returns an exit code.

void cmd_lpoly(const Options& o, std::ostream& out, bool as_json) {
  const Integer t = parse_integer(o.t, "--t");
  const auto poly = l_polynomial(static_cast<int>(o.k));
  const auto dc = denominator_constants(static_cast<int>(o.k), t);
  if (as_json) {
    json terms = json::array();
    for (const auto& [p, c] : poly.terms()) terms.push_back({{"partition", p}, {"coefficient", to_string(c)}});
    out << json{{"k", o.k},
                {"polynomial", poly.to_string()},
                {"terms", terms},
                {"c_k", integer_json(dc.c_k)},
                {"t", integer_json(dc.t)},
                {"r_k", integer_json(dc.r_k)}}
               .dump(2)
        << '\n';
    return;
  }
  out << "L_" << o.k << " = " << poly.to_string() << "; c_" << o.k << " = " << dc.c_k << '\n';
  if (dc.t != 1) out << "r_" << o.k << " = c_" << o.k << " * t = " << dc.r_k << '\n';
}

void cmd_divspec(const Options& o, std::ostream& out, bool as_json) {
  if (o.basis.empty()) throw UsageError("--basis is required");
  const auto rows = parse_rows(o.basis, "--basis");
  const std::size_t ambient = rows.front().size();
  IntVector offset = o.offset.empty() ? IntVector(ambient) : parse_vector(o.offset, "--offset");
  if (offset.size() != ambient) throw UsageError("--offset must have " + std::to_string(ambient) + " entries");
  AffineSublattice s(offset, parse_lattice(o.basis, ambient, "--basis"));
  const auto spectrum = divisibility_spectrum(s, o.count);
  if (as_json) {
    json entries = json::array();
    for (const auto& e : spectrum)
      entries.push_back({{"prime", integer_json(e.prime)},
                         {"witness", vector_json(e.witness)},
                         {"divisibility", integer_json(e.divisibility)}});
    out << json{{"index", integer_json(s.index())}, {"spectrum", entries}}.dump(2) << '\n';
    return;
  }
  out << "index " << s.index() << '\n';
  Table table({"prime", "divisibility", "witness"});
  for (const auto& e : spectrum) table.add({e.prime.get_str(), e.divisibility.get_str(), to_string(e.witness)});
  table.render(out);
}

void cmd_lgroup(const Options& o, std::ostream& out, bool as_json) {
  if (o.r < 0) throw UsageError("--r must be >= 0");
  const auto r = static_cast<unsigned>(o.r);
  const auto total = l_group_free_abelian(o.n, r);
  if (as_json) {
    json summands = json::array();
    for (unsigned j = 0; j <= r; ++j)
      summands.push_back({{"j", j},
                          {"multiplicity", integer_json(binomial(r, j))},
                          {"coefficients", group_json(l_coefficient(o.n - static_cast<long>(j)))}});
    out << json{{"n", o.n}, {"r", r}, {"group", group_json(total)}, {"summands", summands}}.dump(2) << '\n';
    return;
  }
  out << "L_" << o.n << "(Z[Z^" << r << "]) = " << total.to_string() << '\n';
  Table table({"j", "C(r,j)", "L_{n-j}(Z)"});
  for (unsigned j = 0; j <= r; ++j)
    table.add({std::to_string(j), binomial(r, j).get_str(), l_coefficient(o.n - static_cast<long>(j)).to_string()});
  table.render(out);
}

void cmd_normal(const Options& o, std::ostream& out, bool as_json) {
  const auto d = load_descriptor(o);
  const auto rational = normal_invariants_rational(d);
  const int m = o.m > 0 ? static_cast<int>(o.m) : d.dimension;
  std::optional<std::vector<NormalInvariantSummand>> integral;
  if (d.flags.ahss_collapses) integral = normal_invariants_integral(d, m);
  if (as_json) {
    json rat = json::array();
    for (const auto& e : rational) rat.push_back({{"degree", e.degree}, {"rank", e.rank}});
    json j = {{"name", d.name}, {"dimension", d.dimension}, {"rational", rat}};
    if (integral) {
      json in = json::array();
      for (const auto& s : *integral)
        in.push_back({{"degree", s.degree}, {"coefficients", group_json(s.coefficients)}, {"group", group_json(s.group)}});
      j["integral"] = {{"m", m}, {"summands", in}};
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "rational normal invariants of " << d.name << '\n';
  Table rt({"degree", "rank"});
  for (const auto& e : rational) rt.add({std::to_string(e.degree), std::to_string(e.rank)});
  rt.render(out);
  if (integral) {
    out << "H_" << m << "(M; L<1>) summands\n";
    Table it({"degree", "coefficients", "group"});
    for (const auto& s : *integral)
      it.add({std::to_string(s.degree), s.coefficients.to_string(), s.group.to_string()});
    it.render(out);
  } else {
    out << "integral normal invariants not computed (spectral sequence collapse not declared)\n";
  }
}

void cmd_structure(const Options& o, std::ostream& out, bool as_json) {
  const auto d = load_descriptor(o);
  const auto p = structure_set(d);
  if (as_json) {
    out << json{{"name", d.name},
                {"sub", group_json(p.sub)},
                {"quotient", group_json(p.quotient)},
                {"presentation", p.to_string()},
                {"total_determined", p.total_determined()},
                {"infinite", p.total_infinite()}}
               .dump(2)
        << '\n';
    return;
  }
  out << "structure set of " << d.name << '\n';
  Table table({"ker theta", "coker theta", "infinite"});
  table.add({p.quotient.to_string(), p.sub.to_string(), p.total_infinite() ? "true" : "false"});
  table.render(out);
  out << p.to_string() << '\n';
}

void cmd_decide(const Options& o, std::ostream& out, bool as_json) {
  const auto d = load_descriptor(o);
  const auto v = decide_simply_connected(d);
  if (as_json) {
    auto j = verdict_json(v);
    j["name"] = d.name;
    out << j.dump(2) << '\n';
    return;
  }
  std::string reason;
  if (v.status == Status::Finite)
    reason = "no nonzero H^{4i}, 0<4i<" + std::to_string(d.dimension);
  else if (v.status == Status::Infinite)
    reason = "H^{" + v.witness->value.get_str() + "}(M;Q) != 0, 0<" + v.witness->value.get_str() + "<" +
             std::to_string(d.dimension);
  else
    reason = "unverified hypothesis '" + v.failed_hypothesis()->name + "'";
  out << to_string(v.status) << " (" << to_string(v.criterion) << ": " << reason << ")\n";
}

void cmd_theorem_b(const Options& o, std::ostream& out, bool as_json) {
  const auto d = load_descriptor(o);
  TheoremBCondition condition;
  if (o.condition == "parallelizable") {
    condition = ParallelizableCondition{};
  } else if (o.condition == "lattice") {
    if (o.lattice.empty() || o.superlattice.empty())
      throw UsageError("--condition lattice needs --lattice and --superlattice");
    const std::size_t ambient = d.betti(4 * static_cast<int>(o.k));
    condition = LatticePairCondition{parse_lattice(o.lattice, ambient, "--lattice"),
                                     parse_lattice(o.superlattice, ambient, "--superlattice"),
                                     static_cast<int>(o.k), std::nullopt};
  } else if (o.condition == "pd") {
    PdGroupCondition pd;
    pd.degree_of_c = parse_integer(o.degree_of_c, "--degree-of-c");
    if (o.c_matrices.empty()) {
      pd.c_matrices = d.classifying_map;
    } else {
      for (const auto& spec : o.c_matrices) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) throw UsageError("--c-matrix expects DEGREE:ROWS, got '" + spec + "'");
        const int deg = static_cast<int>(parse_integer(spec.substr(0, colon), "--c-matrix").get_si());
        pd.c_matrices.emplace(deg, IntMatrix::from_rows(parse_rows(spec.substr(colon + 1), "--c-matrix"), d.betti(deg)));
      }
    }
    condition = std::move(pd);
  } else {
    throw UsageError("--condition must be parallelizable, lattice or pd");
  }
  const auto v = theorem_b_check(d, condition, EtaEvidence{o.eta_infinite});
  if (as_json) {
    auto j = verdict_json(v);
    j["name"] = d.name;
    out << j.dump(2) << '\n';
    return;
  }
  out << verdict_line(v) << '\n';
  render_hypotheses(out, v);
}

void cmd_theorem_c(const Options& o, std::ostream& out, bool as_json) {
  const auto s = theorem_c_summary(o.r, o.g, o.k);
  if (as_json) {
    out << json{{"r", o.r},
                {"g", o.g},
                {"k", o.k},
                {"sub", group_json(s.presentation.sub)},
                {"quotient", group_json(s.presentation.quotient)},
                {"presentation", s.presentation.to_string()},
                {"structure_set_infinite", s.structure_set_infinite()},
                {"polarized_manifold_set_size_one", s.polarized_manifold_set_size_one()},
                {"structure_set_verdict", verdict_json(s.structure_set)},
                {"polarized_verdict", verdict_json(s.polarized_manifold_set)}}
               .dump(2)
        << '\n';
    return;
  }
  out << "M_{" << o.r << "," << o.g << "}: " << s.presentation.to_string() << '\n';
  out << "structure set infinite: " << (s.structure_set_infinite() ? "true" : "false") << '\n';
  render_hypotheses(out, s.structure_set);
  out << "polarized manifold set size one: " << (s.polarized_manifold_set_size_one() ? "true" : "false") << '\n';
  render_hypotheses(out, s.polarized_manifold_set);
}

void cmd_theorem_e(const Options& o, std::ostream& out, bool as_json) {
  std::optional<ThetaOrders> orders;
  if (!o.orders.empty()) {
    const auto v = parse_vector(o.orders, "--orders");
    if (v.size() != 3) throw UsageError("--orders expects three values a,b,c");
    orders = ThetaOrders{v[0], v[1], v[2]};
  }
  const auto bound = theorem_e_bound(o.r, o.g, o.k, orders);
  if (as_json) {
    out << json{{"r", o.r}, {"g", o.g}, {"k", o.k}, {"bound", integer_json(bound)}}.dump(2) << '\n';
    return;
  }
  out << "polarized manifold set of M_{" << o.r << "," << o.g << "} (k = " << o.k << ") has at most " << bound
      << " element" << (bound == 1 ? "" : "s") << '\n';
}

// Returns 1 when violations are found.
int cmd_validate(const Options& o, std::ostream& out, bool as_json) {
  if (o.file.empty() && o.builtin.empty()) throw UsageError("one of --file or --builtin is required");
  const auto d = o.file.empty() ? builtin_from_spec(o.builtin) : read_descriptor(o.file);
  const auto violations = validate(d);
  if (as_json) {
    json list = json::array();
    for (const auto& v : violations) list.push_back({{"violation", v.label()}, {"message", v.message}});
    out << json{{"name", d.name}, {"valid", violations.empty()}, {"violations", list}}.dump(2) << '\n';
  } else if (violations.empty()) {
    out << d.name << ": valid\n";
  } else {
    out << d.name << ": " << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << '\n';
    for (const auto& v : violations) out << "  " << v.label() << ": " << v.message << '\n';
  }
  return violations.empty() ? 0 : 1;
}

void add_source_options(CLI::App* sub, Options& o) {
  auto* file = sub->add_option("--file", o.file, "Descriptor JSON file");
  auto* b = sub->add_option("--builtin", o.builtin, "Built-in family, e.g. mrg:3,6,1");
  file->excludes(b);
  b->excludes(file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact surgery-theoretic invariants of closed manifolds", "msets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* lpoly = app.add_subcommand("lpoly", "Hirzebruch L-polynomial L_k and its denominator");
  lpoly->add_option("--k", o.k, "Degree k")->required();
  lpoly->add_option("--t", o.t, "Integrality parameter");

  auto* divspec = app.add_subcommand("divspec", "Divisibility spectrum of an affine sublattice");
  divspec->add_option("--basis", o.basis, "Basis vectors, e.g. 2,0;0,2")->required();
  divspec->add_option("--offset", o.offset, "Offset vector, e.g. 1,0");
  divspec->add_option("--count", o.count, "Number of values")->check(CLI::PositiveNumber);

  auto* lgroup = app.add_subcommand("lgroup", "L-group L_n(Z[Z^r])");
  lgroup->add_option("--n", o.n, "Degree n")->required();
  lgroup->add_option("--r", o.r, "Rank r")->required();

  auto* normal = app.add_subcommand("normal", "Normal invariants");
  add_source_options(normal, o);
  normal->add_option("--n", o.m, "Total degree m (default: dimension)");

  auto* structure = app.add_subcommand("structure", "Structure set presentation");
  add_source_options(structure, o);

  auto* decide = app.add_subcommand("decide", "Decide |S(M)| for simply connected M");
  add_source_options(decide, o);

  auto* theorem_b = app.add_subcommand("theorem-b", "Sufficient conditions for an infinite manifold set");
  add_source_options(theorem_b, o);
  theorem_b->add_option("--condition", o.condition, "parallelizable, lattice or pd")
      ->required()
      ->check(CLI::IsMember({"parallelizable", "lattice", "pd"}));
  theorem_b->add_option("--k", o.k, "Degree k of the lattice pair");
  theorem_b->add_option("--lattice", o.lattice, "Basis of L, rows separated by ';'");
  theorem_b->add_option("--superlattice", o.superlattice, "Basis of L', rows separated by ';'");
  theorem_b->add_option("--c-matrix", o.c_matrices, "DEGREE:ROWS matrix of c_* (repeatable)");
  theorem_b->add_option("--degree-of-c", o.degree_of_c, "Degree of the classifying map");
  theorem_b->add_flag("--eta-infinite", o.eta_infinite, "Assert that eta(S(M)) is infinite");

  auto* theorem_c = app.add_subcommand("theorem-c", "Structure set and polarized set of M_{r,g}");
  theorem_c->add_option("--r", o.r, "Rank r")->required();
  theorem_c->add_option("--g", o.g, "Genus g")->required();
  theorem_c->add_option("--k", o.k, "k (dimension 4k+2)");

  auto* theorem_e = app.add_subcommand("theorem-e", "Bound on the smooth polarized manifold set of M_{r,g}");
  theorem_e->add_option("--r", o.r, "Rank r")->required();
  theorem_e->add_option("--g", o.g, "Genus g")->required();
  theorem_e->add_option("--k", o.k, "k (dimension 4k+2)")->required();
  theorem_e->add_option("--orders", o.orders, "Exotic sphere group orders a,b,c");

  auto* validate_cmd = app.add_subcommand("validate", "Validate a descriptor");
  add_source_options(validate_cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  const bool as_json = o.format == "json";
  std::ostringstream buffer;
  int code = 0;
  try {
    if (lpoly->parsed()) cmd_lpoly(o, buffer, as_json);
    else if (divspec->parsed()) cmd_divspec(o, buffer, as_json);
    else if (lgroup->parsed()) cmd_lgroup(o, buffer, as_json);
    else if (normal->parsed()) cmd_normal(o, buffer, as_json);
    else if (structure->parsed()) cmd_structure(o, buffer, as_json);
    else if (decide->parsed()) cmd_decide(o, buffer, as_json);
    else if (theorem_b->parsed()) cmd_theorem_b(o, buffer, as_json);
    else if (theorem_c->parsed()) cmd_theorem_c(o, buffer, as_json);
    else if (theorem_e->parsed()) cmd_theorem_e(o, buffer, as_json);
    else if (validate_cmd->parsed()) code = cmd_validate(o, buffer, as_json);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << buffer.str();
  return code;
}

}  // namespace msets::cli
