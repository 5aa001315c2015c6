#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msets/cli.hpp"
#include "msets/homology.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = msets::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("lpoly output") {
  auto r = run({"lpoly", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "L_2 = 7/45 p2 - 1/45 p1^2; c_2 = 45\n");

  r = run({"lpoly", "--k", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["c_k"] == 45);
  CHECK(j["polynomial"] == "7/45 p2 - 1/45 p1^2");
  CHECK(j["terms"][0]["coefficient"] == "7/45");

  r = run({"--format", "json", "lpoly", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["c_k"] == 3);

  r = run({"lpoly", "--k", "0"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"lpoly"}).code == 2);
  CHECK(run({"lpoly", "--k", "two"}).code == 2);
  CHECK(run({"lpoly", "--k", "2", "--format", "xml"}).code == 2);
  CHECK(run({"decide"}).code == 2);
  CHECK(run({"decide", "--file", "x.json", "--builtin", "sphere:9"}).code == 2);
  CHECK(run({"divspec", "--basis", "2,a"}).code == 2);
  CHECK(run({"theorem-e", "--r", "3", "--g", "1", "--k", "2", "--orders", "1,1"}).code == 2);
}

TEST_CASE("decide on a descriptor file") {
  const auto path = write_temp("msets_sphere9.json", msets::to_json(msets::builtin("sphere", {9})).dump());
  auto r = run({"decide", "--file", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "FINITE (simply-connected criterion: no nonzero H^{4i}, 0<4i<9)\n");

  r = run({"decide", "--file", path.string(), "--format", "json"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "FINITE");
  CHECK(j["hypotheses"].size() == 4);
  std::filesystem::remove(path);

  r = run({"decide", "--builtin", "cpn:3"});
  CHECK(r.out == "INFINITE (simply-connected criterion: H^{4}(M;Q) != 0, 0<4<6)\n");
}

TEST_CASE("invalid descriptor files are domain errors") {
  auto d = msets::builtin("sphere", {7});
  d.homology.set(3, msets::FgAbelianGroup::free(1));
  const auto path = write_temp("msets_bad.json", msets::to_json(d).dump());
  auto r = run({"decide", "--file", path.string()});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("PoincareDuality(3)") != std::string::npos);

  r = run({"validate", "--file", path.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("WedgeModel(3)") != std::string::npos);
  std::filesystem::remove(path);

  const auto garbage = write_temp("msets_garbage.json", "{ not json");
  r = run({"structure", "--file", garbage.string()});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  std::filesystem::remove(garbage);

  CHECK(run({"validate", "--builtin", "mrg:3,6,1"}).code == 0);
}

TEST_CASE("theorem-c output") {
  auto r = run({"theorem-c", "--r", "3", "--g", "6", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 → Z → S → (Z/2)^3 → 0") != std::string::npos);
  CHECK(r.out.find("structure set infinite: true") != std::string::npos);
  CHECK(r.out.find("polarized manifold set size one: true") != std::string::npos);

  r = run({"theorem-c", "--r", "3", "--g", "6", "--k", "1", "--format", "json"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["structure_set_infinite"] == true);
  CHECK(j["polarized_manifold_set_size_one"] == true);
  CHECK(j["sub"]["free_rank"] == 1);
  CHECK(j["quotient"]["torsion"] == nlohmann::json({2, 2, 2}));
}

TEST_CASE("theorem-e output") {
  auto r = run({"theorem-e", "--r", "3", "--g", "6", "--k", "2", "--orders", "1,1,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("at most 7 elements") != std::string::npos);
  r = run({"theorem-e", "--r", "3", "--g", "6", "--k", "2"});
  CHECK(r.code == 1);
  r = run({"theorem-e", "--r", "3", "--g", "6", "--k", "1", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["bound"] == 1);
}

TEST_CASE("lgroup, normal and structure") {
  auto r = run({"lgroup", "--n", "6", "--r", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("L_6(Z[Z^3]) = Z^3 ⊕ Z/2\n", 0) == 0);

  r = run({"normal", "--builtin", "mrg:3,6,1", "--format", "json"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rational"][0]["degree"] == 2);
  CHECK(j["integral"]["summands"].size() == 3);

  r = run({"structure", "--builtin", "mrg:4,7,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 → Z^4 → S → (Z/2)^6 → 0") != std::string::npos);

  r = run({"structure", "--builtin", "mrg:3,6,1", "--format", "json"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["presentation"] == "0 → Z → S → (Z/2)^3 → 0");
}

TEST_CASE("divspec") {
  auto r = run({"divspec", "--basis", "2", "--offset", "1", "--count", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["index"] == 2);
  CHECK(j["spectrum"].size() == 3);
  CHECK(j["spectrum"][0]["witness"] == nlohmann::json({3}));

  r = run({"divspec", "--basis", "1,0", "--offset", "0,0"});
  CHECK(r.code == 1);
  r = run({"divspec", "--basis", "2,0;0,2", "--offset", "1"});
  CHECK(r.code == 2);
}

TEST_CASE("theorem-b subcommand") {
  auto r = run({"theorem-b", "--builtin", "mrg:3,6,1", "--condition", "parallelizable"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("INFINITE (stably parallelizable criterion", 0) == 0);

  r = run({"theorem-b", "--builtin", "wg:1,1", "--condition", "lattice", "--k", "1", "--lattice", "2,0;0,2",
           "--superlattice", "1,0;0,1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "INFINITE");
  CHECK(j["witness"]["value"] == 4);

  r = run({"theorem-b", "--builtin", "wg:1,1", "--condition", "lattice", "--k", "2", "--lattice", "1",
           "--superlattice", "1"});
  CHECK(r.code != 0);

  r = run({"theorem-b", "--builtin", "torus:6", "--condition", "pd"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("INCONCLUSIVE", 0) == 0);

  r = run({"theorem-b", "--builtin", "cpn:3", "--condition", "pd"});
  CHECK(r.code == 1);
  r = run({"theorem-b", "--builtin", "cpn:3", "--condition", "hyperbolic"});
  CHECK(r.code == 2);
}

TEST_CASE("text numbers appear in the JSON output") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"lpoly", "--k", "3", "--t", "8"}, {"theorem-e", "--r", "4", "--g", "7", "--k", "2", "--orders", "3,2,5"}}) {
    auto text = run(args);
    auto json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    auto js = run(json_args);
    REQUIRE(text.code == 0);
    REQUIRE(js.code == 0);
    std::istringstream words(text.out);
    std::string w;
    while (words >> w) {
      w.erase(std::remove_if(w.begin(), w.end(), [](char c) { return c == ';' || c == ')' || c == '('; }), w.end());
      if (!w.empty() && std::all_of(w.begin(), w.end(), ::isdigit)) {
        CAPTURE(w);
        CHECK(js.out.find(w) != std::string::npos);
      }
    }
  }
}
