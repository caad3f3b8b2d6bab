#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "frob/cli.hpp"
#include "frob/json_io.hpp"

using namespace frob;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json call_json(const std::vector<std::string>& args) {
  const auto r = call(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

Json prime_rows(const std::vector<std::vector<int>>& rows) {
  Json j = Json::array();
  for (const auto& row : rows) {
    Json jr = Json::array();
    for (int x : row) jr.push_back(Json::array({x}));
    j.push_back(jr);
  }
  return j;
}

}  // namespace

TEST_CASE("fpt report", "[cli]") {
  const auto j = call_json({"fpt", "--field", "2^1", "--emax", "3", "x0*x1"});
  CHECK(j["schema_version"] == io::kSchemaVersion);
  CHECK(j["lo"] == "7/8");
  CHECK(j["hi"] == "1/1");
  CHECK(j["levels"].size() == 3);
  const auto text = call({"fpt", "--field", "2^1", "--emax", "3", "x0*x1", "--text"});
  CHECK(text.out.find("interval [7/8, 1]") != std::string::npos);
}

TEST_CASE("detect the cusp", "[cli]") {
  const auto j = call_json({"detect", "--field", "2^1", "x0^3 + x1^2*x2"});
  CHECK(j["frobenius"] == true);
  CHECK(j["q"] == 2);
  CHECK(j["matrix"]["rows"] == prime_rows({{1, 0, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(call_json({"detect", "--field", "2^1", "x0^4 + x1^4"})["frobenius"] == false);
}

TEST_CASE("invariants of the cusp", "[cli]") {
  const auto j = call_json({"invariants", "--field", "2^1", "x0^3 + x1^2*x2"});
  CHECK(j["rank"] == 2);
  CHECK(j["embedding_dimension"] == 3);
  CHECK(j["singular_locus_dimension"] == 1);
  CHECK(j["hessian_zero"] == true);
}

TEST_CASE("classification table and enumeration", "[cli]") {
  const auto j = call_json({"classify", "--n", "4", "--q", "2"});
  CHECK(j["count"] == 5);
  const auto e = call_json({"enumerate", "--n", "4"});
  CHECK(e["count"] == 5);
  CHECK(e["fibonacci_bound"] == 5);
  CHECK(call({"classify", "--n", "3", "--q", "6"}).code == cli::kMalformed);
}

TEST_CASE("certificates from sparsify and diagonalize verify", "[cli]") {
  const std::vector<std::vector<std::string>> jobs{
      {"sparsify", "--field", "2^2", "x0^3 + x1^3 + x0*x1^2"},
      {"sparsify", "--field", "2^1", "x0^3 + x1^2*x2 + x0*x2^2"},
      {"sparsify", "--field", "3^1", "x0^4 + x0^3*x1 + x2^3*x1"},
      {"diagonalize", "--field", "2^1", "x0^3 + x1^3 + x0^2*x1"},
      {"diagonalize", "--field", "2^1", "x0^2*x1 + x0*x1^2 + x2^3"},
  };
  for (const auto& job : jobs) {
    const auto r = call(job);
    REQUIRE(r.code == 0);
    const auto v = call_json({"verify", r.out});
    CHECK(v["ok"] == true);

    Json tampered = Json::parse(r.out);
    auto& cell = tampered["sparse_matrix"][0][0];
    cell[0] = cell[0].get<int>() == 0 ? 1 : 0;
    const auto bad = call({"verify", tampered.dump()});
    CHECK(bad.code == cli::kMalformed);
    CHECK(Json::parse(bad.out)["ok"] == false);
  }
}

TEST_CASE("matrix JSON input", "[cli]") {
  Json form{{"p", 2}, {"k", 1}, {"e", 1}, {"n", 3}, {"rows", prime_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})}};
  const auto g = call_json({"gauss", form.dump()});
  CHECK(g["insep_degree"] == 4);
  CHECK(g["dual_matrix"] == form["rows"]);
  const auto s = call_json({"section", form.dump(), "--line", "[1,1,0]"});
  CHECK(s["frobenius"] == true);
  CHECK(call({"invariants", "{\"p\":2}"}).code == cli::kMalformed);
  CHECK(call({"invariants", "{\"p\":2,"}).code == cli::kMalformed);
}

TEST_CASE("star through two coordinate lines", "[cli]") {
  const auto j = call_json({"star", "--field", "3^1", "x0^3*x1 - x0*x1^3 + x2^3*x3", "--plane",
                            "[[1,0,0],[0,1,0],[0,0,0],[0,0,1]]"});
  CHECK(j["verdict"] == "PerfectStar");
  CHECK(j["factors"].size() == 4);
  CHECK(j["perfect_star_check"] == true);
  const auto d = call_json({"star", "--field", "3^1", "x0^3*x1 + x2^3*x3", "--plane", "[[1,0,0],[0,1,0],[0,0,0],[0,0,1]]"});
  CHECK(d["verdict"] == "QFoldLinePlusLine");
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(call({"fpt", "--field", "2^1", "x0^"}).code == cli::kMalformed);
  CHECK(call({"fpt", "x0*x1"}).code == cli::kMalformed);
  CHECK(call({"nonsense"}).code == cli::kMalformed);
  CHECK(call({}).code == cli::kMalformed);
  CHECK(call({"--help"}).code == cli::kOk);
  CHECK(call({"invariants", "--field", "7^1", "x0^3 + x1^3"}).code == cli::kMalformed);
  CHECK(call({"enumerate", "--n", "30"}).code == cli::kCapacity);
  CHECK(call({"fpt", "--field", "2^1", "--emax", "6", "--budget", "10", "x0^3 + x1^3 + x2^3"}).code == cli::kCapacity);
  ::setenv(cli::kBudgetEnv, "10", 1);
  CHECK(call({"fpt", "--field", "2^1", "--emax", "6", "x0^3 + x1^3 + x2^3"}).code == cli::kCapacity);
  ::unsetenv(cli::kBudgetEnv);
}

TEST_CASE("identical arguments give identical reports", "[cli]") {
  const std::vector<std::vector<std::string>> jobs{
      {"fpt", "--field", "3^1", "--emax", "2", "x0^4 + x1^3*x2", "--seed", "7"},
      {"sparsify", "--field", "2^2", "x0^3 + x1^3 + x2^3 + x0*x1^2"},
      {"classify", "--n", "5", "--q", "3", "--text"},
      {"section", "--field", "2^2", "x0^3 + x1^3 + x2^3"},
  };
  for (const auto& job : jobs) {
    const auto a = call(job);
    const auto b = call(job);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
