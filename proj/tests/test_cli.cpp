#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "loopfact/cli.hpp"
#include "loopfact/json_io.hpp"
#include "support.hpp"

using namespace loopfact;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "loopfact");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "loopfact_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("alcove-walk period lengths") {
  CHECK(parse(run({"alcove-walk", "--rank", "1"}).out)["period_length"] == 2);
  CHECK(parse(run({"alcove-walk", "--rank", "2", "--period", "hdelta"}).out)
            ["period_length"] == 4);
  CHECK(parse(run({"alcove-walk", "--rank", "2", "--period", "2hdelta"}).out)
            ["period_length"] == 8);
  const auto r = run({"alcove-walk", "--rank", "2", "--terms", "12"});
  const auto j = parse(r.out);
  CHECK(j["taus"].size() == 12);
  CHECK(j["taus"][2]["level"] == 2);
}

TEST_CASE("alcove-walk writes a sequence file") {
  const std::string path = (scratch() / "seq.txt").string();
  const auto r = run({"alcove-walk", "--rank", "2", "--terms", "8", "--out", path});
  REQUIRE(r.code == 0);
  const auto seq = sequence_from_text(read_text_file(path));
  CHECK(seq.size() == 8);
  CHECK(seq.is_periodic());
  CHECK(seq.period_length() == 4);
}

TEST_CASE("alcove-walk input errors") {
  CHECK(run({"alcove-walk", "--rank", "0"}).code == 2);
  CHECK(run({"alcove-walk"}).code == 2);
  CHECK(run({"alcove-walk", "--rank", "2", "--period", "1,x"}).code == 2);
  CHECK(run({"alcove-walk", "--rank", "2", "--period", "1"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("synthesize with no parameters gives the identity") {
  const auto p = write("empty.json", R"({"rank": 2, "etas": [], "chi": [], "zetas": []})");
  const auto r = run({"synthesize", p});
  REQUIRE(r.code == 0);
  const auto g = loop_from_json(parse(r.out)["loop"]);
  CHECK(coeff_distance(g, LaurentMatrix::identity(3)) == 0);
}

TEST_CASE("synthesize one SU(2) factor") {
  const auto p = write("one.json", R"({"rank": 1, "zetas": [[0.5, 0]]})");
  const auto r = run({"synthesize", p});
  REQUIRE(r.code == 0);
  const auto g = loop_from_json(parse(r.out)["loop"]);
  const double a = a_of(0.5);
  // a [[1, zeta z^-1], [-conj(zeta) z, 1]]
  CHECK(std::abs(g.coefficient(0)(0, 0) - a) < 1e-15);
  CHECK(std::abs(g.coefficient(0)(1, 1) - a) < 1e-15);
  CHECK(std::abs(g.coefficient(-1)(0, 1) - 0.5 * a) < 1e-15);
  CHECK(std::abs(g.coefficient(1)(1, 0) + 0.5 * a) < 1e-15);
  CHECK(g.min_degree() == -1);
  CHECK(g.max_degree() == 1);
}

TEST_CASE("synthesize reports the product formula") {
  const auto p = write(
      "four.json",
      R"({"rank": 2, "zetas": [[0.3, 0], [0.2, 0], [0.1, 0], [0.05, 0]]})");
  const auto j = parse(run({"synthesize", p}).out);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(j["factorization"]["a"][i].get<double>() -
                   j["a2_product"][i].get<double>()) < 1e-11);
}

TEST_CASE("factor and peel a synthesized loop") {
  const auto p = write("three.json",
                       R"({"rank": 2, "zetas": [[0.3, 0.1], [-0.2, 0], [0.1, 0.05]]})");
  const std::string loop = (scratch() / "three_loop.json").string();
  const auto syn = parse(run({"synthesize", p}).out);
  write("three_loop.json", syn["loop"].dump());
  const auto f = run({"factor", loop});
  REQUIRE(f.code == 0);
  CHECK(parse(f.out)["residual"].get<double>() < 1e-10);
  const auto pl = run({"peel", loop, "--terms", "3"});
  REQUIRE(pl.code == 0);
  const auto z = parse(pl.out)["zetas"];
  CHECK(std::abs(z[0][0].get<double>() - 0.3) < 1e-9);
  CHECK(std::abs(z[2][1].get<double>() - 0.05) < 1e-9);
  CHECK(run({"peel", loop, "--variant", "general"}).code == 2);
}

TEST_CASE("decompose a composed loop") {
  const auto p = write(
      "smooth.json",
      R"({"rank": 1, "etas": [[0.2, 0]], "chi": [{"k": 1, "coeffs": [[0.05, 0.02], [-0.05, -0.02]]}], "zetas": [[0.3, 0]]})");
  const auto syn = parse(run({"synthesize", p}).out);
  const auto loop = write("smooth_loop.json", syn["loop"].dump());
  const auto r = run({"decompose", loop});
  REQUIRE(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["reconstruction_residual"].get<double>() < 1e-7);
  CHECK(std::abs(j["params"]["zetas"][0][0].get<double>() - 0.3) < 1e-6);
}

TEST_CASE("verify the identity") {
  const auto loop = write("id.json", loop_to_json(LaurentMatrix::identity(2)).dump());
  const auto r = run({"verify", loop});
  REQUIRE(r.code == 0);
  const auto j = parse(r.out);
  for (const auto& c : j["checks"]) {
    CHECK(c["status"] == "pass");
    CHECK(c["residual"].get<double>() <= 1e-12);
  }
}

TEST_CASE("verify parameter files") {
  const auto p = write("three_su2.json",
                       R"({"rank": 1, "zetas": [[0.5, 0], [0.25, 0.1], [0.1, 0]]})");
  const auto r = run({"verify", p, "--checks", "unitarity,determinant"});
  CHECK(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["checks"][1]["residual"].get<double>() <= 1e-5);
}

TEST_CASE("verify a corrupted loop") {
  const auto s = testing_support::canonical(1, 4);
  auto g = synthesize({s, {0.5, 0.2}}).loop;
  Eigen::MatrixXcd bump = Eigen::MatrixXcd::Zero(2, 2);
  bump(0, 1) = 1e-3;
  g.add_to_coefficient(3, bump);
  const auto loop = write("bad.json", loop_to_json(g).dump());
  const auto r = run({"verify", loop, "--checks", "unitarity"});
  CHECK(r.code == 1);
  CHECK(parse(r.out)["checks"][0]["status"] == "fail");
}

TEST_CASE("input errors exit with code 2") {
  const auto junk = write("junk.json", "{ not json");
  CHECK(run({"verify", junk}).code == 2);
  CHECK(run({"verify", (scratch() / "missing.json").string()}).code == 2);
  const auto wrong = write("wrong.json", R"({"n": 2, "terms": [{"deg": 0}]})");
  CHECK(run({"factor", wrong}).code == 2);
  const auto loop = write("id2.json", loop_to_json(LaurentMatrix::identity(2)).dump());
  CHECK(run({"verify", loop, "--checks", "bogus"}).code == 2);
  CHECK(run({"factor", loop, "--format", "xml"}).code == 2);
}

TEST_CASE("outputs are deterministic") {
  const auto p = write("det.json", R"({"rank": 2, "zetas": [[0.3, 0.1], [0.2, -0.1]]})");
  const auto a = run({"synthesize", p});
  const auto b = run({"synthesize", p});
  CHECK(a.out == b.out);
  CHECK(a.out.find("runtime_ms") == std::string::npos);
  CHECK(run({"synthesize", p, "--timing"}).out.find("runtime_ms") !=
        std::string::npos);
}

TEST_CASE("loop JSON round-trips binary64 exactly") {
  std::mt19937_64 rng(61);
  LaurentMatrix g(3);
  for (int d = -2; d <= 2; ++d)
    g.add_to_coefficient(d, testing_support::random_matrix(rng, 3) / 3.0);
  const auto back = loop_from_json(nlohmann::json::parse(loop_to_json(g).dump()));
  CHECK(coeff_distance(back, g) == 0);
  SmoothFactorizationData d;
  d.rank = 2;
  d.zetas = testing_support::random_params(rng, 3, 0.5);
  d.etas = testing_support::random_params(rng, 2, 0.5);
  d.chi = testing_support::random_chi(rng, 3, 2, 0.1);
  const auto e = params_from_json(nlohmann::json::parse(params_to_json(d).dump()));
  CHECK(testing_support::max_diff(e.zetas, d.zetas) == 0);
  CHECK(testing_support::max_diff(e.etas, d.etas) == 0);
  CHECK(e.chi.size() == 2);
}

TEST_CASE("table output mirrors the report") {
  const auto loop = write("id3.json", loop_to_json(LaurentMatrix::identity(2)).dump());
  const auto r = run({"verify", loop, "--format", "table", "--checks", "unitarity"});
  CHECK(r.code == 0);
  CHECK(r.out.find("unitarity") != std::string::npos);
  CHECK(r.out.find("pass") != std::string::npos);
}
