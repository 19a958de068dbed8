#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "padicframe/cli.hpp"
#include "padicframe/wavelets.hpp"

using namespace padicframe;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "padicframe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = runCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path tempFile(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

/// Writes the binary Kozyrev generator `copies` times as a custom family file.
std::string writeRepeatedKozyrev(int copies, const std::string& name) {
  json generators = json::array();
  auto psi = kozyrevGenerators(Prime(2)).generators.front();
  for (int k = 0; k < copies; ++k) generators.push_back(toJson(psi));
  auto path = tempFile(name);
  std::ofstream(path) << generators.dump();
  return path.string();
}

}  // namespace

TEST_CASE("bounds of the binary Kozyrev family on its span") {
  auto r = run({"bounds", "--p", "2", "--system", "kozyrev", "--j", "-1..0", "--m", "1", "--space", "1,1", "--span-only"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["command"] == "bounds");
  CHECK(j["space"]["dims"] == 4);
  CHECK(j["familySize"] == 4);
  CHECK(std::abs(j["bounds"]["A"].get<double>() - 1) < 1e-9);
  CHECK(std::abs(j["bounds"]["B"].get<double>() - 1) < 1e-9);
  CHECK(j["tight"] == true);
  CHECK(j["frame"] == false);  // the constants are orthogonal to every wavelet
}

TEST_CASE("configuration errors exit with 1") {
  auto r = run({"bounds", "--p", "4"});
  CHECK(r.code == 1);
  CHECK(r.err.find("p must be prime") != std::string::npos);
  CHECK(r.out.empty());
  CHECK(run({"bounds", "--space", "5,3"}).code == 1);
  CHECK(run({"bounds", "--j", "2..1"}).code == 1);
  CHECK(run({"check", "nonsense"}).code == 1);
  CHECK(run({"bounds", "--system", "custom:/nonexistent/family.json"}).code == 1);
  CHECK(run({"bounds", "--unknown-flag"}).code == 1);
  CHECK(run({"check", "erasure", "--tol-inequality", "-1"}).code == 1);
}

TEST_CASE("help exits with 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("members outside the space exit with 2 and name the offenders") {
  auto r = run({"bounds", "--p", "2", "--j", "-2..0", "--m", "1", "--space", "1,1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("not contained in the test space: 0") != std::string::npos);

  auto projected = run({"bounds", "--p", "2", "--j", "-2..0", "--m", "1", "--space", "1,1", "--project"});
  REQUIRE(projected.code == 0);
  auto j = projected.report();
  CHECK(j["projected"] == true);
  CHECK(!j["projectedMembers"].empty());
}

TEST_CASE("a duplicated custom family doubles the bounds") {
  auto once = writeRepeatedKozyrev(1, "padicframe_once.json");
  auto twice = writeRepeatedKozyrev(2, "padicframe_twice.json");
  auto single = run({"bounds", "--system", "custom:" + once, "--j", "0..0", "--m", "0", "--space", "1,1", "--span-only"});
  auto doubled = run({"bounds", "--system", "custom:" + twice, "--j", "0..0", "--m", "0", "--space", "1,1", "--span-only"});
  REQUIRE(single.code == 0);
  REQUIRE(doubled.code == 0);
  auto a = single.report()["bounds"], b = doubled.report()["bounds"];
  CHECK(doubled.report()["familySize"] == 2);
  CHECK(std::abs(b["A"].get<double>() - 2 * a["A"].get<double>()) < 1e-12);
  CHECK(std::abs(b["B"].get<double>() - 2 * a["B"].get<double>()) < 1e-12);
  CHECK(std::abs(b["A"].get<double>() - 2) < 1e-12);
  std::filesystem::remove(once);
  std::filesystem::remove(twice);
}

TEST_CASE("family manifest") {
  auto r = run({"family", "--p", "3", "--system", "ks:2", "--j", "-1..1", "--m", "2", "--l", "2,5"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["kind"] == "ks:2");
  CHECK(j["count"] == 2 * 3 * 9);
  CHECK(j["entries"].size() == 54);
  CHECK(run({"family", "--p", "3", "--system", "ks:2", "--l", "7"}).code == 1);
}

TEST_CASE("dual writes the dual matrix as CSV") {
  auto path = tempFile("padicframe_dual.csv");
  auto r = run({"dual", "--span-only", "--out", path.string()});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(std::abs(j["dualBounds"]["A"].get<double>() - 1 / j["bounds"]["B"].get<double>()) < 1e-9);
  CHECK(std::abs(j["dualBounds"]["B"].get<double>() - 1 / j["bounds"]["A"].get<double>()) < 1e-9);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.front() == '"');
  }
  CHECK(rows == 4);
  std::filesystem::remove(path);
  CHECK(run({"dual"}).code == 2);  // not a frame for the whole space
}

TEST_CASE("reconstruct") {
  auto r = run({"reconstruct", "--p", "3", "--j", "-1..0", "--m", "1", "--space", "1,1", "--span-only", "--trials", "10"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["residualViaDual"].get<double>() <= 1e-8);
  CHECK(j["residualViaFrame"].get<double>() <= 1e-8);
}

TEST_CASE("theorem checks") {
  SUBCASE("perturbation on p = 3") {
    auto r = run({"check", "perturb", "--p", "3", "--trials", "50", "--seed", "7"});
    REQUIRE(r.code == 0);
    auto j = r.report();
    CHECK(j["check"] == "perturb");
    CHECK(j["seed"] == 7);
    CHECK(j["passed"] == 50);
    CHECK(j["failed"] == 0);
    CHECK(j["instances"].size() == 50);
  }
  SUBCASE("decomposition residuals") {
    auto r = run({"check", "decomposition", "--p", "2"});
    REQUIRE(r.code == 0);
    for (const auto& inst : r.report()["instances"]) {
      CHECK(inst["residualViaDual"].get<double>() <= 1e-8);
      CHECK(inst["residualViaFrame"].get<double>() <= 1e-8);
    }
  }
  SUBCASE("tight dual of the configured Kozyrev family") {
    auto r = run({"check", "tight-dual", "--span-only"});
    REQUIRE(r.code == 0);
    auto first = r.report()["instances"][0];
    CHECK(first["source"] == "configured");
    CHECK(first["tight"] == true);
    CHECK(std::abs(first["alpha"].get<double>() - 1) < 1e-9);
  }
  SUBCASE("zero slack makes rounding in the image check count as a violation") {
    auto r = run({"check", "image", "--trials", "8", "--tol-inequality", "0"});
    CHECK(r.code == 3);
    CHECK(r.report()["satisfied"] == false);
  }
}

TEST_CASE("output is deterministic for a fixed seed") {
  auto first = run({"check", "all", "--p", "3", "--trials", "10", "--seed", "42"});
  auto second = run({"check", "all", "--p", "3", "--trials", "10", "--seed", "42"});
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  auto other = run({"check", "all", "--p", "3", "--trials", "10", "--seed", "43"});
  CHECK(other.out != first.out);
}
