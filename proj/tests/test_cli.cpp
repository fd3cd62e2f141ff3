// Drives the wflo executable end to end.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "wflo/harness/io.hpp"

namespace fs = std::filesystem;
using wflo::harness::read_file;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "wflo_test_cli";

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + WFLO_CLI_PATH + "\" " + args + " > \"" +
                          (kRoot / "stdout.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out(const std::string& sub) { return (kRoot / sub).string(); }

struct Scratch {
  Scratch() {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
  }
  ~Scratch() { fs::remove_all(kRoot); }
};

}  // namespace

TEST_CASE("enumerate-optimal writes the 79 layouts") {
  Scratch s;
  REQUIRE(run_cli("enumerate-optimal --l-grid 4 --out " + out("e")) == 0);
  const auto doc = nlohmann::json::parse(read_file(kRoot / "e" / "optimal.json"));
  CHECK(doc.at("count") == 79);
  CHECK(doc.at("layouts").size() == 79);
  CHECK(doc.at("power_kW").get<double>() == doctest::Approx(2304.0));
  CHECK(fs::exists(kRoot / "e" / "optimal.csv"));
}

TEST_CASE("solve is reproducible") {
  Scratch s;
  REQUIRE(run_cli("solve --method sa --seed 7 --out " + out("a")) == 0);
  REQUIRE(run_cli("solve --method sa --seed 7 --out " + out("b")) == 0);
  for (const char* f : {"records.json", "records.csv"}) {
    CHECK(read_file(kRoot / "a" / f) == read_file(kRoot / "b" / f));
  }
  const auto doc = nlohmann::json::parse(read_file(kRoot / "a" / "records.json"));
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].at("method") == "sa");
}

TEST_CASE("farm writes one record per run") {
  Scratch s;
  REQUIRE(run_cli("farm --method vqe-cobyla --alpha 0.25 --runs 36 --l-grid 2 --m 2 --out " + out("f")) == 0);
  const auto doc = nlohmann::json::parse(read_file(kRoot / "f" / "records.json"));
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 36);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    CHECK(doc[i].at("run_index") == i);
    CHECK(doc[i].at("alpha") == 0.25);
  }
  CHECK(fs::exists(kRoot / "f" / "summary.json"));
}

TEST_CASE("other subcommands") {
  Scratch s;
  CHECK(run_cli("build-qubo --l-grid 3 --out " + out("q")) == 0);
  const auto q = nlohmann::json::parse(read_file(kRoot / "q" / "qubo.json"));
  CHECK(q.at("q") == 9);

  CHECK(run_cli("heatmap --l-grid 4 --out " + out("h")) == 0);
  const auto h = nlohmann::json::parse(read_file(kRoot / "h" / "heatmap.json"));
  CHECK(h.at("total").get<double>() == doctest::Approx(4.0));

  CHECK(run_cli("dea-check --qubits 3 --out " + out("d")) == 0);
  CHECK(fs::exists(kRoot / "d" / "dea.json"));

  CHECK(run_cli(std::string("stats --input \"") + WFLO_FIXTURE_DIR + "/cobyla_cvar025_36.txt\" --optimal 2304 --out " +
             out("s")) == 0);
  const auto st = nlohmann::json::parse(read_file(kRoot / "s" / "stats.json"));
  CHECK(st.dump().find("2193.1") != std::string::npos);

  CHECK(run_cli("bench --method exhaustive --l-grids 2,3 --repeats 1 --out " + out("b")) == 0);
  const auto b = nlohmann::json::parse(read_file(kRoot / "b" / "scaling.json"));
  CHECK(b.at("points").size() == 2);
}

TEST_CASE("bad input exits nonzero with a diagnostic") {
  Scratch s;
  CHECK(run_cli("launch") != 0);
  CHECK(read_file(kRoot / "stdout.txt").find("Usage") != std::string::npos);
  CHECK(run_cli("solve --bogus 1") != 0);
  CHECK(run_cli("solve --method annealing") != 0);
  CHECK(run_cli("solve --alpha 2 --out " + out("x")) != 0);
  CHECK(read_file(kRoot / "stdout.txt").find("alpha") != std::string::npos);
  CHECK(run_cli("") != 0);
}
