#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/io.hpp"
#include "rainbow/verify.hpp"

using namespace rainbow;
namespace fs = std::filesystem;

namespace {

std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rainbow-unit";
  fs::create_directories(dir);
  return (dir / name).string();
}

int run(const std::string& args) {
  const std::string cmd = std::string(RAINBOW_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("bench rows and csv shape") {
  BenchSpec spec;
  spec.kinds = {"latin"};
  spec.grid = {32, 16};
  spec.seeds = {1, 2};
  spec.cfg.restarts = 2;
  const auto rows = bench_scaling(spec);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n == 16);
  CHECK(rows[3].n == 32);
  for (const BenchRow& r : rows) {
    CHECK(r.within_bound == (r.uncovered <= r.bound_value));
    CHECK(r.wall_ms == 0);
  }
  const std::string csv = bench_csv(rows);
  CHECK(csv.rfind("n,kind,seed,uncovered,bound_value,within_bound,wall_ms,stage_sizes\n", 0) == 0);
  CHECK(csv == bench_csv(bench_scaling(spec)));
  CHECK(bench_csv({}) == "n,kind,seed,uncovered,bound_value,within_bound,wall_ms,stage_sizes\n");
}

TEST_CASE("Steiner bench stays within the bound") {
  BenchSpec spec;
  spec.kinds = {"steiner"};
  spec.grid = {9, 27, 81, 243};
  spec.seeds = {1};
  const auto rows = bench_scaling(spec);
  for (const BenchRow& r : rows) CHECK(r.within_bound);
  const std::string summary = bench_summary(rows);
  CHECK(summary.find("aks_reference") != std::string::npos);
}

TEST_CASE("aks reference") { CHECK(aks_reference(100) == doctest::Approx(0.5 * 10 * std::pow(std::log(100.0), 1.5))); }

TEST_CASE("verify catches duplicated colours and overlapping triples") {
  const ColoredBipartiteGraph g = latin_to_graph(cayley_cyclic(5));
  const VerifyOutcome bad = verify_edges(g, {{0, 0, 0}, {1, 4, 0}});
  CHECK(!bad.ok);
  CHECK(bad.diagnostic.dump().find("repeated-colour") != std::string::npos);
  const SteinerTripleSystem s = bose_sts(9);
  const auto& t = s.triples();
  Triple clash{};
  for (const Triple& u : t)
    if (u != t[0] && (u[0] == t[0][0] || u[1] == t[0][0] || u[2] == t[0][0])) clash = u;
  CHECK(!verify_triples(9, t, {t[0], clash}).ok);
  CHECK(!verify_triples(9, t, {{0, 1, 2 == s.third(0, 1) ? 3 : 2}}).ok);
  CHECK(verify_triples(9, t, {t[0]}).ok);
}

TEST_CASE("cli exit codes") {
  const std::string inst = scratch("z5.json"), rep = scratch("z5-report.json"), bad = scratch("bad.json");
  CHECK(run("gen --kind cyclic --n 5 --out " + inst) == 0);
  CHECK(run("solve --kind latin --in " + inst + " --report " + rep) == 0);
  CHECK(run("verify --kind latin --instance " + inst + " --matching " + rep) == 0);
  io::write_file(bad, R"([{"x":0,"y":0,"c":0},{"x":1,"y":4,"c":0}])");
  CHECK(run("verify --kind latin --instance " + inst + " --matching " + bad) == 1);
  CHECK(run("verify --kind latin --instance " + scratch("missing.json") + " --matching " + bad) == 2);
  CHECK(run("solve --no-such-flag") == 2);
  CHECK(run("gen --kind bose --n 7") == 1);
  const std::string big = scratch("big.json");
  CHECK(run("gen --kind random-latin --n 12 --seed 1 --out " + big) == 0);
  CHECK(run("oracle --kind latin --in " + big) == 3);

  const std::string sts = scratch("sts9.json"), overlap = scratch("overlap.json");
  CHECK(run("gen --kind bose --n 9 --out " + sts) == 0);
  const SteinerTripleSystem s = io::sts_from_json(io::read_json(sts));
  const Triple a = s.triples()[0];
  Triple b{};
  for (const Triple& u : s.triples())
    if (u != a && (u[0] == a[0] || u[1] == a[0] || u[2] == a[0])) b = u;
  io::write_file(overlap, io::triples_to_json({a, b}).dump());
  CHECK(run("verify --kind steiner --instance " + sts + " --matching " + overlap) == 1);

  const std::string cfg = scratch("solve.cfg"), cfg_rep = scratch("cfg-report.json");
  io::write_file(cfg, "# restarts and seed\nrestarts = 2\nseed = 11\n");
  CHECK(run("solve --kind latin --in " + inst + " --cfg " + cfg + " --report " + cfg_rep) == 0);
  const auto j = io::read_json(cfg_rep);
  CHECK(j["seed"] == 11);
  CHECK(run("solve --kind latin --in " + inst + " --cfg " + cfg + " --seed 4 --report " + cfg_rep) == 0);
  CHECK(io::read_json(cfg_rep)["seed"] == 4);
  io::write_file(cfg, "bogus = 1\n");
  CHECK(run("solve --kind latin --in " + inst + " --cfg " + cfg) == 2);
}

TEST_CASE("bench csv from the cli is byte-stable") {
  const std::string a = scratch("bench-a.csv"), b = scratch("bench-b.csv");
  const std::string args = "bench --kinds latin,steiner --grid 9,15 --seeds 1,2 --restarts 2 --summary /dev/null --out ";
  CHECK(run(args + a) == 0);
  CHECK(run(args + b) == 0);
  CHECK(io::read_file(a) == io::read_file(b));
}
