#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "process.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kExe = FRACDYN_EXE;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fracdyn_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::size_t file_count(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) ++n;
  return n;
}

const char* kRelaxation = R"({"scenario": "relaxation", "output": "relax", "dt": 0.01, "t_end": 1,
  "B": 1, "order": {"type": "constant", "alpha": 0.6}})";

}  // namespace

TEST_CASE("version and usage") {
  const auto v = proc::run(kExe + " --version");
  CHECK(v.status == 0);
  CHECK(v.output.find(FRACDYN_VERSION_STRING) != std::string::npos);
  CHECK(proc::run(kExe).status == 1);
  CHECK(proc::run(kExe + " preset nonsense").status == 1);
}

TEST_CASE("invalid config exits 1 and writes nothing") {
  const auto dir = scratch("invalid");
  write(dir / "bad.json", R"({"scenario": "relaxation", "output": "bad", "dt": -0.01, "t_end": 1,
    "B": 1, "order": {"type": "constant", "alpha": 0.5}})");
  const auto r = proc::run(kExe + " run " + proc::quote(dir / "bad.json") + " --out " + proc::quote(dir / "out"));
  CHECK(r.status == 1);
  CHECK(r.output.find("config.dt") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out"));
  CHECK(file_count(dir) == 1);
}

TEST_CASE("numerical failure exits 2 and writes nothing") {
  const auto dir = scratch("numerical");
  write(dir / "grow.json", R"({"scenario": "relaxation", "output": "grow", "dt": 0.1, "t_end": 1,
    "lin_coeff": 100, "order": {"type": "constant", "alpha": 0.5}})");
  const auto r = proc::run(kExe + " run " + proc::quote(dir / "grow.json") + " --out " + proc::quote(dir / "out"));
  CHECK(r.status == 2);
  CHECK(file_count(dir) == 1);
}

TEST_CASE("run writes the scenario outputs and manifest") {
  const auto dir = scratch("run");
  write(dir / "relax.json", kRelaxation);
  const auto r = proc::run(kExe + " run " + proc::quote(dir / "relax.json") + " --out " + proc::quote(dir));
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "relax_relax.csv"));
  CHECK(fs::exists(dir / "relax_order.csv"));
  const std::string manifest = proc::slurp(dir / "relax_manifest.txt");
  CHECK(manifest.find("scenario: relaxation") != std::string::npos);
  CHECK(proc::slurp(dir / "relax_relax.csv").rfind("t,x\n0,1\n", 0) == 0);
}

TEST_CASE("preset runs are byte-identical") {
  for (const std::string name : {"case1", "case2", "fractor-demo"}) {
    const auto a = scratch(name + "_a");
    const auto b = scratch(name + "_b");
    REQUIRE(proc::run(kExe + " preset " + name + " --out " + proc::quote(a)).status == 0);
    REQUIRE(proc::run(kExe + " preset " + name + " --out " + proc::quote(b)).status == 0);
    std::size_t n = 0;
    CHECK(proc::same_csvs(a, b, &n));
    CHECK(n >= 2);
  }
  const auto c2 = scratch("case2_a");
  REQUIRE(proc::run(kExe + " preset case2 --out " + proc::quote(c2)).status == 0);
  CHECK(fs::exists(c2 / "case2_temp.csv"));
  CHECK(fs::exists(c2 / "case2_order.csv"));
  CHECK(fs::exists(c2 / "case2_u_at_x0.5.csv"));
}

TEST_CASE("batch mode matches sequential runs and reports the worst status") {
  const auto dir = scratch("batch");
  write(dir / "a.json", kRelaxation);
  write(dir / "b.json", R"({"scenario": "temperature", "output": "temp", "dt": 0.01, "t_end": 2, "beta": 0.9})");
  write(dir / "c.json", R"({"scenario": "derivative-check", "output": "deriv", "dt": 0.001,
    "polynomial": [0, 1, 1], "alphas": [0.3, 0.5, 0.7], "t": 1})");
  const std::string files = proc::quote(dir / "a.json") + " " + proc::quote(dir / "b.json") + " " + proc::quote(dir / "c.json");
  const auto seq = proc::run(kExe + " run " + files + " --out " + proc::quote(dir / "seq"));
  const auto par = proc::run(kExe + " run " + files + " --jobs 3 --out " + proc::quote(dir / "par"));
  CHECK(seq.status == 0);
  CHECK(par.status == 0);
  CHECK(proc::same_csvs(dir / "seq", dir / "par"));
  // Log lines follow the input order.
  CHECK(par.output.find("relax_relax.csv") < par.output.find("temp_temp.csv"));
  CHECK(par.output.find("temp_temp.csv") < par.output.find("deriv_derivative.csv"));

  write(dir / "bad.json", R"({"scenario": "relaxation"})");
  const auto mixed = proc::run(kExe + " run " + files + " " + proc::quote(dir / "bad.json") + " --jobs 2 --out " + proc::quote(dir / "mixed"));
  CHECK(mixed.status == 1);
  CHECK(fs::exists(dir / "mixed" / "relax_relax.csv"));
}

TEST_CASE("check subcommand passes") {
  const auto r = proc::run(kExe + " check");
  CHECK(r.status == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
  CHECK(r.output.find("PASS") != std::string::npos);
}
