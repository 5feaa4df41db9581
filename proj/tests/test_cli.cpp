#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shepwm/cli.hpp"
#include "shepwm/dclink.hpp"
#include "shepwm/error.hpp"

using namespace shepwm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("shepwm_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::vector<std::string> kFast{"--iterations", "100", "--restarts", "1", "--swarm", "30"};

std::vector<std::string> with_fast(std::vector<std::string> args) {
  args.insert(args.end(), kFast.begin(), kFast.end());
  return args;
}

}  // namespace

TEST_CASE("grid parsing") {
  const std::vector<double> g = cli::parse_grid("0.1:1.0:0.1");
  REQUIRE(g.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(g[static_cast<std::size_t>(i)] == (i + 1) / 10.0);
  CHECK(cli::parse_grid("0.5") == std::vector<double>{0.5});
  CHECK(cli::parse_grid("0.2,0.4") == std::vector<double>{0.2, 0.4});
  CHECK(cli::parse_grid("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), Error);
  CHECK_THROWS_AS(cli::parse_grid("1:0:0.1"), Error);
  CHECK_THROWS_AS(cli::parse_grid("0:1"), Error);
  CHECK_THROWS_AS(cli::parse_grid("0.1,abc"), Error);
  CHECK_THROWS_AS(cli::parse_real_list("1.5e"), Error);
  CHECK_THROWS_AS(cli::parse_int_list("3,5.0"), Error);
}

TEST_CASE("solve prints deterministic JSON") {
  const Run a = run(with_fast({"solve", "--pu", "1.0", "--seed", "42"}));
  const Run b = run(with_fast({"solve", "--pu", "1.0", "--seed", "42"}));
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("angles").size() == 6);
  CHECK(j.at("residuals_pu").size() == 5);
  CHECK(j.at("angle_unit") == "rad");
  CHECK(j.at("target_m") == 1.0);
}

TEST_CASE("usage errors exit with status 2 and name the flag") {
  const Run missing = run({"solve"});
  CHECK(missing.status == 2);
  const Run bad_number = run({"solve", "--pu", "0.5x"});
  CHECK(bad_number.status == 2);
  CHECK(bad_number.err.find("--pu") != std::string::npos);
  const Run bad_list = run({"solve", "--pu", "0.5", "--eliminate", "3,five"});
  CHECK(bad_list.status == 2);
  CHECK(bad_list.err.find("--eliminate") != std::string::npos);
  const Run bad_grid = run({"sweep", "--pu-grid", "0.1:x:0.1"});
  CHECK(bad_grid.status == 2);
  CHECK(bad_grid.err.find("--pu-grid") != std::string::npos);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({}).status == 2);
}

TEST_CASE("infeasible base point exits with status 1") {
  const Run r = run(with_fast({"table", "--pu-grid", "0.5,1.0", "--threshold", "1e-12"}));
  CHECK(r.status == 1);
  CHECK(r.err.find("InfeasibleBasePoint") != std::string::npos);
  const Run ok = run(with_fast({"table", "--pu-grid", "0.5,1.0", "--threshold", "1e-12", "--allow-infeasible-base"}));
  CHECK(ok.status == 0);
}

TEST_CASE("table output round-trips and has a manifest sidecar") {
  const fs::path dir = scratch_dir("table");
  const std::string out = (dir / "table.csv").string();
  const Run r = run(with_fast({"table", "--pu-grid", "0.1:1.0:0.1", "--allow-infeasible-base", "--out", out}));
  REQUIRE(r.status == 0);
  REQUIRE(fs::exists(out + ".manifest.json"));
  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest.at("command") == "table");
  CHECK(manifest.at("seed") == 42);
  CHECK(manifest.at("config").at("vdc") == "200");
  CHECK(manifest.contains("timestamp"));
  CHECK(manifest.contains("tool_version"));

  std::ifstream f(out);
  const LookupTable t = read_lookup_csv(f, TableLayout{200.0, 2, 49});
  CHECK(t.rows.size() == 10);
  std::ostringstream again;
  write_lookup_csv(again, t);
  CHECK(again.str() == slurp(out));

  const std::string json_out = (dir / "table.json").string();
  REQUIRE(run(with_fast({"table", "--pu-grid", "0.1:1.0:0.1", "--allow-infeasible-base", "--format", "json",
                         "--out", json_out}))
              .status == 0);
  CHECK(lookup_from_json(slurp(json_out)) == t);
}

TEST_CASE("replaying a manifest reproduces the output") {
  const fs::path dir = scratch_dir("replay");
  const std::string out = (dir / "sweep.csv").string();
  REQUIRE(run(with_fast({"sweep", "--pu-grid", "0.2:0.8:0.2", "--out", out, "--threads", "4"})).status == 0);
  const std::string first = slurp(out);
  fs::remove(out);
  REQUIRE(run({"replay", out + ".manifest.json"}).status == 0);
  CHECK(slurp(out) == first);
  CHECK(first.rfind("target_m,feasible,cost,fundamental_pu,thd_pct,residual_3_pu", 0) == 0);
}

TEST_CASE("compare marks the unit row as undefined improvement") {
  const Run r = run(with_fast({"compare", "--pu-grid", "0.1:1.0:0.1", "--allow-infeasible-base"}));
  REQUIRE(r.status == 0);
  std::istringstream is(r.out);
  std::string line, last;
  int rows = -1;
  while (std::getline(is, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 10);
  CHECK(last.rfind("1,1,", 0) == 0);
  CHECK(last.find(",—,") != std::string::npos);
}

TEST_CASE("analyze square wave") {
  const fs::path dir = scratch_dir("analyze");
  const std::string wf = (dir / "wf.csv").string();
  const std::string sp = (dir / "sp.csv").string();
  const Run r = run({"analyze", "--angles", "0", "--signs", "1", "--vdc", "200", "--max-order", "49",
                     "--samples", "1024", "--emit-waveform", wf, "--emit-spectrum", sp});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("thd").get<double>() == doctest::Approx(0.472971333934630858894).epsilon(1e-12));
  CHECK(slurp(wf).rfind("phase_rad,voltage_v\n0,200\n", 0) == 0);
  CHECK(slurp(sp).rfind("order,magnitude_v,magnitude_pct_of_fundamental\n", 0) == 0);

  const Run dft = run({"analyze", "--angles", "0", "--vdc", "200", "--spectrum-source", "dft", "--samples", "65536"});
  REQUIRE(dft.status == 0);
  CHECK(nlohmann::json::parse(dft.out).at("thd").get<double>() == doctest::Approx(0.4729713).epsilon(1e-3));

  const Run deg = run({"analyze", "--angles", "30", "--degrees"});
  REQUIRE(deg.status == 0);
  CHECK(nlohmann::json::parse(deg.out).at("fundamental_v").get<double>() ==
        doctest::Approx(4.0 * 200.0 / std::numbers::pi * std::cos(std::numbers::pi / 6)).epsilon(1e-12));

  CHECK(run({"analyze", "--angles", "0.3,0.2", "--signs", "1,1"}).status == 2);
  CHECK(run({"analyze", "--angles", "0.3", "--samples", "6", "--spectrum-source", "dft"}).status == 2);
}

#ifdef SHEPWM_CLI_PATH
TEST_CASE("installed binary runs") {
  const fs::path dir = scratch_dir("binary");
  const std::string cmd = std::string(SHEPWM_CLI_PATH) + " analyze --angles 0 > " + (dir / "o.json").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "o.json")).contains("thd"));
}
#endif
