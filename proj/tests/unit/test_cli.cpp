#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "cli/cloud_io.hpp"
#include "maxsliced/errors.hpp"

using namespace maxsliced;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("maxsliced_cli_" + std::to_string(std::hash<std::string>{}(
                                   doctest::getContextOptions()->currentTest->m_name)));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = (path / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cloud parsing") {
  const auto a = cli::parse_cloud("0,0\n3,4\n");
  CHECK(a == PointCloud({{0.0, 0.0}, {3.0, 4.0}}));
  const auto b = cli::parse_cloud("1\n2\n3");
  CHECK(b.size() == 3);
  CHECK(b.dim() == 1);
  CHECK(cli::parse_cloud(" 1.5 , -2e3\r\n\n") == PointCloud({{1.5, -2000.0}}));
}

TEST_CASE("cloud parse errors name the line") {
  auto message = [](std::string_view text) {
    try {
      (void)cli::parse_cloud(text);
    } catch (const InvalidArgument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("1,2\n3").find("line 2") != std::string::npos);
  CHECK(message("1,x\n").find("line 1") != std::string::npos);
  CHECK(message("1,2\n3,\n").find("line 2") != std::string::npos);
  CHECK_FALSE(message("").empty());
  CHECK_FALSE(message("1,nan\n").empty());
}

TEST_CASE("real formatting round-trips") {
  CHECK(cli::format_real(1.0) == "1.0");
  CHECK(cli::format_real(0.0) == "0.0");
  CHECK(cli::format_real(-3.0) == "-3.0");
  CHECK(cli::format_real(0.1) == "0.10000000000000001");
  CHECK(cli::format_real(1e300) == "1.0000000000000001e+300");
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17}) CHECK(std::stod(cli::format_real(v)) == v);
}

TEST_CASE("gaussian-sim writes the trajectory") {
  TempDir dir;
  const auto out = dir.file("g.csv");
  const auto r = invoke({"gaussian-sim", "--d", "100", "--beta0", "1", "--alpha", "0.1", "--mode",
                         "max", "--seed", "1", "--out", out});
  CHECK(r.code == 0);
  const auto csv = slurp(out);
  CHECK(csv.rfind("step,beta\n0,1.0\n", 0) == 0);
  CHECK(fs::exists(out + ".manifest"));

  const auto again = dir.file("g2.csv");
  CHECK(invoke({"gaussian-sim", "--d", "100", "--beta0", "1", "--alpha", "0.1", "--mode", "max",
                "--seed", "1", "--out", again})
            .code == 0);
  CHECK(slurp(again) == csv);
}

TEST_CASE("dist prints the exact distance") {
  TempDir dir;
  const auto a = dir.file("a.csv", "0,0\n1,0\n");
  const auto b = dir.file("b.csv", "0,1\n1,1\n");
  const auto r = invoke({"dist", "--left", a, "--right", b, "--method", "exact"});
  CHECK(r.code == 0);
  CHECK(r.out == "1.0\n");
  CHECK(std::stod(invoke({"dist", "--left", a, "--right", b, "--method", "grid"}).out) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("manifest reloads as a config file") {
  TempDir dir;
  const auto out = dir.file("s.csv");
  REQUIRE(invoke({"gaussian-sim", "--seed", "4", "--d", "10", "--out", out}).code == 0);
  const auto out2 = dir.file("s2.csv");
  CHECK(invoke({"gaussian-sim", "--config", out + ".manifest", "--out", out2}).code == 0);
  CHECK(slurp(out2) == slurp(out));
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto a = dir.file("a.csv", "0,0\n1,0\n");
  const auto c3 = dir.file("c3.csv", "0,0,0\n1,0,0\n");
  const auto ragged = dir.file("r.csv", "1,2\n3\n");
  const auto bad = dir.file("bad.ini", "no_such_key=1\n");

  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"nope"}).code == 2);
  CHECK(invoke({"gaussian-sim"}).code == 2);
  auto r = invoke({"gaussian-sim", "--seed", "1", "--config", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("no_such_key") != std::string::npos);
  CHECK(invoke({"gaussian-sim", "--seed", "1", "--mode", "fast"}).code == 2);
  CHECK(invoke({"dist", "--left", a, "--right", a, "--method", "sliced"}).code == 2);

  r = invoke({"dist", "--left", a, "--right", c3});
  CHECK(r.code == 3);
  CHECK(r.err.find("dimension") != std::string::npos);
  r = invoke({"dist", "--left", a, "--right", ragged});
  CHECK(r.code == 3);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(invoke({"bounds", "--left", c3, "--right", c3, "--seed", "1"}).code == 3);

  CHECK(invoke({"gaussian-sim", "--seed", "1", "--out", (dir.path / "a.csv" / "x.csv").string()})
            .code == 1);
}

TEST_CASE("output directory from the environment") {
  TempDir dir;
  ::setenv(cli::kOutDirEnv, dir.path.c_str(), 1);
  const auto r = invoke({"bounds", "--left", dir.file("a.csv", "0,0\n"), "--right",
                         dir.file("b.csv", "3,4\n"), "--seed", "2"});
  ::unsetenv(cli::kOutDirEnv);
  CHECK(r.code == 0);
  CHECK(slurp((dir.path / "bounds.csv").string()) ==
        "lower,mid,upper,fallback\n25.0,25.0,25.0,false\n");
}

TEST_CASE("flow and complexity outputs") {
  TempDir dir;
  const auto out = dir.file("f.csv"), eval = dir.file("e.csv"), pts = dir.file("p.csv"),
             plot = dir.file("f.svg");
  const auto r = invoke({"flow", "--seed", "3", "--n", "64", "--outer-steps", "20", "--out", out,
                         "--eval-out", eval, "--particles-out", pts, "--plot", plot});
  CHECK(r.code == 0);
  CHECK(slurp(out).rfind("step,loss\n0,", 0) == 0);
  CHECK(slurp(eval).rfind("step,max_sliced\n0,", 0) == 0);
  CHECK(cli::load_cloud(pts).size() == 64);
  CHECK(slurp(plot).rfind("<svg", 0) == 0);

  const auto cx = dir.file("c.csv");
  CHECK(invoke({"complexity", "--seed", "1", "--d-grid", "2,3", "--n-grid", "8", "--trials", "2",
                "--out", cx})
            .code == 0);
  CHECK(slurp(cx).rfind("estimator,d,n,trial,estimate,population,gap\nexact,2,8,0,", 0) == 0);
  CHECK(slurp(cx + ".manifest").find("small-scale") != std::string::npos);
}
