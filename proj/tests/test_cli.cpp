#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + QMETRIC_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct Dir {
  fs::path root;
  Dir() {
    root = fs::temp_directory_path() / ("qmetric_cli_" + std::to_string(::getpid()));
    fs::create_directories(root);
  }
  ~Dir() { fs::remove_all(root); }
  std::string put(const std::string& name, const std::string& text) const {
    std::ofstream(root / name) << text;
    return (root / name).string();
  }
};

const char* kM2 = R"({"blocks": [2]})";
const char* kC = R"({"blocks": [1]})";

}  // namespace

TEST_CASE("norms of the identity") {
  Dir d;
  const auto alg = d.put("alg.json", kM2);
  const auto el = d.put("id.json", "[[[1, 0], [0, 1]]]");
  const auto r = run("norms --algebra " + alg + " --element " + el);
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["op_norm"] == 1.0);
  CHECK(j["max_norm"] == 1.0);
  CHECK(j["real_max_norm"] == 1.0);
  CHECK(j["max_sandwich"] == true);
  CHECK(j["real_max_sandwich"] == true);
  CHECK(j["command"] == "norms");
  CHECK(j.contains("version"));
  CHECK(j.contains("config_hash"));
}

TEST_CASE("input errors exit with 2") {
  Dir d;
  const auto alg = d.put("alg.json", kM2);
  const auto broken = d.put("broken.json", "[[[1, 0],\n [0, 1]]");
  CHECK(run("norms --algebra " + alg + " --element " + broken).code == 2);
  // the location reaches stderr
  const auto r = run("norms --algebra " + alg + " --element " + broken + " 2>&1 >/dev/null; true");
  CHECK(r.out.find("line") != std::string::npos);
  CHECK(run("norms --algebra " + alg).code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("--format xml gen circle --n 4").code == 2);
  const auto bad = d.put("bad_space.json", R"({"dist": [[0, 1], [3, 0]]})");
  CHECK(run("gh --x " + bad + " --y " + bad).code == 2);
  CHECK(run("gen circle --n 4", "QMETRIC_TOL=garbage").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("lipnorm of functions") {
  Dir d;
  const auto constant = d.put("const.json", R"({"space": {"dist": [[0, 1], [1, 0]]}, "algebra": {"blocks": [1]},
                                               "values": [[[[2]]], [[[2]]]]})");
  auto r = run("--spec-norm op --spec-q cx lipnorm --function " + constant);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["lipnorm"] == 0.0);
  const auto f = d.put("f.json", R"({"space": {"dist": [[0, 2, 3], [2, 0, 1], [3, 1, 0]]}, "algebra": {"blocks": [1]},
                                    "values": [[[[0]]], [[[1]]], [[[3]]]]})");
  r = run("--spec-norm op --spec-q cx lipnorm --function " + f);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["lipnorm"] == 2.0);
  r = run("--spec-norm realmax --spec-q convk --K 3 lipnorm --function " + f);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["lipnorm"] == 2.0);
}

TEST_CASE("mk between classical point masses") {
  Dir d;
  const auto x = d.put("x.json", R"({"dist": [[0, 0.6], [0.6, 0]], "labels": ["a", "b"]})");
  const auto alg = d.put("alg.json", kC);
  const auto mu = d.put("mu.json", R"({"terms": [{"w": 1, "x": "a", "phi": {"weights": [1], "densities": [[[1]]]}}]})");
  const auto nu = d.put("nu.json", R"({"terms": [{"w": 1, "x": "b", "phi": {"weights": [1], "densities": [[[1]]]}}]})");
  auto r = run("--spec-q conv mk --space " + x + " --algebra " + alg + " --mu " + mu + " --nu " + nu);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["value"] == doctest::Approx(0.6).epsilon(1e-9));
  r = run("--spec-q conv mk --space " + x + " --algebra " + alg + " --mu " + mu + " --nu " + mu);
  REQUIRE(r.code == 0);
  CHECK(std::abs(json::parse(r.out)["result"]["value"].get<double>()) <= 1e-9);
  r = run("--spec-norm op --spec-q c mk --space " + x + " --algebra " + alg + " --mu " + mu + " --nu " + nu);
  REQUIRE(r.code == 0);
  const auto res = json::parse(r.out)["result"];
  CHECK(res["lower"].get<double>() <= res["upper"].get<double>());
}

TEST_CASE("generated circle passes the isometry check") {
  Dir d;
  const auto g = run("gen circle --n 8 --diam 1");
  REQUIRE(g.code == 0);
  const auto x = d.put("x.json", json::parse(g.out)["space"].dump());
  const auto alg = d.put("alg.json", R"({"blocks": [2, 3]})");
  auto r = run("--spec-q conv embed-check --space " + x + " --algebra " + alg);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["max_abs_defect"].get<double>() <= 1e-6);
  r = run("--spec-q conv --format csv embed-check --space " + x + " --algebra " + alg);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("i,j,d,mk\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 29);
}

TEST_CASE("gh, bridge and approx") {
  Dir d;
  const auto x = d.put("x.json", R"({"dist": [[0, 1], [1, 0]]})");
  const auto same = run("gh --x " + x + " --y " + x);
  REQUIRE(same.code == 0);
  CHECK(json::parse(same.out)["gh_exact"] == 0.0);
  const auto cross = d.put("cross.json", "[[0, 1], [1, 0]]");
  const auto alg = d.put("alg.json", kM2);
  auto r = run("--eps 0.01 --samples 2 bridge --x " + x + " --y " + x + " --cross " + cross + " --algebra " + alg);
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["bound"] == doctest::Approx(0.005));
  CHECK(j["height"] == 0.0);
  CHECK(j["certified"] == true);
  CHECK(j["delta_is_embedding_hausdorff"] == true);

  const auto circle = d.put("c.json", json::parse(run("gen circle --n 16").out)["space"].dump());
  r = run("--samples 1 --format csv approx --space " + circle + " --algebra " + alg + " --rows 3");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("eps_n,net_size,hausdorff,delta_xy,bound\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}

TEST_CASE("extend") {
  Dir d;
  const auto p = d.put("p.json", R"({"space": {"dist": [[0,1,2],[1,0,1],[2,1,0]], "labels": ["a","b","c"]},
                                    "subset": ["a", "c"], "values": [0, 2], "K": 1})");
  const auto r = run("extend --problem " + p);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["values"]["b"] == 1.0);
  const auto bad = d.put("bad.json", R"({"space": {"dist": [[0,1],[1,0]]}, "subset": [0, 1], "values": [0, 5], "K": 1})");
  CHECK(run("extend --problem " + bad).code == 2);
}

TEST_CASE("reports are reproducible") {
  Dir d;
  const auto x = d.put("x.json", json::parse(run("gen random --n 6 --seed 3").out)["space"].dump());
  const auto alg = d.put("alg.json", kM2);
  const std::string args = "--seed 5 --samples 2 approx --space " + x + " --algebra " + alg + " --rows 2";
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto threaded = run("--threads 3 " + args);
  CHECK(threaded.out == a.out);
  const auto out = (d.root / "o.json").string();
  CHECK(run("--out " + out + " " + args).code == 0);
  std::ifstream in(out);
  const std::string written((std::istreambuf_iterator<char>(in)), {});
  CHECK(json::parse(written)["config_hash"] == json::parse(a.out)["config_hash"]);
  CHECK(run("--seed 6 --samples 2 approx --space " + x + " --algebra " + alg + " --rows 2").out != a.out);
}
