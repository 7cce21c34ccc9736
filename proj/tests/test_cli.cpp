#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out, err;
};

std::string bin() {
  const char* b = std::getenv("KKFORMS_BIN");
  REQUIRE_MESSAGE(b != nullptr, "KKFORMS_BIN not set");
  return b;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  static int counter = 0;
  const std::string errfile = "kkforms_cli_test_" + std::to_string(counter++) + ".err";
  const std::string cmd = bin() + " " + args + " 2>" + errfile;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.err = slurp(errfile);
  std::remove(errfile.c_str());
  return r;
}

struct Table {
  std::vector<std::string> header;
  std::map<long, std::vector<double>> rows;  // keyed by round(10·ξ¹)
};

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::istringstream h(line);
  for (std::string cell; std::getline(h, cell, ',');) t.header.push_back(cell);
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::istringstream l(line);
    for (std::string cell; std::getline(l, cell, ',');) v.push_back(std::stod(cell));
    t.rows[std::lround(v[0] * 10.0)] = v;
  }
  return t;
}

std::string strip_wall_clock(const std::string& report) {
  auto j = nlohmann::ordered_json::parse(report);
  for (auto& s : j["solutions"]) s.erase("wall_seconds");
  return j.dump();
}

}  // namespace

TEST_CASE("list") {
  auto r = run("list");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["families"].size() == 7);
  for (const auto& f : j["families"]) {
    if (f["id"] == "real_space_form") {
      CHECK(f["rank"] == "0");
      CHECK(f["nullity"] == "d");
    }
    if (f["id"] == "kink_warped") CHECK(f["reference"].get<std::string>().find("warped") != std::string::npos);
  }
}

TEST_CASE("verify the default grid") {
  auto r = run("verify");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["solutions"].size() >= 20);
  CHECK(j["config"]["points"] == 50);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["config"]["tolerance"] == 1e-7);
  CHECK(r.err.find("overall: PASS") != std::string::npos);
}

TEST_CASE("tolerance below the floor fails with residuals reported") {
  auto r = run("verify --family cpx_space_form --tol 1e-15 --points 10");
  CHECK(r.status == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == false);
  for (const auto& s : j["solutions"])
    for (const auto& e : s["equations"]) {
      CHECK(e["tolerance"] == 1e-15);
      CHECK(e.contains("max_rel"));
    }
}

TEST_CASE("configuration errors") {
  auto bad_sign = run("verify --family ckink3 --param K=2 --param L=-0.5 --param tau=1");
  CHECK(bad_sign.status == 2);
  CHECK(bad_sign.err.find("tau*L > 0") != std::string::npos);
  CHECK(bad_sign.out.empty());

  CHECK(run("verify --param k=1").status == 2);
  CHECK(run("verify --family kink2 --param k=abc").status == 2);
  CHECK(run("verify --family kink2 --param k").status == 2);
  CHECK(run("verify --family kink2 --param bogus=1").status == 2);
  CHECK(run("verify --family nonsense").status == 2);
  CHECK(run("verify --eps-d 3").status == 2);
  CHECK(run("verify --points 0").status == 2);
  CHECK(run("verify --no-such-flag").status == 2);
  CHECK(run("verify --out /nonexistent-dir/report.json").status == 2);
  CHECK(run("profile --family real_space_form").status == 2);
  CHECK(run("profile --family kink2 --step 0").status == 2);
  CHECK(run("").status == 2);
}

TEST_CASE("reports are reproducible and written to --out") {
  const std::string path = "kkforms_cli_test_report.json";
  auto a = run("verify --family kink_warped --points 12 --seed 9 --out " + path);
  CHECK(a.status == 0);
  CHECK(a.out.empty());
  const std::string first = slurp(path);
  auto b = run("verify --family kink_warped --points 12 --seed 9");
  CHECK(strip_wall_clock(first) == strip_wall_clock(b.out));
  auto j = nlohmann::json::parse(first);
  CHECK(j["config"]["seed"] == 9);
  CHECK(j["config"]["family"] == "kink_warped");
  for (const auto& s : j["solutions"])
    for (const auto& e : s["equations"]) CHECK(e["seed"] == 9);
  std::remove(path.c_str());
}

TEST_CASE("per-equation tolerances and the lift sign override") {
  auto r = run("verify --family cpx_space_form --param rp=2 --param F2=8 --points 10 --tol-eq gj_weyl=1e-6");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["tolerance_overrides"]["gj_weyl"] == 1e-6);
  CHECK(j["solutions"][0]["equations"]["gj_weyl"]["tolerance"] == 1e-6);
  CHECK(j["solutions"][0]["equations"]["gj_ricci"]["tolerance"] == 1e-7);

  auto w = run("verify --family cpx_space_form --param rp=2 --param F2=8 --points 10 --eps-d -1");
  CHECK(w.status == 1);
  auto jw = nlohmann::json::parse(w.out);
  CHECK(jw["config"]["eps_d"] == -1);
  for (const auto& e : jw["solutions"][0]["equations"]) CHECK(e["pass"] == (e["equation"] != "weyl_lift"));
}

TEST_CASE("kink profile") {
  auto r = run("profile --family kink2 --param k=2 --from -3 --to 3 --step 0.1");
  CHECK(r.status == 0);
  auto t = parse_csv(r.out);
  REQUIRE(t.header == std::vector<std::string>{"xi1", "phi", "R", "lambda"});
  CHECK(t.rows.size() == 61);
  for (const auto& [key, row] : t.rows) {
    const auto& mirror = t.rows.at(-key);
    CHECK(std::abs(row[1] + mirror[1]) <= 1e-12);
  }
  CHECK(t.rows.at(10)[1] == doctest::Approx(2.0 * std::tanh(1.0)).epsilon(1e-14));
}

TEST_CASE("c-kink profile with a gap") {
  auto r = run("profile --family ckink3 --param K=2 --param L=-1 --param tau=-1 --step 0.1");
  CHECK(r.status == 0);
  const double gap = std::atanh(0.5);
  CHECK(r.err.find("excluded 11 rows") != std::string::npos);
  CHECK(r.err.find("0.5493061443340") != std::string::npos);
  auto t = parse_csv(r.out);
  CHECK(t.rows.size() == 50);
  for (const auto& [key, row] : t.rows) CHECK(std::abs(row[0]) >= gap);
}

TEST_CASE("small-L c-kink follows the kink") {
  auto k = parse_csv(run("profile --family kink2 --param k=2 --param warp_sign=-1").out);
  auto c = parse_csv(run("profile --family ckink3 --param K=2 --param L=1e-6 --param tau=1").out);
  CHECK(c.rows.size() == 60);  // the degenerate row at ξ¹ = 0 is left out
  double dphi = 0.0, dlam = 0.0, dR = 0.0;
  for (const auto& [key, row] : c.rows) {
    const auto& ref = k.rows.at(key);
    dphi = std::max(dphi, std::abs(std::abs(row[1]) - std::abs(ref[1])));
    dlam = std::max(dlam, std::abs(row[3] - ref[3]));
    if (std::abs(key) >= 2) dR = std::max(dR, std::abs(row[2] - ref[2]));
  }
  CHECK(dphi <= 1e-2);
  CHECK(dlam <= 1e-2);
  CHECK(dR <= 1e-2);

  // Next to the core the centrifugal term 3l²/φ⁴ decays only linearly in L:
  // the curvature converges pointwise but not uniformly.
  auto c1 = parse_csv(run("profile --family ckink3 --param K=2 --param L=1e-6 --from -0.1 --to 0.1 --step 0.2").out);
  auto c2 = parse_csv(run("profile --family ckink3 --param K=2 --param L=1e-8 --from -0.1 --to 0.1 --step 0.2").out);
  for (long key : {-1L, 1L}) {
    CHECK(std::abs(c1.rows.at(key)[2] - k.rows.at(key)[2]) > 1e-2);
    CHECK(std::abs(c2.rows.at(key)[2] - k.rows.at(key)[2]) <= 1e-3);
  }
}
