// kkforms: list the solution catalog, verify instances, print kink profiles.
//
// Exit status: 0 pass, 1 residual failure, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kkforms/catalog.hpp"
#include "kkforms/curvature.hpp"
#include "kkforms/error.hpp"
#include "kkforms/suite.hpp"

namespace {

using namespace kkforms;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError(what + ": not a number: '" + text + "'");
  return v;
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects name=value, got '" + it + "'");
    const std::string name = it.substr(0, eq);
    if (out.count(name)) throw ConfigError("--param " + name + " given twice");
    out[name] = parse_number(it.substr(eq + 1), "--param " + name);
  }
  return out;
}

// Output goes to the file when a path is given, else to stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw ConfigError("cannot write output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish(const std::string& path) {
    os().flush();
    if (file_.is_open() && !file_) throw ConfigError("write to '" + path + "' failed");
  }

 private:
  std::ofstream file_;
};

int cmd_list(const std::string& out) {
  Sink sink(out);
  sink.os() << catalog_manifest().dump(2) << "\n";
  sink.finish(out);
  return kExitPass;
}

struct VerifyArgs {
  std::string family = "all";
  std::vector<std::string> params;
  std::vector<std::string> tol_eq;
  int points = 50;
  std::uint64_t seed = 42;
  double tol = 1e-7;
  std::string out;
  std::string eps_d;
  bool serial = false;
};

std::vector<SolutionInstance> select_instances(const std::string& family, const ParamMap& params) {
  if (family == "all") {
    if (!params.empty()) throw ConfigError("--param needs a single --family");
    return default_grid();
  }
  const Family f = family_from_name(family);
  if (params.empty()) {
    std::vector<SolutionInstance> v;
    for (const auto& p : default_params(f)) v.push_back(make_instance(f, p));
    return v;
  }
  return {make_instance(f, params)};
}

int parse_sign(const std::string& s) {
  if (s == "+1" || s == "1") return 1;
  if (s == "-1") return -1;
  throw ConfigError("--eps-d must be +1 or -1, got '" + s + "'");
}

int cmd_verify(const VerifyArgs& a) {
  if (a.points < 1) throw ConfigError("--points must be positive");
  if (!(a.tol > 0.0)) throw ConfigError("--tol must be positive");
  VerifyOptions opt;
  opt.points = a.points;
  opt.seed = a.seed;
  opt.tolerance = a.tol;
  opt.exec = a.serial ? Exec::serial : Exec::parallel;
  if (!a.eps_d.empty()) opt.lift_eps_d = parse_sign(a.eps_d);
  for (const auto& [k, v] : parse_params(a.tol_eq)) {
    if (!(v > 0.0)) throw ConfigError("--tol-eq " + k + " must be positive");
    opt.tolerance_overrides[k] = v;
  }
  const ParamMap params = parse_params(a.params);
  const auto instances = select_instances(a.family, params);
  Sink sink(a.out);

  const SuiteReport rep = run_suite(instances, opt);
  nlohmann::ordered_json echo;
  echo["family"] = a.family;
  nlohmann::ordered_json pj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) pj[k] = v;
  echo["params"] = pj;
  sink.os() << rep.to_json(opt, echo).dump(2) << "\n";
  sink.finish(a.out);

  for (const auto& s : rep.solutions) {
    std::string worst;
    double wrel = -1.0;
    for (const auto& r : s.equations) {
      if (r.max_rel > wrel) {
        wrel = r.max_rel;
        worst = r.equation;
      }
    }
    std::ostringstream line;
    line << (s.pass ? "PASS " : "FAIL ") << s.label;
    if (!s.error.empty()) {
      line << "  error: " << s.error;
    } else {
      line << "  worst " << worst << " max_rel=" << std::scientific << std::setprecision(2) << wrel;
      for (const auto& r : s.equations)
        if (!r.pass) line << "  [" << r.equation << " " << r.max_rel << "]";
    }
    std::cerr << line.str() << "\n";
  }
  std::cerr << (rep.pass ? "overall: PASS" : "overall: FAIL") << " (" << rep.solutions.size() << " solutions)\n";
  return rep.pass ? kExitPass : kExitFail;
}

struct ProfileArgs {
  std::string family;
  std::vector<std::string> params;
  double from = -3.0, to = 3.0, step = 0.1;
  std::string out;
};

int cmd_profile(const ProfileArgs& a) {
  if (a.family != "kink2" && a.family != "ckink3") throw ConfigError("profile supports kink2 and ckink3");
  if (!(a.step > 0.0) || !(a.to >= a.from)) throw ConfigError("profile grid needs step > 0 and to >= from");
  const Family f = family_from_name(a.family);
  const ParamMap params = parse_params(a.params);
  const SolutionInstance inst = make_instance(f, params);
  const KinkData& kd = *inst.kink;

  double gap = 0.0;
  if (f == Family::ckink3 && kd.tau < 0) gap = ckink_gap(kd.K, kd.L);

  Sink sink(a.out);
  auto& os = sink.os();
  os << "xi1,phi,R,lambda\n";
  os << std::setprecision(17);
  const long n = std::lround((a.to - a.from) / a.step);
  int in_gap = 0, degenerate = 0, rows = 0;
  for (long i = 0; i <= n; ++i) {
    const double x = a.from + static_cast<double>(i) * a.step;
    if (gap > 0.0 && std::abs(x) < gap) {
      ++in_gap;
      continue;
    }
    const ChartPoint p2{0.0, x};
    double R = 0.0, lam = 0.0, phi = 0.0;
    try {
      phi = kd.phi(p2)[0];
      R = curvature_bundle(kd.g2, p2, false).scalar;
      if (kd.lambda.valid()) {
        lam = kd.lambda(p2)[0];
      } else {
        std::vector<double> x3(static_cast<std::size_t>(inst.dim), 0.0);
        x3[1] = x;
        lam = inst.block->warp(ChartPoint(x3))[0];
      }
    } catch (const Error&) {
      ++degenerate;
      continue;
    }
    os << x << "," << phi << "," << R << "," << lam << "\n";
    ++rows;
  }
  sink.finish(a.out);
  if (gap > 0.0) {
    std::cerr << "excluded " << in_gap << " rows inside the gap |xi1| < " << std::setprecision(17) << gap << "\n";
  }
  if (degenerate > 0) std::cerr << "excluded " << degenerate << " rows where the metric is degenerate\n";
  std::cerr << rows << " rows written\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form solutions of the conformally flat Kaluza-Klein reduction: catalog and verification"};
  app.set_version_flag("--version", std::string(KKFORMS_VERSION));
  app.require_subcommand(1);

  std::string list_out;
  auto* list = app.add_subcommand("list", "Print the solution catalog manifest (JSON)");
  list->add_option("--out", list_out, "Write to this file instead of stdout");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Verify solutions and print a JSON report");
  verify->add_option("--family", va.family, "Family identifier, or 'all' for the default grid")->capture_default_str();
  verify->add_option("--param", va.params, "Parameter assignment name=value (repeatable)");
  verify->add_option("--points", va.points, "Sample points per solution")->capture_default_str();
  verify->add_option("--seed", va.seed, "Sampling seed")->capture_default_str();
  verify->add_option("--tol", va.tol, "Relative tolerance")->capture_default_str();
  verify->add_option("--tol-eq", va.tol_eq, "Per-equation tolerance id=value (repeatable)");
  verify->add_option("--out", va.out, "Write the report to this file instead of stdout");
  verify->add_option("--eps-d", va.eps_d, "Lift with this extra-coordinate sign (+1 or -1) instead of the solution's own");
  verify->add_flag("--serial", va.serial, "Evaluate points serially");

  ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "Print a kink profile table (CSV: xi1,phi,R,lambda)");
  profile->add_option("--family", pa.family, "kink2 or ckink3")->required();
  profile->add_option("--param", pa.params, "Parameter assignment name=value (repeatable)");
  profile->add_option("--from", pa.from, "First xi1")->capture_default_str();
  profile->add_option("--to", pa.to, "Last xi1")->capture_default_str();
  profile->add_option("--step", pa.step, "Grid step")->capture_default_str();
  profile->add_option("--out", pa.out, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*list) return cmd_list(list_out);
    if (*verify) return cmd_verify(va);
    if (*profile) return cmd_profile(pa);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "error: invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
