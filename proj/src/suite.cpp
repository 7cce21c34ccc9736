#include "kkforms/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "kkforms/lift.hpp"
#include "kkforms/sampling.hpp"

namespace kkforms {

namespace {

ChartPoint head(const ChartPoint& p, int n) {
  return ChartPoint(std::vector<double>(p.coords().begin(), p.coords().begin() + n));
}

bool has_trace(const SolutionInstance& inst) { return inst.block && inst.block->r >= 2; }

struct PointOut {
  std::vector<PointResidual> r;
  double k = 0.0;  // physical-sign point estimate
};

}  // namespace

double VerifyOptions::tolerance_for(const std::string& equation) const {
  auto it = tolerance_overrides.find(equation);
  return it == tolerance_overrides.end() ? tolerance : it->second;
}

std::vector<std::string> suite_equations(const SolutionInstance& inst) {
  std::vector<std::string> ids = {"gj_weyl",         "gj_ricci",         "gj_gauge",   "identity_riemann",
                                  "identity_ricci",  "identity_scalar",  "k_constant", "traceless",
                                  "traceless_sym",   "field_kink",       "killing",    "bianchi"};
  if (inst.structure) {
    for (const char* s : {"structure_j2", "structure_hermitian", "structure_dj", "structure_holomorphic"}) {
      ids.emplace_back(s);
    }
  }
  if (inst.block) {
    ids.emplace_back("umbilic");
    if (has_trace(inst)) ids.emplace_back("trace");
    ids.emplace_back("f_constraint");
  }
  if (inst.kink && !inst.kink->centrifugal) {
    for (const char* s : {"kink_curvature", "kink_ode", "kink_traceless", "kink_gauge"}) ids.emplace_back(s);
  }
  if (inst.kink && inst.kink->centrifugal) {
    for (const char* s : {"ckink_curvature", "ckink_ode", "ckink_traceless", "ckink_gauge", "ckink_lambda",
                          "ckink_constants"}) {
      ids.emplace_back(s);
    }
  }
  ids.emplace_back("weyl_lift");
  return ids;
}

const ResidualReport* SolutionReport::find(const std::string& equation) const {
  for (const auto& r : equations)
    if (r.equation == equation) return &r;
  return nullptr;
}

nlohmann::ordered_json SolutionReport::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["family"] = family_name(family);
  nlohmann::ordered_json ps = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) ps[k] = v;
  j["params"] = ps;
  j["dim"] = dim;
  j["eps_d"] = eps_d;
  j["lift_eps_d"] = lift_eps_d;
  j["expected_k"] = expected_k;
  if (k_estimate) {
    j["k_estimate"] = {{"mean", k_estimate->mean},
                       {"spread", k_estimate->spread},
                       {"min", k_estimate->min},
                       {"max", k_estimate->max}};
  }
  j["pass"] = pass;
  if (!error.empty()) j["error"] = error;
  j["wall_seconds"] = wall_seconds;
  nlohmann::ordered_json eq = nlohmann::ordered_json::object();
  for (const auto& r : equations) eq[r.equation] = r.to_json();
  j["equations"] = eq;
  return j;
}

nlohmann::ordered_json SuiteReport::to_json(const VerifyOptions& opt, const nlohmann::ordered_json& config_echo) const {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = "kkforms";
  j["version"] = KKFORMS_VERSION;
  nlohmann::ordered_json cfg;
  cfg["points"] = opt.points;
  cfg["seed"] = opt.seed;
  cfg["tolerance"] = opt.tolerance;
  nlohmann::ordered_json ov = nlohmann::ordered_json::object();
  for (const auto& [k, v] : opt.tolerance_overrides) ov[k] = v;
  cfg["tolerance_overrides"] = ov;
  cfg["eps_d"] = opt.lift_eps_d ? nlohmann::ordered_json(*opt.lift_eps_d) : nlohmann::ordered_json(nullptr);
  if (config_echo.is_object())
    for (auto it = config_echo.begin(); it != config_echo.end(); ++it) cfg[it.key()] = it.value();
  j["config"] = cfg;
  j["pass"] = pass;
  nlohmann::ordered_json sols = nlohmann::ordered_json::array();
  for (const auto& s : solutions) sols.push_back(s.to_json());
  j["solutions"] = sols;
  return j;
}

SolutionReport verify_instance(const SolutionInstance& inst, const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  SolutionReport rep;
  rep.label = inst.label;
  rep.family = inst.family;
  rep.params = inst.params;
  rep.dim = inst.dim;
  rep.eps_d = inst.eps_d;
  rep.lift_eps_d = opt.lift_eps_d.value_or(inst.eps_d);
  rep.expected_k = inst.expected.k;

  try {
    const std::vector<ChartPoint> points = sample_points(inst.domain, opt.points, opt.seed);
    const int e = inst.eps_d;
    const SmoothField ge = e < 0 ? inst.g.scaled(-1.0) : inst.g;
    const double k_e = e * inst.expected.k;
    GeometryOptions go;
    go.derivatives = true;
    go.k = k_e;
    const LiftedMetric lifted = lift(inst.g, inst.A, rep.lift_eps_d);
    const std::vector<std::string> ids = suite_equations(inst);
    const int d = inst.dim;

    std::optional<SmoothField> se;
    if (inst.structure) se = e < 0 ? inst.structure->g.scaled(-1.0) : inst.structure->g;

    auto eval = [&](const ChartPoint& p) {
      PointOut o;
      o.r.reserve(ids.size());
      const LocalGeometry geo = local_geometry(ge, &inst.A, p, go);
      const GJEquationSet gj = gj_residual(geo);
      o.r.push_back(gj.r_weyl);
      o.r.push_back(gj.r_ricci);
      o.r.push_back(gj.r_gauge);
      const CurvatureIdentity ci = curvature_identity_residual(geo, k_e);
      o.r.push_back(ci.riemann);
      o.r.push_back(ci.ricci);
      o.r.push_back(ci.scalar);
      const double kh = point_k(geo);
      o.k = e * kh;
      const double fterm = (d + 1) * (d + 2) / 8.0 * geo.F2 / (d * (d - 1));
      o.r.push_back(PointResidual{std::abs(kh - k_e), std::max({std::abs(k_e), std::abs(geo.scalar) / (d * (d - 1)),
                                                                std::abs(fterm)})});
      const TracelessKink tk = traceless_kink_residual(geo, k_e);
      o.r.push_back(tk.traceless);
      o.r.push_back(tk.traceless_sym);
      o.r.push_back(tk.kink);
      o.r.push_back(killing_from_gauge(geo));
      o.r.push_back(bianchi_residual(geo));

      if (inst.structure) {
        GeometryOptions so;
        so.derivatives = true;
        so.weyl = false;
        const auto& st = *inst.structure;
        const LocalGeometry sg = local_geometry(*se, &st.A, head(p, st.g.dim()), so);
        const StructureResidual sr = structure_residual(sg, st.sigma, st.coefficient);
        o.r.push_back(sr.j2);
        o.r.push_back(sr.hermitian);
        o.r.push_back(sr.dj);
        o.r.push_back(sr.holomorphic);
      }
      if (inst.block) {
        const FundamentalForms ff = fundamental_forms(*inst.block, inst.A, p);
        o.r.push_back(ff.umbilic);
        if (has_trace(inst)) o.r.push_back(ff.trace);
        o.r.push_back(ff.f_constraint);
      }
      if (inst.kink) {
        const KinkData& kd = *inst.kink;
        const ChartPoint p2 = head(p, 2);
        if (!kd.centrifugal) {
          const KinkOdeResidual kr = kink_ode_residual(kd.g2, kd.phi, kd.k, kd.sigma, p2, e, 0.0, 1, &kd.A2);
          o.r.push_back(kr.curvature);
          o.r.push_back(kr.kink);
          o.r.push_back(kr.traceless);
          o.r.push_back(kr.gauge);
        } else {
          const CKinkResidual cr = ckink_ode_residual(kd, p2, e);
          o.r.push_back(cr.ode.curvature);
          o.r.push_back(cr.ode.kink);
          o.r.push_back(cr.ode.traceless);
          o.r.push_back(cr.ode.gauge);
          o.r.push_back(cr.lambda);
          o.r.push_back(PointResidual::worst(PointResidual{cr.k_map, std::abs(kd.K) + std::abs(kd.L)},
                                             PointResidual{cr.l2_map, std::abs(kd.l2)}));
        }
      }
      o.r.push_back(lifted_weyl_residual(lifted, p));
      return o;
    };

    const std::vector<PointOut> per = map_points<PointOut>(points, eval, opt.exec);

    KEstimate ke;
    ke.points = static_cast<int>(per.size());
    ke.min = per.front().k;
    ke.max = per.front().k;
    for (const auto& o : per) {
      ke.mean += o.k;
      ke.min = std::min(ke.min, o.k);
      ke.max = std::max(ke.max, o.k);
    }
    ke.mean /= ke.points;
    ke.spread = ke.max - ke.min;
    rep.k_estimate = ke;

    for (std::size_t j = 0; j < ids.size(); ++j) {
      std::vector<PointResidual> col;
      col.reserve(per.size());
      for (const auto& o : per) col.push_back(o.r[j]);
      rep.equations.push_back(aggregate(ids[j], col, opt.seed, opt.tolerance_for(ids[j])));
    }
    rep.pass = !rep.equations.empty() &&
               std::all_of(rep.equations.begin(), rep.equations.end(), [](const ResidualReport& r) { return r.pass; });
  } catch (const Error& ex) {
    rep.error = ex.what();
    rep.pass = false;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

SuiteReport run_suite(const std::vector<SolutionInstance>& instances, const VerifyOptions& opt) {
  SuiteReport s;
  s.pass = !instances.empty();
  for (const auto& inst : instances) {
    s.solutions.push_back(verify_instance(inst, opt));
    s.pass = s.pass && s.solutions.back().pass;
  }
  return s;
}

}  // namespace kkforms
