// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fixtures.hpp"
#include "kkforms/catalog.hpp"
#include "kkforms/curvature.hpp"
#include "kkforms/field.hpp"
#include "kkforms/lift.hpp"
#include "kkforms/sampling.hpp"
#include "kkforms/suite.hpp"
#include "kkforms/verify.hpp"
#include "oracles.hpp"

using namespace kkforms;

namespace {

constexpr int kPoints = 50;
constexpr std::uint64_t kSeed = 42;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Runs one criterion; an exception counts as a failure.
void criterion(int id, const char* title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(id, title, ok, detail);
}

int negative_eigenvalues(const TensorValue& g) {
  const int d = g.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = g(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  int neg = 0;
  for (int i = 0; i < d; ++i) neg += es.eigenvalues()(i) < 0.0;
  return neg;
}

double max_rel(const std::vector<PointResidual>& rs) {
  double m = 0.0;
  for (const auto& r : rs) m = std::max(m, r.rel());
  return m;
}

GeometryOptions with_derivatives(std::optional<double> k = std::nullopt) {
  GeometryOptions o;
  o.derivatives = true;
  o.k = k;
  return o;
}

// ---- 1 ----------------------------------------------------------------------

bool catalog_soundness(std::string& detail) {
  const auto grid = default_grid();
  std::set<Family> families;
  for (const auto& inst : grid) families.insert(inst.family);

  VerifyOptions opt;
  opt.points = kPoints;
  opt.seed = kSeed;
  opt.tolerance = 1e-7;
  const auto t0 = std::chrono::steady_clock::now();
  const auto suite = run_suite(grid, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double worst = 0.0;
  bool gj_ok = true;
  for (const auto& s : suite.solutions) {
    for (const char* id : {"gj_weyl", "gj_ricci", "gj_gauge"}) {
      const auto* r = s.find(id);
      if (r == nullptr || r->points != kPoints) {
        gj_ok = false;
        continue;
      }
      worst = std::max(worst, r->max_rel);
      gj_ok = gj_ok && r->max_rel <= 1e-7;
    }
  }
  detail = fmt("%zu instances, %zu families, worst GJ max_rel %.3g, full suite %s, %.2f s", grid.size(),
               families.size(), worst, suite.pass ? "pass" : "fail", secs);
  return grid.size() >= 20 && families.size() == 7 && gj_ok && suite.pass && secs <= 300.0;
}

// ---- 2 ----------------------------------------------------------------------

bool capstone_lift(std::string& detail) {
  bool own_ok = true;
  double own_worst = 0.0;
  bool opp_ok = true;
  double opp_min_maxrank = 1e300;
  int opp_fail_other = 0, other = 0;
  for (const auto& inst : default_grid()) {
    const auto pts = sample_points(inst.domain, kPoints, kSeed);
    auto own = weyl_vanishing(lift(inst.g, inst.A, inst.eps_d), pts, 1e-7, kSeed);
    own_ok = own_ok && own.pass;
    own_worst = std::max(own_worst, own.max_rel);
    auto opp = weyl_vanishing(lift(inst.g, inst.A, -inst.eps_d), pts, 1e-7, kSeed);
    if (inst.family == Family::cpx_space_form) {
      opp_min_maxrank = std::min(opp_min_maxrank, opp.max_rel);
      opp_ok = opp_ok && opp.max_rel > 1e-3;
    } else {
      ++other;
      opp_fail_other += opp.max_rel > 1e-3;
    }
  }
  detail = fmt("own branch worst %.3g; opposite branch on maximal rank min max_rel %.3g; "
               "opposite branch also fails on %d of %d other instances",
               own_worst, opp_min_maxrank, opp_fail_other, other);
  return own_ok && opp_ok;
}

// ---- 3 ----------------------------------------------------------------------

bool constant_extraction(std::string& detail) {
  double worst = 0.0, worst_spread = 0.0;
  int n = 0;
  auto check = [&](const SolutionInstance& inst, double want) {
    auto est = estimate_k(inst.g, inst.A, sample_points(inst.domain, kPoints, kSeed), inst.eps_d);
    const double scale = std::max(1.0, std::abs(want));
    worst = std::max(worst, std::abs(est.mean - want) / scale);
    worst_spread = std::max(worst_spread, est.spread / scale);
    ++n;
  };
  for (const auto& inst : default_grid()) {
    if (inst.family == Family::cpx_space_form) {
      const double d = inst.dim;
      const double F2 = *inst.expected.F2;  // unchanged by g → −g
      check(inst, inst.eps_d * (-(d + 2.0) * F2 / (8.0 * d)));
    }
  }
  for (auto [K, L, tau] : {std::tuple{2.0, 0.5, 1}, std::tuple{2.0, -0.5, -1}, std::tuple{5.0, 1.0, 1}}) {
    for (bool anti : {true, false}) {
      auto inst = make_ckink(K, L, tau, 1, anti);
      check(inst, inst.eps_d * (K + 0.75 * L));
    }
  }
  detail = fmt("%d instances, worst |k - k_pred| %.3g, worst spread %.3g (relative to max(1,|k|))", n, worst,
               worst_spread);
  return n >= 9 && worst <= 1e-7 && worst_spread <= 1e-7;
}

// ---- 4 ----------------------------------------------------------------------

bool kink_system(std::string& detail) {
  double worst_ode = 0.0, worst_asym = 0.0, worst_asym_abs = 0.0;
  for (double k : {0.5, 2.0, 8.0}) {
    auto kg = make_kink(k, 1, true);
    const double s = std::sqrt(k / 2.0);
    Domain dom;
    dom.lo = {-1.0, -2.5 / s};
    dom.hi = {1.0, 2.5 / s};
    for (const auto& p : sample_points(dom, kPoints, kSeed)) {
      auto r = kink_ode_residual(kg.g, kg.phi, k, -1, p, 1, 0.0, 1, &kg.A);
      worst_ode = std::max({worst_ode, r.curvature.rel(), r.kink.rel(), r.traceless.rel()});
    }
    // standard metric → −4k, opposite → +4k
    for (bool anti : {true, false}) {
      auto g = make_kink(k, 1, anti).g;
      const double want = anti ? -4.0 * k : 4.0 * k;
      for (double xi : {-10.0 / std::sqrt(k), 10.0 / std::sqrt(k)}) {
        const double R = curvature_bundle(g, ChartPoint{0.0, xi}, false).scalar;
        worst_asym_abs = std::max(worst_asym_abs, std::abs(R - want));
        worst_asym = std::max(worst_asym, std::abs(R - want) / std::abs(want));
      }
    }
  }
  detail = fmt("ODE worst rel %.3g; |R -/+ 4k|/4k at |xi|=10/sqrt(k) worst %.3g (absolute %.3g)", worst_ode,
               worst_asym, worst_asym_abs);
  return worst_ode <= 1e-8 && worst_asym <= 1e-4;
}

// ---- 5 ----------------------------------------------------------------------

// Zero of the internal warp along ξ¹ ≥ 0, by bisection on the metric.
double warp_zero(const SolutionInstance& inst, double hi) {
  auto lam = [&](double x) { return (*inst.kink).lambda(ChartPoint{0.0, x})[0]; };
  double lo = 0.0;
  const double slo = std::copysign(1.0, lam(lo));
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::copysign(1.0, lam(mid)) == slo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool ckink_system(std::string& detail) {
  double worst_ode = 0.0;
  for (auto [K, L, tau] : {std::tuple{2.0, 0.5, 1}, std::tuple{2.0, -0.5, -1}, std::tuple{5.0, 1.0, 1}}) {
    for (bool anti : {true, false}) {
      auto inst = make_ckink(K, L, tau, 1, anti);
      for (const auto& p : sample_points(inst.domain, kPoints, kSeed)) {
        auto r = ckink_ode_residual(*inst.kink, ChartPoint{p[0], p[1]}, inst.eps_d);
        worst_ode = std::max({worst_ode, r.ode.curvature.rel(), r.ode.kink.rel(), r.ode.traceless.rel()});
      }
    }
  }

  double worst_gap = 0.0;
  for (auto [K, L] : {std::pair{2.0, -0.5}, std::pair{2.0, -1.0}, std::pair{5.0, -1.0}}) {
    auto inst = make_ckink(K, L, -1, 1, true);
    const double want = std::sqrt(2.0 / K) * std::atanh(std::sqrt(std::abs(L) / (2.0 * K)));
    worst_gap = std::max({worst_gap, std::abs(warp_zero(inst, 2.5 / std::sqrt(K / 2.0)) - want),
                          std::abs(ckink_gap(K, L) - want)});
  }

  // |φ| against the undeformed kink φ = √(2K) tanh(√(K/2) ξ¹), both signs of L.
  // The deviation peaks at the core, where it is √|L| for τ = +.
  double worst_limit = 0.0;
  const double K = 2.0;
  for (auto [L, tau] : {std::pair{1e-6, 1}, std::pair{-1e-6, -1}}) {
    auto inst = make_ckink(K, L, tau, 1, true);
    const double gap = tau < 0 ? ckink_gap(K, L) : 0.0;
    for (int i = -300; i <= 300; ++i) {
      const double xi = 0.01 * i;
      if (tau < 0 && std::abs(xi) <= gap) continue;
      const double kink = std::sqrt(2.0 * K) * std::tanh(std::sqrt(K / 2.0) * xi);
      const double phi = inst.kink->phi(ChartPoint{0.0, xi})[0];
      worst_limit = std::max(worst_limit, std::abs(std::abs(phi) - std::abs(kink)));
    }
  }
  detail = fmt("ODE worst rel %.3g; gap vs bisection %.3g; |L|=1e-6 profile deviation %.3g", worst_ode, worst_gap,
               worst_limit);
  return worst_ode <= 1e-7 && worst_gap <= 1e-10 && worst_limit <= 1e-3;
}

// ---- 6 ----------------------------------------------------------------------

bool structure_conditions(std::string& detail) {
  double worst = 0.0;
  bool signatures = true;
  int n = 0;
  for (auto [rp, s, sigma, F2] : {std::tuple{2, 0, 1, 8.0}, std::tuple{2, 1, 1, 1.0}, std::tuple{2, 1, -1, -0.3},
                                  std::tuple{2, 0, -1, -3.0}, std::tuple{3, 1, 1, 80.0}, std::tuple{3, 0, -1, -2.0},
                                  std::tuple{3, 2, 1, 0.5}, std::tuple{3, 1, -1, -4.0}}) {
    auto inst = make_cpx_space_form(rp, s, sigma, F2);
    for (const auto& p : sample_points(inst.domain, kPoints, kSeed)) {
      auto sr = structure_residual(inst.g, inst.A, p, sigma);
      worst = std::max({worst, sr.j2.rel(), sr.hermitian.rel(), sr.dj.rel(), sr.holomorphic.rel()});
      const int neg = negative_eigenvalues(inst.g.tensor_at(p));
      signatures = signatures && (sigma > 0 ? neg % 2 == 0 : neg == rp);
    }
    ++n;
  }
  detail = fmt("%d forms in d=4,6; worst rel %.3g; signatures %s", n, worst, signatures ? "even/neutral" : "WRONG");
  return worst <= 1e-8 && signatures;
}

// ---- 7 ----------------------------------------------------------------------

bool adapted_frame(std::string& detail) {
  double worst = 0.0, worst_f = 0.0, worst_fc = 0.0;
  int n = 0;
  for (const auto& inst : default_grid()) {
    if (inst.family != Family::kink_warped && inst.family != Family::ckink3) continue;
    for (const auto& p : sample_points(inst.domain, kPoints, kSeed)) {
      auto ff = fundamental_forms(*inst.block, inst.A, p);
      worst = std::max({worst, ff.umbilic.rel(), ff.trace.rel()});
      if (ff.n > 1) worst_f = std::max(worst_f, ff.f.max_abs());
      else worst_fc = std::max(worst_fc, ff.f_constraint.rel());
    }
    ++n;
  }
  detail = fmt("%d instances; umbilic/trace worst rel %.3g; max|f| for n>1 %.3g; f vs F^-1 (n=1) worst rel %.3g", n,
               worst, worst_f, worst_fc);
  return n >= 6 && worst <= 1e-7 && worst_f <= 1e-7 && worst_fc <= 1e-7;
}

// ---- 8 ----------------------------------------------------------------------

bool engine_integrity(std::string& detail) {
  double worst_jet = 0.0;
  double worst_bianchi = 0.0;
  for (const auto& inst : default_grid()) {
    const auto& f = inst.g;
    for (const auto& p : sample_points(inst.domain, 5, kSeed)) {
      auto j = jet_eval(f, p, 2);
      double s1 = 0.0, s2 = 0.0;
      for (int c = 0; c < f.components(); ++c)
        for (int a = 0; a < f.dim(); ++a) {
          s1 = std::max(s1, std::abs(j.d1(c, a)));
          for (int b = 0; b < f.dim(); ++b) s2 = std::max(s2, std::abs(j.d2(c, a, b)));
        }
      for (int c = 0; c < f.components(); ++c)
        for (int a = 0; a < f.dim(); ++a) {
          worst_jet = std::max(worst_jet, oracle::rel_err(j.d1(c, a), oracle::d1(f, p, c, a), s1));
          for (int b = a; b < f.dim(); ++b)
            worst_jet = std::max(worst_jet, oracle::rel_err(j.d2(c, a, b), oracle::d2(f, p, c, a, b), s2));
        }
    }
    auto eg = inst.g.scaled(inst.eps_d);
    for (const auto& p : sample_points(inst.domain, 10, kSeed)) {
      auto geo = local_geometry(eg, &inst.A, p, with_derivatives(inst.eps_d * inst.expected.k));
      worst_bianchi = std::max({worst_bianchi, bianchi_residual(geo).rel(), bianchi_residual_computed(geo).rel()});
    }
  }

  double worst_w3 = 0.0;
  auto g3 = fixtures::lumpy3();
  Domain box3;
  box3.lo = {-1.0, -1.0, -1.0};
  box3.hi = {1.0, 1.0, 1.0};
  for (const auto& p : sample_points(box3, 20, kSeed)) {
    auto b = curvature_bundle(g3, p);
    worst_w3 = std::max(worst_w3, b.weyl.max_abs() / b.riemann.max_abs());
  }

  auto g4 = fixtures::lumpy4();
  auto h4 = SmoothField::make(4, {2, 0}, [g4](auto x, auto out) {
    using S = typename std::remove_cvref_t<decltype(x[0])>;
    S base[16];
    g4.eval(x, std::span<S>(base, 16));
    auto om = 1.0 + 0.1 * sin(x[1]);
    for (int i = 0; i < 16; ++i) out[i] = om * om * base[i];
  });
  auto weyl_up = [](const SmoothField& g, const ChartPoint& p) {
    auto b = curvature_bundle(g, p);
    auto gi = metric_inverse(g.tensor_at(p));
    TensorValue c(4, 3, 1);
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double s = 0.0;
            for (int x = 0; x < 4; ++x) s += b.weyl(m, n, k, x) * gi(x, l);
            c(m, n, k, l) = s;
          }
    return c;
  };
  double worst_conf = 0.0;
  Domain box4;
  box4.lo = {-0.5, -0.5, -0.5, -0.5};
  box4.hi = {0.5, 0.5, 0.5, 0.5};
  for (const auto& p : sample_points(box4, 10, kSeed)) {
    auto cg = weyl_up(g4, p);
    worst_conf = std::max(worst_conf, oracle::max_abs_diff(cg, weyl_up(h4, p)) / cg.max_abs());
  }

  detail = fmt("jets vs Richardson %.3g; Bianchi %.3g; d=3 Weyl %.3g; conformal invariance %.3g", worst_jet,
               worst_bianchi, worst_w3, worst_conf);
  return worst_jet <= 1e-5 && worst_bianchi <= 1e-6 && worst_w3 <= 1e-9 && worst_conf <= 1e-8;
}

// ---- 9 ----------------------------------------------------------------------

bool non_vacuity(std::string& detail) {
  int a_total = 0, a_caught = 0, k_total = 0, k_caught = 0, e_total = 0, e_caught = 0;
  double a_min = 1e300, k_min = 1e300, e_min = 1e300;
  for (const auto& inst : default_grid()) {
    const auto pts = sample_points(inst.domain, 10, kSeed);

    std::vector<PointResidual> shifted;
    for (const auto& p : pts) {
      auto ci = curvature_identity_residual(inst.g, inst.A, inst.expected.k + 0.1, p, inst.eps_d);
      shifted.push_back(PointResidual::worst(PointResidual::worst(ci.riemann, ci.ricci), ci.scalar));
    }
    const double km = max_rel(shifted);
    ++k_total;
    k_caught += km > 1e-3;
    k_min = std::min(k_min, km);

    // A = 0 for real space forms: scaling is the identity, and a space form
    // times a line is conformally flat for either sign of the extra direction.
    if (inst.expected.rank == 0) continue;

    auto A = inst.A.scaled(1.01);
    std::vector<PointResidual> scaled;
    for (const auto& p : pts) {
      auto gj = gj_residual(inst.g, A, p, inst.eps_d);
      scaled.push_back(PointResidual::worst(PointResidual::worst(gj.r_weyl, gj.r_ricci), gj.r_gauge));
    }
    const double am = max_rel(scaled);
    ++a_total;
    a_caught += am > 1e-3;
    a_min = std::min(a_min, am);

    const double em = weyl_vanishing(lift(inst.g, inst.A, -inst.eps_d), pts, 1e-7, kSeed).max_rel;
    ++e_total;
    e_caught += em > 1e-3;
    e_min = std::min(e_min, em);
  }
  detail = fmt("A*1.01 caught %d/%d (min %.3g); k+0.1 caught %d/%d (min %.3g); wrong eps_d caught %d/%d (min %.3g)",
               a_caught, a_total, a_min, k_caught, k_total, k_min, e_caught, e_total, e_min);
  return a_total > 0 && a_caught == a_total && k_caught == k_total && e_total > 0 && e_caught == e_total;
}

}  // namespace

int main() {
  criterion(1, "catalog soundness", catalog_soundness);
  criterion(2, "capstone lift", capstone_lift);
  criterion(3, "constant extraction", constant_extraction);
  criterion(4, "kink system", kink_system);
  criterion(5, "c-kink system", ckink_system);
  criterion(6, "structure conditions", structure_conditions);
  criterion(7, "adapted frame", adapted_frame);
  criterion(8, "engine integrity", engine_integrity);
  criterion(9, "non-vacuity", non_vacuity);
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
