#include "kkforms/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kkforms {

namespace {

double mx(std::initializer_list<double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

PointResidual residual_of(double abs, double scale) { return PointResidual{std::abs(abs), scale}; }

void require(bool ok, const char* msg) {
  if (!ok) throw InvalidArgument(msg);
}

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Scale of an expression built from two covariant derivatives of F:
// ∂∂F, ∂Γ·F, Γ·∂F and Γ·Γ·F.
double second_derivative_scale(const LocalGeometry& geo) {
  const double G = geo.christoffel.max_abs();
  const double F = geo.F.max_abs();
  return mx({geo.ddF.max_abs(), geo.d_christoffel.max_abs() * F, G * geo.dF.max_abs(), G * G * F});
}

// D_μ divF_ν
TensorValue d_div_f(const LocalGeometry& geo) { return covariant_derivative(geo.divF, geo.d_divF, geo.christoffel); }

}  // namespace

double PointResidual::rel() const {
  if (abs == 0.0) return 0.0;
  return abs / std::max(scale, kScaleFloor);
}

PointResidual PointResidual::worst(const PointResidual& a, const PointResidual& b) {
  return a.rel() >= b.rel() ? a : b;
}

PointResidual tensor_residual(const TensorValue& total, std::initializer_list<double> term_scales) {
  return PointResidual{total.max_abs(), mx(term_scales)};
}

nlohmann::ordered_json ResidualReport::to_json() const {
  nlohmann::ordered_json j;
  j["equation"] = equation;
  j["points"] = points;
  j["seed"] = seed;
  j["max_abs"] = max_abs;
  j["mean_abs"] = mean_abs;
  j["max_rel"] = max_rel;
  j["mean_rel"] = mean_rel;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  if (!note.empty()) j["note"] = note;
  return j;
}

ResidualReport aggregate(const std::string& equation, const std::vector<PointResidual>& per_point,
                         std::uint64_t seed, double tolerance) {
  ResidualReport r;
  r.equation = equation;
  r.points = static_cast<int>(per_point.size());
  r.seed = seed;
  r.tolerance = tolerance;
  if (per_point.empty()) {
    r.note = "empty sample";
    return r;
  }
  bool finite = true;
  for (const auto& p : per_point) {
    const double rel = p.rel();
    if (!std::isfinite(p.abs) || !std::isfinite(rel)) finite = false;
    r.max_abs = std::max(r.max_abs, p.abs);
    r.max_rel = std::max(r.max_rel, rel);
    r.mean_abs += p.abs;
    r.mean_rel += rel;
  }
  r.mean_abs /= static_cast<double>(per_point.size());
  r.mean_rel /= static_cast<double>(per_point.size());
  // Rounding can push the mean of equal values a hair above the max.
  r.mean_abs = std::min(r.mean_abs, r.max_abs);
  r.mean_rel = std::min(r.mean_rel, r.max_rel);
  r.pass = finite && r.max_rel <= tolerance;
  if (!finite) r.note = "non-finite residual";
  return r;
}

// ---- field equations ------------------------------------------------------

GJEquationSet gj_residual(const LocalGeometry& geo) {
  require(geo.dim >= 3, "gj_residual: requires d >= 3");
  require(geo.has_gauge && geo.has_weyl, "gj_residual: geometry needs gauge data and the Weyl tensor");
  const int d = geo.dim;
  const auto& g = geo.g;
  const auto& F = geo.F;
  const double F2 = geo.F2;

  TensorValue T(d, 2, 0);
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v) T(m, v) = geo.FF(m, v) - F2 * g(m, v) / (2.0 * (d - 1));

  GJEquationSet out;
  out.weyl_eq = TensorValue(d, 4, 0);
  double s_ff = 0.0, s_t = 0.0;
  const double ct = -3.0 / (2.0 * (d - 2));
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double ff = 0.5 * (F(m, v) * F(k, l) - 0.5 * (F(m, k) * F(l, v) - F(m, l) * F(k, v)));
          const double tt = ct * 0.5 *
                            (g(m, k) * T(l, v) - g(m, l) * T(k, v) - g(v, k) * T(l, m) + g(v, l) * T(k, m));
          s_ff = std::max(s_ff, std::abs(ff));
          s_t = std::max(s_t, std::abs(tt));
          out.weyl_eq(m, v, k, l) = geo.weyl(m, v, k, l) + ff + tt;
        }
  out.r_weyl = tensor_residual(out.weyl_eq, {geo.riemann.max_abs(), s_ff, s_t});

  out.ricci_eq = TensorValue(d, 2, 0);
  const double cb = (d + 1) / 4.0;
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v) {
      out.ricci_eq(m, v) = geo.ricci(m, v) - geo.scalar * g(m, v) / d - cb * (geo.FF(m, v) - F2 * g(m, v) / d);
    }
  const double gm = g.max_abs();
  out.r_ricci = tensor_residual(out.ricci_eq, {geo.ricci.max_abs(), geo.scalar * gm / d, cb * geo.FF.max_abs(),
                                       cb * F2 * gm / d});

  out.gauge_eq = TensorValue(d, 3, 0);
  double s_conn = 0.0;
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m)
      for (int v = 0; v < d; ++v) {
        out.gauge_eq(k, m, v) = geo.DF(k, m, v) + (g(k, m) * geo.divF(v) - g(k, v) * geo.divF(m)) / (d - 1);
        s_conn = std::max(s_conn, std::abs(geo.DF(k, m, v) - geo.dF(k, m, v)));
      }
  out.r_gauge = tensor_residual(out.gauge_eq, {geo.dF.max_abs(), s_conn, gm * geo.divF.max_abs() / (d - 1)});
  return out;
}

GJEquationSet gj_residual(const SmoothField& g, const SmoothField& A, const ChartPoint& p, int eps_d) {
  require(g.dim() >= 3, "gj_residual: requires d >= 3");
  GeometryOptions opt;
  return gj_residual(local_geometry(eps_d < 0 ? g.scaled(-1.0) : g, &A, p, opt));
}

CurvatureIdentity curvature_identity_residual(const LocalGeometry& geo, double k) {
  require(geo.has_gauge, "curvature_identity_residual: geometry needs gauge data");
  const int d = geo.dim;
  const auto& g = geo.g;
  const auto& F = geo.F;
  const auto& FF = geo.FF;
  const double F2 = geo.F2;
  const double c0 = 2.0 * (k + 0.125 * F2);

  CurvatureIdentity out;
  TensorValue diff(d, 4, 0);
  double s_gg = 0.0, s_gff = 0.0, s_ff = 0.0;
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v)
      for (int a = 0; a < d; ++a)
        for (int l = 0; l < d; ++l) {
          const double gg = c0 * 0.5 * (g(m, l) * g(a, v) - g(m, a) * g(l, v));
          const double gff = -0.5 * (0.5 * (g(m, a) * FF(l, v) - g(m, l) * FF(a, v)) -
                                     0.5 * (g(v, a) * FF(l, m) - g(v, l) * FF(a, m)));
          const double ff = -0.5 * (F(m, v) * F(a, l) - 0.5 * (F(m, a) * F(l, v) - F(m, l) * F(a, v)));
          s_gg = std::max(s_gg, std::abs(gg));
          s_gff = std::max(s_gff, std::abs(gff));
          s_ff = std::max(s_ff, std::abs(ff));
          diff(m, v, a, l) = geo.riemann(m, v, a, l) - gg - gff - ff;
        }
  out.riemann = tensor_residual(diff, {geo.riemann.max_abs(), s_gg, s_gff, s_ff});

  TensorValue ric(d, 2, 0);
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v) {
      ric(m, v) = geo.ricci(m, v) - (d - 1) * k * g(m, v) - (d + 1) / 8.0 * F2 * g(m, v) - (d + 1) / 4.0 * FF(m, v);
    }
  const double gm = g.max_abs();
  out.ricci = tensor_residual(ric, {geo.ricci.max_abs(), (d - 1) * k * gm, (d + 1) / 8.0 * F2 * gm,
                                    (d + 1) / 4.0 * FF.max_abs()});

  const double kk = d * (d - 1) * k;
  const double ff = (d + 1) * (d + 2) / 8.0 * F2;
  out.scalar = residual_of(geo.scalar - kk - ff, mx({geo.scalar, kk, ff}));
  return out;
}

CurvatureIdentity curvature_identity_residual(const SmoothField& g, const SmoothField& A, double k,
                                              const ChartPoint& p, int eps_d) {
  GeometryOptions opt;
  opt.weyl = false;
  return curvature_identity_residual(local_geometry(eps_d < 0 ? g.scaled(-1.0) : g, &A, p, opt), eps_d * k);
}

double point_k(const LocalGeometry& geo) {
  const int d = geo.dim;
  const double F2 = geo.has_gauge ? geo.F2 : 0.0;
  return (geo.scalar - (d + 1) * (d + 2) / 8.0 * F2) / (d * (d - 1));
}

KEstimate estimate_k(const SmoothField& g, const SmoothField& A, const std::vector<ChartPoint>& points, int eps_d) {
  require(!points.empty(), "estimate_k: empty sample");
  require(g.dim() >= 2, "estimate_k: requires d >= 2");
  const SmoothField ge = eps_d < 0 ? g.scaled(-1.0) : g;
  GeometryOptions opt;
  opt.weyl = false;
  KEstimate e;
  e.min = std::numeric_limits<double>::infinity();
  e.max = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const double k = eps_d * point_k(local_geometry(ge, &A, p, opt));
    e.mean += k;
    e.min = std::min(e.min, k);
    e.max = std::max(e.max, k);
  }
  e.points = static_cast<int>(points.size());
  e.mean = std::clamp(e.mean / e.points, e.min, e.max);
  e.spread = e.max - e.min;
  return e;
}

TracelessKink traceless_kink_residual(const LocalGeometry& geo, double k) {
  require(geo.has_gauge && geo.has_derivatives, "traceless_kink_residual: geometry needs gauge data and derivatives");
  const int d = geo.dim;
  const auto& gi = geo.ginv;
  const TensorValue ddiv = d_div_f(geo);
  const TensorValue ddf = covariant_derivative(geo.DF, geo.d_DF, geo.christoffel);

  TensorValue lap(d, 2, 0);  // D²F_{μν}
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const double w = gi(a, b);
      if (w == 0.0) continue;
      for (int m = 0; m < d; ++m)
        for (int v = 0; v < d; ++v) lap(m, v) += w * ddf(a, b, m, v);
    }

  const double S2 = second_derivative_scale(geo) * gi.max_abs();
  TracelessKink out;
  TensorValue tl(d, 2, 0), sym(d, 2, 0);
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v) {
      tl(m, v) = ddiv(m, v) / (d - 1) + 0.5 * lap(m, v);
      sym(m, v) = ddiv(m, v) + ddiv(v, m);
    }
  out.traceless = tensor_residual(tl, {S2});
  out.traceless_sym = tensor_residual(sym, {2.0 * S2});

  // Mixed form: ½D²F_μ^ν + (k + F²/8)F_μ^ν − ¼F_μ^κF_κ^λF_λ^ν
  const auto& Fm = geo.F_mixed;
  const double c = k + 0.125 * geo.F2;
  TensorValue kk(d, 1, 1);
  double s_lap = 0.0, s_lin = 0.0, s_cub = 0.0;
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v) {
      double lm = 0.0, cub = 0.0;
      for (int q = 0; q < d; ++q) lm += lap(m, q) * gi(q, v);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) cub += Fm(m, a) * Fm(a, b) * Fm(b, v);
      s_lap = std::max(s_lap, std::abs(0.5 * lm));
      s_lin = std::max(s_lin, std::abs(c * Fm(m, v)));
      s_cub = std::max(s_cub, std::abs(0.25 * cub));
      kk(m, v) = 0.5 * lm + c * Fm(m, v) - 0.25 * cub;
    }
  out.kink = tensor_residual(kk, {s_lap, 0.5 * S2 * gi.max_abs(), s_lin, s_cub});
  return out;
}

TracelessKink traceless_kink_residual(const SmoothField& g, const SmoothField& A, double k, const ChartPoint& p,
                                      int eps_d) {
  GeometryOptions opt;
  opt.derivatives = true;
  opt.weyl = false;
  return traceless_kink_residual(local_geometry(eps_d < 0 ? g.scaled(-1.0) : g, &A, p, opt), eps_d * k);
}

PointResidual killing_from_gauge(const LocalGeometry& geo) {
  require(geo.has_gauge && geo.has_derivatives, "killing_from_gauge: geometry needs gauge data and derivatives");
  const int d = geo.dim;
  TensorValue DK = d_div_f(geo);
  DK *= 1.0 / (d - 1);
  return PointResidual{killing_residual(DK), 2.0 * second_derivative_scale(geo) * geo.ginv.max_abs() / (d - 1)};
}

StructureResidual structure_residual(const LocalGeometry& geo, int sigma, std::optional<double> coefficient) {
  require(geo.has_gauge, "structure_residual: geometry needs gauge data");
  require(geo.has_J && geo.F2 != 0.0, "structure_residual: F^2 = 0, structure undefined");
  require(geo.has_derivatives, "structure_residual: geometry needs derivatives");
  const int d = geo.dim;
  const auto& g = geo.g;
  const auto& J = geo.J;
  StructureResidual out;
  out.sigma = sigma != 0 ? (sigma > 0 ? 1 : -1) : static_cast<int>(sign_of(geo.F2));
  out.coefficient = coefficient.value_or(geo.F2 / (4.0 * d));
  const double s = out.sigma;
  const double c = out.coefficient;

  TensorValue j2(d, 1, 1), herm(d, 2, 0), Jl(d, 2, 0);
  double s_jj = 0.0, s_jjg = 0.0;
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v) {
      double a = 0.0, b = 0.0, l = 0.0;
      for (int k = 0; k < d; ++k) {
        a += J(m, k) * J(k, v);
        l += J(m, k) * g(k, v);
        for (int q = 0; q < d; ++q) b += J(m, k) * J(v, q) * g(k, q);
      }
      s_jj = std::max(s_jj, std::abs(a));
      s_jjg = std::max(s_jjg, std::abs(b));
      j2(m, v) = a + (m == v ? s : 0.0);
      herm(m, v) = b - s * g(m, v);
      Jl(m, v) = l;
    }
  out.j2 = tensor_residual(j2, {s_jj, 1.0});
  out.hermitian = tensor_residual(herm, {s_jjg, g.max_abs()});

  TensorValue DJ = covariant_derivative(J, geo.d_J, geo.christoffel);
  out.dj = tensor_residual(DJ, {geo.d_J.max_abs(), geo.christoffel.max_abs() * J.max_abs()});

  TensorValue holo(d, 4, 0);
  double s_model = 0.0;
  for (int m = 0; m < d; ++m)
    for (int v = 0; v < d; ++v)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double model = c * (g(m, l) * g(k, v) - g(m, k) * g(l, v) + s * Jl(m, l) * Jl(v, k) -
                                    s * Jl(m, k) * Jl(v, l) - 2.0 * s * Jl(m, v) * Jl(k, l));
          s_model = std::max(s_model, std::abs(model));
          holo(m, v, k, l) = geo.riemann(m, v, k, l) - model;
        }
  out.holomorphic = tensor_residual(holo, {geo.riemann.max_abs(), s_model});
  return out;
}

StructureResidual structure_residual(const SmoothField& g, const SmoothField& A, const ChartPoint& p, int sigma,
                                     std::optional<double> coefficient, int eps_d) {
  GeometryOptions opt;
  opt.derivatives = true;
  opt.weyl = false;
  return structure_residual(local_geometry(eps_d < 0 ? g.scaled(-1.0) : g, &A, p, opt), sigma, coefficient);
}

namespace {

PointResidual cyclic_bianchi(const TensorValue& R, const TensorValue& dR, const TensorValue& gamma) {
  const int d = R.dim();
  TensorValue DR = covariant_derivative(R, dR, gamma);
  TensorValue cyc(d, 5, 0);
  for (int x = 0; x < d; ++x)
    for (int m = 0; m < d; ++m)
      for (int v = 0; v < d; ++v)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) cyc(x, m, v, k, l) = DR(x, m, v, k, l) + DR(v, x, m, k, l) + DR(m, v, x, k, l);
  return tensor_residual(cyc, {dR.max_abs(), gamma.max_abs() * R.max_abs()});
}

}  // namespace

PointResidual bianchi_residual(const LocalGeometry& geo) {
  require(geo.has_model && geo.has_derivatives, "bianchi_residual: geometry needs k and derivatives");
  return cyclic_bianchi(geo.model, geo.d_model, geo.christoffel);
}

PointResidual bianchi_residual_computed(const LocalGeometry& geo) {
  require(geo.has_derivatives, "bianchi_residual_computed: geometry needs derivatives");
  return cyclic_bianchi(geo.riemann, geo.d_riemann, geo.christoffel);
}

// ---- two-dimensional kink systems -----------------------------------------

KinkOdeResidual kink_ode_residual(const SmoothField& g2, const SmoothField& phi, double k, int sigma,
                                  const ChartPoint& p, int eps_d, double l2, int tau, const SmoothField* A2) {
  require(g2.dim() == 2, "kink_ode_residual: requires a two-dimensional geometry");
  require(phi.dim() == 2 && phi.components() == 1, "kink_ode_residual: phi must be a scalar on the same chart");
  GeometryOptions opt;
  opt.weyl = false;
  const LocalGeometry geo = local_geometry(eps_d < 0 ? g2.scaled(-1.0) : g2, A2, p, opt);
  const FieldJet pj = jet_eval(phi, p, 2);
  const double ph = pj.value(0);
  require(l2 == 0.0 || ph != 0.0, "kink_ode_residual: phi = 0, centrifugal term singular");
  const double ke = eps_d * k;
  const double s = sigma;
  const double t = tau;
  const auto& gi = geo.ginv;
  const auto& G = geo.christoffel;

  double H[2][2];
  double lap = 0.0;
  double s_dd = 0.0, s_conn = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double conn = 0.0;
      for (int c = 0; c < 2; ++c) conn += G(a, b, c) * pj.d1(0, c);
      H[a][b] = pj.d2(0, a, b) - conn;
      lap += gi(a, b) * H[a][b];
      s_dd = std::max(s_dd, std::abs(pj.d2(0, a, b)));
      s_conn = std::max(s_conn, std::abs(conn));
    }

  KinkOdeResidual out;
  const double cen_R = l2 != 0.0 ? t * 3.0 * l2 / std::pow(ph, 4) : 0.0;
  const double cen_K = l2 != 0.0 ? t * l2 / std::pow(ph, 3) : 0.0;
  out.curvature = residual_of(geo.scalar - 2.0 * ke - 3.0 * s * ph * ph - cen_R,
                              mx({geo.scalar, 2.0 * ke, 3.0 * ph * ph, cen_R}));
  const double gim = gi.max_abs();
  out.kink = residual_of(lap + 2.0 * ke * ph + s * ph * ph * ph - cen_K,
                         mx({gim * s_dd, gim * s_conn, 2.0 * ke * ph, ph * ph * ph, cen_K}));
  double tl = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) tl = std::max(tl, std::abs(H[a][b] - 0.5 * geo.g(a, b) * lap));
  out.traceless = residual_of(tl, mx({s_dd, s_conn, 0.5 * geo.g.max_abs() * lap}));
  if (A2) out.gauge = residual_of(geo.F2 - 2.0 * s * ph * ph, mx({geo.F2, 2.0 * ph * ph}));
  return out;
}

CKinkResidual ckink_ode_residual(const KinkData& kink, const ChartPoint& p, int eps_d) {
  require(kink.centrifugal, "ckink_ode_residual: kink data has no centrifugal deformation");
  require(kink.lambda.valid(), "ckink_ode_residual: kink data has no warp factor");
  CKinkResidual out;
  out.ode = kink_ode_residual(kink.g2, kink.phi, kink.k, kink.sigma, p, eps_d, kink.l2, kink.tau, &kink.A2);
  const double ph = kink.phi(p)[0];
  const double lam = eps_d * kink.lambda(p)[0];
  const double want = kink.tau * 2.0 * kink.sigma * ph * ph;
  out.lambda = residual_of(lam - want, mx({lam, want}));
  out.k_map = std::abs(eps_d * kink.k - kink.K - 0.75 * kink.L);
  const double h = kink.K + 0.5 * kink.L;
  out.l2_map = std::abs(kink.l2 - 2.0 * kink.tau * h * h * kink.L);
  return out;
}

// ---- adapted frame --------------------------------------------------------

FundamentalForms fundamental_forms(const BlockMetric& block, const SmoothField& A, const ChartPoint& p) {
  const int r = block.r;
  const int n = block.n;
  const int d = r + n;
  require(r >= 1 && n >= 1 && block.assembled.valid(), "fundamental_forms: not a block metric");
  require(A.dim() == d && A.valence().lower == 1 && A.valence().upper == 0,
          "fundamental_forms: A must be a covector on the block chart");
  const std::size_t D = static_cast<std::size_t>(d);
  auto c2 = [D](int a, int b) { return static_cast<int>(static_cast<std::size_t>(a) * D + static_cast<std::size_t>(b)); };

  const FieldJet gj = jet_eval(block.ext, p, 1);
  const FieldJet hj = jet_eval(block.h, p, 1);
  const FieldJet aj = jet_eval(block.a, p, 1);
  const FieldJet Aj = jet_eval(A, p, 2);
  auto a = [&](int al, int i) { return aj.value(c2(al, i)); };       // a^i_α
  auto da = [&](int x, int al, int i) { return aj.d1(c2(al, i), x); };  // ∂_x a^i_α
  auto h = [&](int i, int j) { return hj.value(c2(i, j)); };
  auto dh = [&](int x, int i, int j) { return hj.d1(c2(i, j), x); };

  FundamentalForms out;
  out.r = r;
  out.n = n;

  // f^i_{αβ}
  out.f = TensorValue(d, 3, 0);
  double s_f = 0.0;
  for (int i = r; i < d; ++i)
    for (int al = 0; al < r; ++al)
      for (int be = 0; be < r; ++be) {
        double v = da(al, be, i) - da(be, al, i);
        s_f = std::max(s_f, std::abs(da(al, be, i)));
        for (int j = r; j < d; ++j) {
          const double t = -a(al, j) * da(j, be, i) + a(be, j) * da(j, al, i);
          s_f = std::max(s_f, std::abs(a(al, j) * da(j, be, i)));
          v += t;
        }
        out.f(i, al, be) = v;
      }

  // Ê_{iαβ} = ½(∂_i g_{αβ} + h_{ij} f^j_{αβ})
  out.E_hat = TensorValue(d, 3, 0);
  for (int i = r; i < d; ++i)
    for (int al = 0; al < r; ++al)
      for (int be = 0; be < r; ++be) {
        double hf = 0.0;
        for (int j = r; j < d; ++j) hf += h(i, j) * out.f(j, al, be);
        out.E_hat(i, al, be) = 0.5 * (gj.d1(c2(al, be), i) + hf);
      }

  // E_{αij} = ½(∂_α h_{ij} − (L_{a_α} h)_{ij})
  out.E = TensorValue(d, 3, 0);
  double s_E = 0.0;
  for (int al = 0; al < r; ++al)
    for (int i = r; i < d; ++i)
      for (int j = r; j < d; ++j) {
        double lie = 0.0;
        for (int k = r; k < d; ++k) {
          lie += a(al, k) * dh(k, i, j) + h(k, j) * da(i, al, k) + h(i, k) * da(j, al, k);
        }
        s_E = std::max({s_E, std::abs(dh(al, i, j)), std::abs(lie)});
        out.E(al, i, j) = 0.5 * (dh(al, i, j) - lie);
      }

  // Internal inverse metric.
  std::vector<double> hb(static_cast<std::size_t>(n * n)), hinv(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hb[static_cast<std::size_t>(i * n + j)] = h(r + i, r + j);
  if (!invert_matrix<double>(n, hb, hinv)) throw DegenerateMetric("fundamental_forms: singular internal metric");
  auto hi = [&](int i, int j) { return hinv[static_cast<std::size_t>((i - r) * n + (j - r))]; };

  std::vector<double> trE(static_cast<std::size_t>(r), 0.0);
  for (int al = 0; al < r; ++al)
    for (int i = r; i < d; ++i)
      for (int j = r; j < d; ++j) trE[static_cast<std::size_t>(al)] += hi(i, j) * out.E(al, i, j);

  double umb = 0.0;
  for (int ga = 0; ga < r; ++ga)
    for (int i = r; i < d; ++i)
      for (int j = r; j < d; ++j) {
        umb = std::max(umb, std::abs(out.E(ga, i, j) - trE[static_cast<std::size_t>(ga)] * h(i, j) / n));
      }
  out.umbilic = residual_of(umb, 0.5 * s_E);

  // External geometry: metric block, Christoffel symbols along ξ, residual field.
  const std::size_t R = static_cast<std::size_t>(r);
  std::vector<double> ge(R * R), gi(R * R);
  for (int al = 0; al < r; ++al)
    for (int be = 0; be < r; ++be) ge[static_cast<std::size_t>(al * r + be)] = gj.value(c2(al, be));
  if (!invert_matrix<double>(r, ge, gi)) throw DegenerateMetric("fundamental_forms: singular external metric");
  auto GI = [&](int al, int be) { return gi[static_cast<std::size_t>(al * r + be)]; };
  auto dg = [&](int x, int al, int be) { return gj.d1(c2(al, be), x); };
  std::vector<double> Gam(R * R * R, 0.0);  // [α][β][γ] Γ_{αβ}^γ
  auto Gm = [&](int al, int be, int ga) -> double& {
    return Gam[(static_cast<std::size_t>(al) * R + static_cast<std::size_t>(be)) * R + static_cast<std::size_t>(ga)];
  };
  for (int al = 0; al < r; ++al)
    for (int be = 0; be < r; ++be)
      for (int ga = 0; ga < r; ++ga) {
        double s = 0.0;
        for (int de = 0; de < r; ++de) s += GI(ga, de) * 0.5 * (dg(al, de, be) + dg(be, de, al) - dg(de, al, be));
        Gm(al, be, ga) = s;
      }
  auto Fx = [&](int al, int be) { return Aj.d1(be, al) - Aj.d1(al, be); };
  auto dFx = [&](int x, int al, int be) { return Aj.d2(be, x, al) - Aj.d2(al, x, be); };

  std::vector<double> Fm(R * R, 0.0), Finv(R * R, 0.0);  // F_α^β and its inverse
  for (int al = 0; al < r; ++al)
    for (int be = 0; be < r; ++be) {
      double s = 0.0;
      for (int ga = 0; ga < r; ++ga) s += Fx(al, ga) * GI(ga, be);
      Fm[static_cast<std::size_t>(al * r + be)] = s;
    }
  const bool invertible = invert_matrix<double>(r, Fm, Finv);

  if (r >= 2 && invertible) {
    // div_β = g^{γδ} ∇_γF_{βδ}
    std::vector<double> div(R, 0.0);
    double s_dF = 0.0, s_conn = 0.0;
    for (int be = 0; be < r; ++be)
      for (int ga = 0; ga < r; ++ga)
        for (int de = 0; de < r; ++de) {
          double conn = 0.0;
          for (int ep = 0; ep < r; ++ep) conn += Gm(ga, be, ep) * Fx(ep, de) + Gm(ga, de, ep) * Fx(be, ep);
          s_dF = std::max(s_dF, std::abs(dFx(ga, be, de)));
          s_conn = std::max(s_conn, std::abs(conn));
          div[static_cast<std::size_t>(be)] += GI(ga, de) * (dFx(ga, be, de) - conn);
        }
    double fimax = 0.0;
    for (double v : Finv) fimax = std::max(fimax, std::abs(v));
    double gimax = 0.0;
    for (double v : gi) gimax = std::max(gimax, std::abs(v));
    const double coef = static_cast<double>(n) / (r - 1);
    double tr = 0.0, s_tr = 0.0;
    for (int al = 0; al < r; ++al) {
      double rhs = 0.0;
      for (int be = 0; be < r; ++be) rhs += Finv[static_cast<std::size_t>(al * r + be)] * div[static_cast<std::size_t>(be)];
      rhs *= coef;
      tr = std::max(tr, std::abs(trE[static_cast<std::size_t>(al)] - rhs));
      s_tr = std::max({s_tr, std::abs(trE[static_cast<std::size_t>(al)]), std::abs(rhs)});
    }
    double himax = 0.0;
    for (double v : hinv) himax = std::max(himax, std::abs(v));
    out.trace = residual_of(tr, mx({s_tr, coef * fimax * gimax * s_dF, coef * fimax * gimax * s_conn, s_E * himax}));
  }

  if (n > 1) {
    out.f_constraint = PointResidual{out.f.max_abs(), s_f};
  } else if (invertible) {
    // f_{αβ} + (1/r)(f_{γδ}F^{γδ})(F⁻¹)_{αβ}
    const int i = r;
    double fF = 0.0;
    for (int ga = 0; ga < r; ++ga)
      for (int de = 0; de < r; ++de) {
        double Fup = 0.0;
        for (int x = 0; x < r; ++x)
          for (int y = 0; y < r; ++y) Fup += GI(ga, x) * GI(de, y) * Fx(x, y);
        fF += out.f(i, ga, de) * Fup;
      }
    double res = 0.0, s_rhs = 0.0;
    for (int al = 0; al < r; ++al)
      for (int be = 0; be < r; ++be) {
        double finv_l = 0.0;
        for (int ga = 0; ga < r; ++ga) finv_l += Finv[static_cast<std::size_t>(al * r + ga)] * ge[static_cast<std::size_t>(ga * r + be)];
        const double rhs = fF * finv_l / r;
        s_rhs = std::max(s_rhs, std::abs(rhs));
        res = std::max(res, std::abs(out.f(i, al, be) + rhs));
      }
    out.f_constraint = residual_of(res, mx({out.f.max_abs(), s_rhs, s_f}));
  } else {
    out.f_constraint = PointResidual{out.f.max_abs(), s_f};
  }
  return out;
}

}  // namespace kkforms
