#include "kkforms/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "geometry_core.hpp"

namespace kkforms {

namespace {

using detail::CoreOptions;
using detail::geometry_core;

std::size_t ipow(int d, int r) {
  std::size_t n = 1;
  for (int i = 0; i < r; ++i) n *= static_cast<std::size_t>(d);
  return n;
}

template <class T>
std::vector<T> christoffel_core(int d, std::span<const T> g, std::span<const T> dg) {
  const std::size_t n = static_cast<std::size_t>(d);
  std::vector<T> ginv(n * n);
  if (!invert_matrix<T>(d, g, ginv)) throw DegenerateMetric("christoffel: singular metric");
  std::vector<T> gamma(n * n * n, T(0.0));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = m; v < n; ++v)
      for (std::size_t l = 0; l < n; ++l) {
        T s(0.0);
        for (std::size_t q = 0; q < n; ++q) {
          s += ginv[l * n + q] * 0.5 * (dg[(m * n + q) * n + v] + dg[(v * n + q) * n + m] - dg[(q * n + m) * n + v]);
        }
        gamma[(m * n + v) * n + l] = s;
        gamma[(v * n + m) * n + l] = s;
      }
  return gamma;
}

// out[a][idx] = ∂_a X[idx] − Σ_lower Γ_{a i}^σ X[..σ..] + Σ_upper Γ_{aσ}^j X[..σ..]
template <class T>
void cov_deriv_core(int d, int lower, int upper, std::span<const T> x, std::span<const T> dx,
                    std::span<const T> gamma, std::span<T> out) {
  const int rank = lower + upper;
  const std::size_t n = static_cast<std::size_t>(d);
  const std::size_t N = ipow(d, rank);
  std::vector<std::size_t> stride(static_cast<std::size_t>(rank));
  for (int s = 0; s < rank; ++s) stride[static_cast<std::size_t>(s)] = ipow(d, rank - 1 - s);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t off = 0; off < N; ++off) {
      T v = dx[a * N + off];
      for (int s = 0; s < rank; ++s) {
        const std::size_t st = stride[static_cast<std::size_t>(s)];
        const std::size_t i = (off / st) % n;
        const std::size_t base = off - i * st;
        for (std::size_t q = 0; q < n; ++q) {
          if (s < lower) {
            v -= gamma[(a * n + i) * n + q] * x[base + q * st];
          } else {
            v += gamma[(a * n + q) * n + i] * x[base + q * st];
          }
        }
      }
      out[a * N + off] = v;
    }
  }
}

TensorValue from_vec(int d, int lower, int upper, const std::vector<double>& v) {
  TensorValue t(d, lower, upper);
  std::copy(v.begin(), v.end(), t.data().begin());
  return t;
}

void require_metric_field(const SmoothField& g) {
  if (g.valence().lower != 2 || g.valence().upper != 0) {
    throw InvalidArgument("metric field must have two covariant slots");
  }
}

struct Jets {
  std::vector<double> g, dg, ddg, dddg;  // [..][μν] with derivative slots leading
  std::vector<double> dA, ddA, dddA;
};

void unpack(const FieldJet& j, int order, std::vector<double>& v0, std::vector<double>& v1, std::vector<double>& v2,
            std::vector<double>& v3) {
  const int d = j.dim();
  const int nc = j.components();
  const std::size_t n = static_cast<std::size_t>(d);
  const std::size_t C = static_cast<std::size_t>(nc);
  v0.assign(C, 0.0);
  for (int c = 0; c < nc; ++c) v0[static_cast<std::size_t>(c)] = j.value(c);
  if (order >= 1) {
    v1.assign(n * C, 0.0);
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < nc; ++c) v1[static_cast<std::size_t>(a) * C + static_cast<std::size_t>(c)] = j.d1(c, a);
  }
  if (order >= 2) {
    v2.assign(n * n * C, 0.0);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < nc; ++c)
          v2[(static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * C + static_cast<std::size_t>(c)] =
              j.d2(c, a, b);
  }
  if (order >= 3) {
    v3.assign(n * n * n * C, 0.0);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e)
          for (int c = 0; c < nc; ++c)
            v3[((static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n + static_cast<std::size_t>(e)) *
                   C +
               static_cast<std::size_t>(c)] = j.d3(c, a, b, e);
  }
}

// Pair each entry of `lo` with its partial along a; `hi` carries one extra
// leading derivative slot (∂_a X at hi[a*|lo| + i]).
std::vector<Dual1> seeded(const std::vector<double>& lo, const std::vector<double>& hi, std::size_t a) {
  const std::size_t N = lo.size();
  std::vector<Dual1> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = Dual1{lo[i], hi[a * N + i]};
  return out;
}

}  // namespace

TensorValue christoffel(const SmoothField& g, const ChartPoint& p) {
  require_metric_field(g);
  FieldJet j = jet_eval(g, p, 1);
  std::vector<double> v0, v1, v2, v3;
  unpack(j, 1, v0, v1, v2, v3);
  const int d = g.dim();
  metric_inverse(TensorValue::matrix(d, v0));
  auto gam = christoffel_core<double>(d, v0, v1);
  return from_vec(d, 2, 1, gam);
}

CurvatureBundle curvature_bundle(const SmoothField& g, const ChartPoint& p, bool with_weyl) {
  require_metric_field(g);
  const int d = g.dim();
  if (with_weyl && d < 3) throw InvalidArgument("curvature_bundle: Weyl tensor needs d >= 3");
  FieldJet j = jet_eval(g, p, 2);
  std::vector<double> v0, v1, v2, v3;
  unpack(j, 2, v0, v1, v2, v3);
  metric_inverse(TensorValue::matrix(d, v0));
  CoreOptions opt;
  opt.weyl = with_weyl;
  auto o = geometry_core<double>(d, v0, v1, v2, {}, {}, opt);
  CurvatureBundle b;
  b.christoffel = from_vec(d, 2, 1, o.gamma);
  b.riemann_up = from_vec(d, 3, 1, o.riemann_up);
  b.riemann = from_vec(d, 4, 0, o.riemann);
  b.ricci = from_vec(d, 2, 0, o.ricci);
  b.scalar = o.scalar;
  if (with_weyl) {
    b.weyl = from_vec(d, 4, 0, o.weyl);
    b.has_weyl = true;
  }
  return b;
}

TensorValue covariant_derivative(const TensorValue& x, const TensorValue& dx, const TensorValue& gamma) {
  const int d = x.dim();
  if (dx.dim() != d || gamma.dim() != d || dx.lower() != x.lower() + 1 || dx.upper() != x.upper() ||
      gamma.lower() != 2 || gamma.upper() != 1) {
    throw InvalidArgument("covariant_derivative: shape mismatch");
  }
  TensorValue out(d, x.lower() + 1, x.upper());
  cov_deriv_core<double>(d, x.lower(), x.upper(), x.data(), dx.data(), gamma.data(), out.data());
  return out;
}

TensorValue covariant_derivative(const SmoothField& t, const SmoothField& g, const ChartPoint& p) {
  if (t.dim() != g.dim()) throw InvalidArgument("covariant_derivative: dimension mismatch");
  const int d = g.dim();
  FieldJet tj = jet_eval(t, p, 1);
  std::vector<double> x0, x1, x2, x3;
  unpack(tj, 1, x0, x1, x2, x3);
  TensorValue x = from_vec(d, t.valence().lower, t.valence().upper, x0);
  TensorValue dx = from_vec(d, t.valence().lower + 1, t.valence().upper, x1);
  return covariant_derivative(x, dx, christoffel(g, p));
}

TensorValue two_form_laplacian(const SmoothField& F, const SmoothField& g, const ChartPoint& p) {
  require_metric_field(g);
  if (F.valence().lower != 2 || F.valence().upper != 0 || F.dim() != g.dim()) {
    throw InvalidArgument("two_form_laplacian: F must be a covariant two-tensor on the same chart");
  }
  const int d = g.dim();
  const std::size_t n = static_cast<std::size_t>(d);
  std::vector<double> g0, g1, g2, g3, f0, f1, f2, f3;
  unpack(jet_eval(g, p, 2), 2, g0, g1, g2, g3);
  unpack(jet_eval(F, p, 2), 2, f0, f1, f2, f3);
  TensorValue ginv = metric_inverse(TensorValue::matrix(d, g0));
  auto gamma = christoffel_core<double>(d, g0, g1);

  std::vector<double> DF(n * n * n);
  cov_deriv_core<double>(d, 2, 0, f0, f1, gamma, DF);

  // ∂_a(DF) by one seeded first-order pass per direction.
  std::vector<double> dDF(n * DF.size());
  for (std::size_t a = 0; a < n; ++a) {
    auto gT = seeded(g0, g1, a);
    auto dgT = seeded(g1, g2, a);
    auto fT = seeded(f0, f1, a);
    auto dfT = seeded(f1, f2, a);
    auto gamT = christoffel_core<Dual1>(d, gT, dgT);
    std::vector<Dual1> out(DF.size());
    cov_deriv_core<Dual1>(d, 2, 0, fT, dfT, gamT, out);
    for (std::size_t i = 0; i < DF.size(); ++i) dDF[a * DF.size() + i] = out[i].e;
  }
  std::vector<double> DDF(n * DF.size());
  cov_deriv_core<double>(d, 3, 0, DF, dDF, gamma, DDF);

  TensorValue lap(d, 2, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double w = ginv(a, b);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < n * n; ++i) lap.data()[i] += w * DDF[(a * n + b) * n * n + i];
    }
  return lap;
}

double killing_residual(const TensorValue& DK) {
  if (DK.lower() != 2 || DK.upper() != 0) throw InvalidArgument("killing_residual: need D_μK_ν");
  double m = 0.0;
  for (int a = 0; a < DK.dim(); ++a)
    for (int b = 0; b < DK.dim(); ++b) m = std::max(m, std::abs(DK(a, b) + DK(b, a)));
  return m;
}

double killing_residual(const SmoothField& K, const SmoothField& g, const ChartPoint& p) {
  if (K.valence().lower != 1 || K.valence().upper != 0) {
    throw InvalidArgument("killing_residual: K must be a covector field");
  }
  return killing_residual(covariant_derivative(K, g, p));
}

LocalGeometry local_geometry(const SmoothField& g, const SmoothField* A, const ChartPoint& p,
                             const GeometryOptions& opt) {
  require_metric_field(g);
  const int d = g.dim();
  const std::size_t n = static_cast<std::size_t>(d);
  if (A && (A->dim() != d || A->valence().lower != 1 || A->valence().upper != 0)) {
    throw InvalidArgument("local_geometry: A must be a covector field on the metric's chart");
  }
  const int order = opt.derivatives ? 3 : 2;
  Jets J;
  unpack(jet_eval(g, p, order), order, J.g, J.dg, J.ddg, J.dddg);
  std::vector<double> A0;
  if (A) unpack(jet_eval(*A, p, order), order, A0, J.dA, J.ddA, J.dddA);

  LocalGeometry out;
  out.dim = d;
  out.g = TensorValue::matrix(d, J.g);
  out.ginv = metric_inverse(out.g);

  CoreOptions co;
  co.gauge = A != nullptr;
  co.weyl = opt.weyl && d >= 3;
  co.model = opt.k.has_value() && A != nullptr;
  co.k = opt.k.value_or(0.0);
  if (opt.k && !A) {
    // No potential: the model reduces to constant sectional curvature; feed zero jets.
    co.gauge = true;
    co.model = true;
    J.dA.assign(n * n, 0.0);
    J.ddA.assign(n * n * n, 0.0);
    J.dddA.assign(n * n * n * n, 0.0);
  }
  auto o = geometry_core<double>(d, J.g, J.dg, J.ddg, J.dA, J.ddA, co);

  out.christoffel = from_vec(d, 2, 1, o.gamma);
  out.d_christoffel = from_vec(d, 3, 1, o.dgamma);
  out.riemann_up = from_vec(d, 3, 1, o.riemann_up);
  out.riemann = from_vec(d, 4, 0, o.riemann);
  out.ricci = from_vec(d, 2, 0, o.ricci);
  out.scalar = o.scalar;
  if (co.weyl) {
    out.weyl = from_vec(d, 4, 0, o.weyl);
    out.has_weyl = true;
  }
  if (o.gauge) {
    out.has_gauge = true;
    out.F = from_vec(d, 2, 0, o.F);
    out.F_mixed = from_vec(d, 1, 1, o.Fmix);
    out.FF = from_vec(d, 2, 0, o.FF);
    out.DF = from_vec(d, 3, 0, o.DF);
    out.divF = from_vec(d, 1, 0, o.divF);
    out.F2 = o.F2;
    out.dF = TensorValue(d, 3, 0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t v = 0; v < n; ++v)
          out.dF.data()[(k * n + m) * n + v] = J.ddA[(k * n + m) * n + v] - J.ddA[(k * n + v) * n + m];
  }
  if (co.model) {
    out.has_model = true;
    out.model = from_vec(d, 4, 0, o.model);
  }
  if (o.has_J) {
    out.has_J = true;
    out.J = from_vec(d, 1, 1, o.J);
  }
  if (!opt.derivatives) return out;

  out.has_derivatives = true;
  out.d_riemann = TensorValue(d, 5, 0);
  if (o.gauge) {
    out.ddF = TensorValue(d, 4, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
          for (std::size_t v = 0; v < n; ++v)
            out.ddF.data()[((a * n + k) * n + m) * n + v] =
                J.dddA[((a * n + k) * n + m) * n + v] - J.dddA[((a * n + k) * n + v) * n + m];
    out.d_DF = TensorValue(d, 4, 0);
    out.d_divF = TensorValue(d, 2, 0);
  }
  if (co.model) out.d_model = TensorValue(d, 5, 0);
  if (o.has_J) out.d_J = TensorValue(d, 2, 1);

  CoreOptions cd = co;
  cd.weyl = false;
  for (std::size_t a = 0; a < n; ++a) {
    auto gT = seeded(J.g, J.dg, a);
    auto dgT = seeded(J.dg, J.ddg, a);
    auto ddgT = seeded(J.ddg, J.dddg, a);
    std::vector<Dual1> dAT, ddAT;
    if (o.gauge) {
      dAT = seeded(J.dA, J.ddA, a);
      ddAT = seeded(J.ddA, J.dddA, a);
    }
    auto t = geometry_core<Dual1>(d, gT, dgT, ddgT, dAT, ddAT, cd);
    auto put = [a](TensorValue& dst, const std::vector<Dual1>& src) {
      const std::size_t N = src.size();
      for (std::size_t i = 0; i < N; ++i) dst.data()[a * N + i] = src[i].e;
    };
    put(out.d_riemann, t.riemann);
    if (o.gauge) {
      put(out.d_DF, t.DF);
      put(out.d_divF, t.divF);
    }
    if (co.model) put(out.d_model, t.model);
    if (o.has_J) put(out.d_J, t.J);
  }
  return out;
}

}  // namespace kkforms
