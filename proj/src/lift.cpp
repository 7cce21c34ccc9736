#include "kkforms/lift.hpp"

#include <algorithm>
#include <cmath>

#include "kkforms/curvature.hpp"

namespace kkforms {

LiftedMetric lift(const SmoothField& g, const SmoothField& A, int eps_d) {
  if (eps_d != 1 && eps_d != -1) throw InvalidArgument("lift: eps_d must be +1 or -1");
  if (g.valence().lower != 2 || g.valence().upper != 0) throw InvalidArgument("lift: g must be a metric field");
  if (A.dim() != g.dim() || A.valence().lower != 1 || A.valence().upper != 0) {
    throw InvalidArgument("lift: A must be a covector on the metric's chart");
  }
  const int d = g.dim();
  const double e = eps_d;
  LiftedMetric out;
  out.g = g;
  out.A = A;
  out.eps_d = eps_d;
  out.assembled = SmoothField::make(d + 1, {2, 0}, [g, A, d, e](auto x, auto o) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    const std::size_t n = static_cast<std::size_t>(d);
    const std::size_t N = n + 1;
    std::vector<S> gv(n * n), av(n);
    auto base = x.subspan(0, n);
    g.eval(base, std::span<S>(gv));
    A.eval(base, std::span<S>(av));
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t v = 0; v < n; ++v) o[m * N + v] = gv[m * n + v] + e * av[m] * av[v];
      o[m * N + n] = e * av[m];
      o[n * N + m] = e * av[m];
    }
    o[n * N + n] = S(e);
  });
  return out;
}

ChartPoint lifted_point(const ChartPoint& p) {
  std::vector<double> x(p.coords().begin(), p.coords().end());
  x.push_back(0.0);
  return ChartPoint(std::move(x));
}

PointResidual lifted_weyl_residual(const LiftedMetric& lifted, const ChartPoint& p) {
  if (lifted.base_dim() + 1 < 4) throw InvalidArgument("weyl_vanishing: lifted dimension 3 has no Weyl tensor; d >= 3 required");
  CurvatureBundle b = curvature_bundle(lifted.assembled, lifted_point(p), true);
  return PointResidual{b.weyl.max_abs(), b.riemann.max_abs()};
}

ResidualReport weyl_vanishing(const LiftedMetric& lifted, const std::vector<ChartPoint>& points, double tolerance,
                              std::uint64_t seed) {
  std::vector<PointResidual> per;
  per.reserve(points.size());
  for (const auto& p : points) per.push_back(lifted_weyl_residual(lifted, p));
  return aggregate("weyl_lift", per, seed, tolerance);
}

namespace {

Reduced reduce_field(const SmoothField& lifted, int d, int eps_d) {
  Reduced r;
  r.eps_d = eps_d;
  r.g = SmoothField::make(d, {2, 0}, [lifted, d](auto x, auto o) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    const std::size_t n = static_cast<std::size_t>(d);
    const std::size_t N = n + 1;
    std::vector<S> xx(x.begin(), x.end());
    xx.push_back(S(0.0));
    std::vector<S> G(N * N);
    lifted.eval(std::span<const S>(xx), std::span<S>(G));
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t v = 0; v < n; ++v) o[m * n + v] = G[m * N + v] - G[m * N + n] * G[v * N + n] / G[n * N + n];
  });
  r.A = SmoothField::make(d, {1, 0}, [lifted, d](auto x, auto o) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    const std::size_t n = static_cast<std::size_t>(d);
    const std::size_t N = n + 1;
    std::vector<S> xx(x.begin(), x.end());
    xx.push_back(S(0.0));
    std::vector<S> G(N * N);
    lifted.eval(std::span<const S>(xx), std::span<S>(G));
    for (std::size_t m = 0; m < n; ++m) o[m] = G[m * N + n] / G[n * N + n];
  });
  return r;
}

}  // namespace

Reduced reduce(const LiftedMetric& lifted) {
  if (!lifted.independent) throw InvalidArgument("reduce: lifted metric depends on the extra coordinate");
  return reduce_field(lifted.assembled, lifted.base_dim(), lifted.eps_d);
}

Reduced reduce(const SmoothField& lifted, const std::vector<ChartPoint>& probes) {
  if (lifted.valence().lower != 2 || lifted.valence().upper != 0 || lifted.dim() < 2) {
    throw InvalidArgument("reduce: expected a lifted metric field");
  }
  const int N = lifted.dim();
  const int d = N - 1;
  int eps = 0;
  for (const auto& p : probes) {
    FieldJet j = jet_eval(lifted, p, 1);
    for (int c = 0; c < lifted.components(); ++c) {
      if (j.d1(c, d) != 0.0) throw InvalidArgument("reduce: lifted metric depends on the extra coordinate");
    }
    const double gdd = j.value(N * N - 1);
    if (gdd != 1.0 && gdd != -1.0) throw InvalidArgument("reduce: extra-coordinate component must be +1 or -1");
    const int e = gdd > 0 ? 1 : -1;
    if (eps != 0 && e != eps) throw InvalidArgument("reduce: extra-coordinate sign changes across the chart");
    eps = e;
  }
  if (eps == 0) throw InvalidArgument("reduce: no probe points");
  return reduce_field(lifted, d, eps);
}

}  // namespace kkforms
