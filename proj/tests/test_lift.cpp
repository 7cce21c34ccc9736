#include <doctest.h>

#include <cmath>
#include <limits>

#include "kkforms/catalog.hpp"
#include "kkforms/curvature.hpp"
#include "kkforms/error.hpp"
#include "kkforms/lift.hpp"
#include "kkforms/sampling.hpp"

using namespace kkforms;

namespace {

double determinant(TensorValue m) {
  const int n = m.dim();
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (m(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(m(c, k), m(piv, k));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (int k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

SmoothField flat(int d) {
  return SmoothField::make(d, {2, 0}, [d](auto, auto out) {
    for (int i = 0; i < d * d; ++i) out[i] = 0.0;
    for (int i = 0; i < d; ++i) out[i * d + i] = i == 0 ? -1.0 : 1.0;
  });
}

SmoothField zero_covector(int d) {
  return SmoothField::make(d, {1, 0}, [d](auto, auto out) {
    for (int i = 0; i < d; ++i) out[i] = 0.0;
  });
}

}  // namespace

TEST_CASE("lifted components") {
  SUBCASE("no gauge field") {
    auto inst = make_real_space_form(3, 0, 1.0);
    auto L = lift(inst.g, inst.A, 1);
    ChartPoint p{0.1, 0.2, 0.3};
    auto g = inst.g.tensor_at(p);
    auto G = L.assembled.tensor_at(lifted_point(p));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double want = (i < 3 && j < 3) ? g(i, j) : (i == 3 && j == 3 ? 1.0 : 0.0);
        CHECK(G(i, j) == want);
      }
  }
  SUBCASE("block formula and determinant") {
    for (const auto& inst : default_grid()) {
      CAPTURE(inst.label);
      for (int eps : {1, -1}) {
        auto L = lift(inst.g, inst.A, eps);
        CHECK(L.assembled.dim() == inst.dim + 1);
        for (const auto& p : sample_points(inst.domain, 5, 1)) {
          auto g = inst.g.tensor_at(p);
          auto A = inst.A(p);
          auto G = L.assembled.tensor_at(lifted_point(p));
          const int d = inst.dim;
          CHECK(G(d, d) == eps);
          for (int m = 0; m < d; ++m) {
            CHECK(G(m, d) == eps * A[static_cast<std::size_t>(m)]);
            CHECK(G(d, m) == eps * A[static_cast<std::size_t>(m)]);
            for (int n = 0; n < d; ++n)
              CHECK(G(m, n) == g(m, n) + eps * A[static_cast<std::size_t>(m)] * A[static_cast<std::size_t>(n)]);
          }
          const double dg = determinant(g);
          CHECK(std::abs(determinant(G) - eps * dg) <= 1e-10 * std::abs(dg));
        }
      }
    }
  }
  SUBCASE("no dependence on the extra coordinate") {
    auto inst = make_kink_warped(1.0, 2, 0, 1, true);
    auto L = lift(inst.g, inst.A, 1);
    CHECK(L.independent);
    ChartPoint p{0.1, 0.9, 0.2, -0.1, 0.0};
    ChartPoint q{0.1, 0.9, 0.2, -0.1, 3.7};
    auto a = L.assembled(p);
    auto b = L.assembled(q);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    auto j = jet_eval(L.assembled, q, 1);
    for (int c = 0; c < L.assembled.components(); ++c) CHECK(j.d1(c, 4) == 0.0);
  }
  CHECK_THROWS_AS(lift(flat(3), zero_covector(3), 0), InvalidArgument);
}

TEST_CASE("Weyl tensor of the lift") {
  SUBCASE("flat") {
    auto L = lift(flat(3), zero_covector(3), 1);
    auto r = lifted_weyl_residual(L, ChartPoint{0.1, 0.2, 0.3});
    CHECK(r.abs == 0.0);
    auto rep = weyl_vanishing(L, {ChartPoint{0.1, 0.2, 0.3}});
    CHECK(rep.pass);
    CHECK(rep.equation == "weyl_lift");
  }
  SUBCASE("space form in three dimensions") {
    auto inst = make_real_space_form(3, 0, 1.0);
    auto L = lift(inst.g, inst.A, 1);
    for (const auto& p : sample_points(inst.domain, 10, 2)) {
      auto r = lifted_weyl_residual(L, p);
      CHECK(r.scale > 0.1);
      CHECK(r.rel() <= 1e-8);
    }
  }
  SUBCASE("wrong branch for a complex space form") {
    auto inst = make_cpx_space_form(2, 0, 1, 8.0);
    const auto pts = sample_points(inst.domain, 20, 3);
    CHECK(weyl_vanishing(lift(inst.g, inst.A, 1), pts).pass);
    auto bad = weyl_vanishing(lift(inst.g, inst.A, -1), pts);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_rel > 1e-3);
  }
  SUBCASE("a two-dimensional base is rejected") {
    auto kg = make_kink(1.0, 1, true);
    auto L = lift(kg.g, kg.A, 1);
    CHECK_THROWS_AS(weyl_vanishing(L, {ChartPoint{0.0, 0.5}}), InvalidArgument);
    CHECK_THROWS_AS(lifted_weyl_residual(L, ChartPoint{0.0, 0.5}), InvalidArgument);
  }
}

TEST_CASE("capstone: every catalog solution lifts to a conformally flat metric") {
  for (const auto& inst : default_grid()) {
    CAPTURE(inst.label);
    const auto pts = sample_points(inst.domain, 50, 42);
    auto rep = weyl_vanishing(lift(inst.g, inst.A, inst.eps_d), pts, 1e-7, 42);
    CHECK(rep.pass);
    CHECK(rep.points == 50);
    CHECK(rep.seed == 42);
    // the opposite metric lifts with the opposite sign
    auto opp = inst.opposite();
    CHECK(weyl_vanishing(lift(opp.g, opp.A, opp.eps_d), pts).pass);
  }
}

TEST_CASE("GJ residuals and the lifted Weyl tensor agree on pass/fail") {
  for (const auto& base : default_grid()) {
    if (base.expected.rank == 0) continue;
    CAPTURE(base.label);
    for (double s : {1.0, 1.01}) {
      auto A = base.A.scaled(s);
      const auto pts = sample_points(base.domain, 10, 4);
      double gj = 0.0;
      for (const auto& p : pts) {
        auto set = gj_residual(base.g, A, p, base.eps_d);
        gj = std::max({gj, set.r_weyl.rel(), set.r_ricci.rel(), set.r_gauge.rel()});
      }
      const bool weyl_pass = weyl_vanishing(lift(base.g, A, base.eps_d), pts).pass;
      CHECK(weyl_pass == (gj <= 1e-7));
      CHECK(weyl_pass == (s == 1.0));
    }
  }
}

TEST_CASE("reduce inverts lift") {
  SUBCASE("catalog round trips") {
    for (const auto& inst : default_grid()) {
      CAPTURE(inst.label);
      for (int eps : {1, -1}) {
        auto red = reduce(lift(inst.g, inst.A, eps));
        CHECK(red.eps_d == eps);
        for (const auto& p : sample_points(inst.domain, 5, 5)) {
          auto A0 = inst.A(p);
          auto A1 = red.A(p);
          for (std::size_t i = 0; i < A0.size(); ++i) CHECK(A1[i] == A0[i]);
          auto g0 = inst.g.tensor_at(p);
          auto g1 = red.g.tensor_at(p);
          const int d = inst.dim;
          for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) {
              // g + εAA − εAA: exact up to the rounding of the intermediate sum
              const double ulp = std::numeric_limits<double>::epsilon() *
                                 (std::abs(g0(m, n)) + std::abs(A0[static_cast<std::size_t>(m)] *
                                                                A0[static_cast<std::size_t>(n)]));
              CHECK(std::abs(g1(m, n) - g0(m, n)) <= 4.0 * ulp);
            }
          // F from the reduced potential is unchanged
          auto f0 = local_geometry(inst.g, &inst.A, p, {.weyl = false}).F;
          auto f1 = local_geometry(inst.g, &red.A, p, {.weyl = false}).F;
          for (std::size_t i = 0; i < f0.size(); ++i) CHECK(f0.data()[i] == f1.data()[i]);
        }
      }
    }
  }
  SUBCASE("zero potential") {
    auto red = reduce(lift(flat(3), zero_covector(3), -1));
    CHECK(red.A.tensor_at(ChartPoint{0.4, 0.1, 0.2}).max_abs() == 0.0);
    CHECK(red.eps_d == -1);
  }
  SUBCASE("bare fields") {
    auto inst = make_kink_warped(1.0, 2, 0, 1, true);
    auto L = lift(inst.g, inst.A, 1);
    const auto base = sample_points(inst.domain, 3, 6);
    std::vector<ChartPoint> probes;
    for (const auto& p : base) probes.push_back(lifted_point(p));
    auto red = reduce(L.assembled, probes);
    CHECK(red.eps_d == 1);
    CHECK(red.g.dim() == inst.dim);
    auto a0 = inst.A(base[0]);
    auto a1 = red.A(base[0]);
    for (std::size_t i = 0; i < a0.size(); ++i) CHECK(a1[i] == a0[i]);

    auto wavy = SmoothField::make(4, {2, 0}, [](auto x, auto out) {
      for (int i = 0; i < 16; ++i) out[i] = 0.0 * x[0];
      out[0] = -1.0 + 0.0 * x[0];
      out[5] = 1.0 + 0.0 * x[0];
      out[10] = 1.0 + 0.1 * x[3] * x[3] + 0.1 * x[3];
      out[15] = 1.0 + 0.0 * x[0];
    });
    CHECK_THROWS_AS(reduce(wavy, {ChartPoint{0.0, 0.0, 0.0, 0.5}}), InvalidArgument);
    auto scaled = L.assembled.scaled(2.0);
    CHECK_THROWS_AS(reduce(scaled, probes), InvalidArgument);
    LiftedMetric dep = L;
    dep.independent = false;
    CHECK_THROWS_AS(reduce(dep), InvalidArgument);
  }
}
