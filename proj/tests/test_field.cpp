#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kkforms/catalog.hpp"
#include "kkforms/error.hpp"
#include "kkforms/field.hpp"
#include "kkforms/sampling.hpp"
#include "oracles.hpp"

using namespace kkforms;

TEST_CASE("jet of a constant field") {
  auto f = SmoothField::make(3, {1, 0}, [](auto, auto out) {
    out[0] = 2.0;
    out[1] = -1.0;
    out[2] = 0.5;
  });
  auto j = jet_eval(f, ChartPoint{0.1, 0.2, 0.3}, 2);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a) {
      CHECK(j.d1(c, a) == 0.0);
      for (int b = 0; b < 3; ++b) CHECK(j.d2(c, a, b) == 0.0);
    }
  CHECK(j.value(0) == 2.0);
}

TEST_CASE("jet of a polynomial") {
  auto f = SmoothField::make(1, {0, 0}, [](auto x, auto out) { out[0] = x[0] * x[0]; });
  auto j = jet_eval(f, ChartPoint(std::vector<double>{3.0}), 3);
  CHECK(j.value(0) == 9.0);
  CHECK(j.d1(0, 0) == 6.0);
  CHECK(j.d2(0, 0, 0) == 2.0);
  CHECK(j.d3(0, 0, 0, 0) == 0.0);
}

TEST_CASE("jet order limits and non-finite values") {
  auto f = SmoothField::make(2, {0, 0}, [](auto x, auto out) { out[0] = 1.0 / x[0]; });
  CHECK_THROWS_AS(jet_eval(f, ChartPoint{1.0, 0.0}, 4), InvalidArgument);
  CHECK_THROWS_AS(jet_eval(f, ChartPoint{1.0, 0.0, 0.0}, 1), InvalidArgument);
  CHECK_THROWS_AS(jet_eval(f, ChartPoint{0.0, 0.0}, 1), NonFiniteValue);
  CHECK_THROWS_AS(f(ChartPoint{0.0, 0.0}), NonFiniteValue);
}

TEST_CASE("kink metric component against finite differences") {
  const double k = 2.0;
  auto kink = make_kink(k, 1, true);
  const ChartPoint p{0.0, 0.5};
  auto j = jet_eval(kink.g, p, 2);
  const double fd = oracle::d1(kink.g, p, 0, 1);
  CHECK(oracle::rel_err(j.d1(0, 1), fd, 0.0) <= 1e-6);
  // closed form: ∂ of −k² sech⁴(a ξ) is 4 a k² sech⁴ tanh
  const double a = std::sqrt(k / 2.0);
  const double sech = 1.0 / std::cosh(a * 0.5);
  const double exact = 4.0 * a * k * k * std::pow(sech, 4) * std::tanh(a * 0.5);
  CHECK(oracle::rel_err(j.d1(0, 1), exact, 0.0) <= 1e-14);
}

TEST_CASE("catalog fields: jets agree with the plain evaluation and with finite differences") {
  int checked = 0;
  for (const auto& inst : default_grid()) {
    CAPTURE(inst.label);
    const auto pts = sample_points(inst.domain, 6, 1234);
    for (const auto& p : pts) {
      for (const SmoothField* f : {&inst.g, &inst.A}) {
        auto plain = (*f)(p);
        auto j0 = jet_eval(*f, p, 0);
        auto j2 = jet_eval(*f, p, 2);
        double s1 = 0.0, s2 = 0.0;
        for (int c = 0; c < f->components(); ++c) {
          CHECK(j0.value(c) == plain[static_cast<std::size_t>(c)]);
          CHECK(j2.value(c) == plain[static_cast<std::size_t>(c)]);
          for (int a = 0; a < f->dim(); ++a) {
            s1 = std::max(s1, std::abs(j2.d1(c, a)));
            for (int b = 0; b < f->dim(); ++b) s2 = std::max(s2, std::abs(j2.d2(c, a, b)));
          }
        }
        if (f != &inst.g) continue;
        for (int c = 0; c < f->components(); ++c) {
          for (int a = 0; a < f->dim(); ++a) {
            CHECK(oracle::rel_err(j2.d1(c, a), oracle::d1(*f, p, c, a), s1) <= 1e-5);
            for (int b = a; b < f->dim(); ++b)
              CHECK(oracle::rel_err(j2.d2(c, a, b), oracle::d2(*f, p, c, a, b), s2) <= 1e-5);
          }
        }
        ++checked;
      }
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("mixed partials do not depend on seed order") {
  for (const auto& inst : default_grid()) {
    CAPTURE(inst.label);
    const auto pts = sample_points(inst.domain, 100, 99);
    const int d = inst.dim;
    const int nc = inst.g.components();
    for (std::size_t n = 0; n < pts.size(); n += 10) {
      const auto& p = pts[n];
      auto j = jet_eval(inst.g, p, 3);
      double scale = 0.0;
      for (int c = 0; c < nc; ++c)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int e = 0; e < d; ++e) scale = std::max(scale, std::abs(j.d3(c, a, b, e)));
      scale = std::max(scale, 1e-300);
      const int c = static_cast<int>(n) % nc;
      const int a = static_cast<int>(n) % d, b = (static_cast<int>(n) / 3 + 1) % d, e = (a + 1) % d;
      const double ab = seeded_partial(inst.g, p, c, {a, b, -1});
      const double ba = seeded_partial(inst.g, p, c, {b, a, -1});
      CHECK(std::abs(ab - ba) <= 1e-12 * std::max(std::abs(ab), 1.0));
      const double abe = seeded_partial(inst.g, p, c, {a, b, e});
      const double eba = seeded_partial(inst.g, p, c, {e, b, a});
      const double bea = seeded_partial(inst.g, p, c, {b, e, a});
      CHECK(std::abs(abe - eba) <= 1e-12 * scale);
      CHECK(std::abs(abe - bea) <= 1e-12 * scale);
      CHECK(std::abs(abe - j.d3(c, a, b, e)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("scaled field") {
  auto inst = make_real_space_form(3, 1, 0.5);
  auto neg = inst.g.scaled(-1.0);
  ChartPoint p{0.2, 0.1, -0.3};
  auto a = inst.g(p);
  auto b = neg(p);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == -a[i]);
}
