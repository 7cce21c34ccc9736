#pragma once

// Algebraic core shared by curvature and verify. Everything here is a pure
// function of the metric jet (g, ∂g, ∂∂g) and the potential jet (∂A, ∂∂A),
// templated on the scalar so the same code produces derivatives when fed
// first-order expansion scalars seeded along one coordinate direction.
//
// Layouts (d = dimension, all row-major):
//   g, ginv        [μ][ν]
//   dg             [a][μ][ν]        ∂_a g_{μν}
//   ddg            [a][b][μ][ν]     ∂_a∂_b g_{μν}
//   dA             [a][μ]           ∂_a A_μ
//   ddA            [a][b][μ]        ∂_a∂_b A_μ
//   gamma          [μ][ν][λ]        Γ_{μν}^λ
//   dgamma         [a][μ][ν][λ]     ∂_aΓ_{μν}^λ
//   riemann_up     [μ][ν][κ][λ]     R_{μνκ}^λ = ∂_μΓ_{νκ}^λ − ∂_νΓ_{μκ}^λ + Γ_{μξ}^λΓ_{νκ}^ξ − Γ_{νξ}^λΓ_{μκ}^ξ
//   riemann        [μ][ν][κ][λ]     R_{μνκλ} = R_{μνκ}^ξ g_{ξλ}
//   ricci          [μ][ν]           R_{μν} = R_{κμν}^κ
//   weyl           [μ][ν][κ][λ]     same layout and sign as riemann
//   F              [μ][ν]           ∂_μA_ν − ∂_νA_μ
//   Fmix           [μ][ν]           F_μ^ν
//   FF             [μ][ν]           F_{μκ}F_ν^κ
//   DF             [κ][μ][ν]        D_κF_{μν}
//   divF           [ν]              D_λF_ν^λ
//   model          [μ][ν][κ][λ]     Riemann tensor predicted from (g, F, k)
//   J              [μ][ν]           √(d/|F²|) F_μ^ν

#include <cmath>
#include <span>
#include <vector>

#include "kkforms/dual.hpp"
#include "kkforms/error.hpp"
#include "kkforms/tensor.hpp"

namespace kkforms::detail {

template <class T>
struct CoreOut {
  int d = 0;
  std::vector<T> ginv, gamma, dgamma, riemann_up, riemann, ricci, weyl;
  T scalar{};
  bool gauge = false;
  std::vector<T> F, Fmix, FF, DF, divF, model, J;
  T F2{};
  bool has_J = false;
};

struct CoreOptions {
  bool gauge = false;
  bool weyl = true;
  bool model = false;
  double k = 0.0;
};

template <class T>
CoreOut<T> geometry_core(int d, std::span<const T> g, std::span<const T> dg, std::span<const T> ddg,
                         std::span<const T> dA, std::span<const T> ddA, const CoreOptions& opt) {
  const std::size_t n = static_cast<std::size_t>(d);
  auto I2 = [n](std::size_t a, std::size_t b) { return a * n + b; };
  auto I3 = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  auto I4 = [n](std::size_t a, std::size_t b, std::size_t c, std::size_t e) { return ((a * n + b) * n + c) * n + e; };

  CoreOut<T> o;
  o.d = d;
  o.ginv.assign(n * n, T(0.0));
  if (!invert_matrix<T>(d, g, o.ginv)) throw DegenerateMetric("geometry: singular metric");

  // ∂_a g^{λσ} = −g^{λα} ∂_a g_{αβ} g^{βσ}
  std::vector<T> dginv(n * n * n, T(0.0));
  {
    std::vector<T> tmp(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t b = 0; b < n; ++b) {
          T s(0.0);
          for (std::size_t al = 0; al < n; ++al) s += o.ginv[I2(l, al)] * dg[I3(a, al, b)];
          tmp[I2(l, b)] = s;
        }
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t s2 = 0; s2 < n; ++s2) {
          T s(0.0);
          for (std::size_t b = 0; b < n; ++b) s += tmp[I2(l, b)] * o.ginv[I2(b, s2)];
          dginv[I3(a, l, s2)] = -s;
        }
    }
  }

  // Christoffel symbols of the first kind and their derivatives.
  // first[σ][μ][ν] = ½(∂_μ g_{σν} + ∂_ν g_{σμ} − ∂_σ g_{μν})
  std::vector<T> first(n * n * n), dfirst(n * n * n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t v = 0; v < n; ++v) {
        first[I3(s, m, v)] = 0.5 * (dg[I3(m, s, v)] + dg[I3(v, s, m)] - dg[I3(s, m, v)]);
        for (std::size_t a = 0; a < n; ++a) {
          dfirst[I4(a, s, m, v)] =
              0.5 * (ddg[I4(a, m, s, v)] + ddg[I4(a, v, s, m)] - ddg[I4(a, s, m, v)]);
        }
      }

  o.gamma.assign(n * n * n, T(0.0));
  o.dgamma.assign(n * n * n * n, T(0.0));
  auto& dgamma = o.dgamma;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = m; v < n; ++v)
      for (std::size_t l = 0; l < n; ++l) {
        T s(0.0);
        for (std::size_t q = 0; q < n; ++q) s += o.ginv[I2(l, q)] * first[I3(q, m, v)];
        o.gamma[I3(m, v, l)] = s;
        o.gamma[I3(v, m, l)] = s;
        for (std::size_t a = 0; a < n; ++a) {
          T t(0.0);
          for (std::size_t q = 0; q < n; ++q) {
            t += dginv[I3(a, l, q)] * first[I3(q, m, v)] + o.ginv[I2(l, q)] * dfirst[I4(a, q, m, v)];
          }
          dgamma[I4(a, m, v, l)] = t;
          dgamma[I4(a, v, m, l)] = t;
        }
      }

  o.riemann_up.assign(n * n * n * n, T(0.0));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) {
      if (v == m) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          T s = dgamma[I4(m, v, k, l)] - dgamma[I4(v, m, k, l)];
          for (std::size_t x = 0; x < n; ++x) {
            s += o.gamma[I3(m, x, l)] * o.gamma[I3(v, k, x)] - o.gamma[I3(v, x, l)] * o.gamma[I3(m, k, x)];
          }
          o.riemann_up[I4(m, v, k, l)] = s;
        }
    }

  o.riemann.assign(n * n * n * n, T(0.0));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          T s(0.0);
          for (std::size_t x = 0; x < n; ++x) s += o.riemann_up[I4(m, v, k, x)] * g[I2(x, l)];
          o.riemann[I4(m, v, k, l)] = s;
        }

  o.ricci.assign(n * n, T(0.0));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) {
      T s(0.0);
      for (std::size_t k = 0; k < n; ++k) s += o.riemann_up[I4(k, m, v, k)];
      o.ricci[I2(m, v)] = s;
    }
  o.scalar = T(0.0);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) o.scalar += o.ginv[I2(m, v)] * o.ricci[I2(m, v)];

  if (opt.weyl && d >= 3) {
    // Schouten tensor P = (Ric − R g / (2(d−1))) / (d−2)
    std::vector<T> P(n * n);
    const double inv_dm2 = 1.0 / (d - 2);
    const double half_dm1 = 1.0 / (2.0 * (d - 1));
    for (std::size_t i = 0; i < n * n; ++i) P[i] = (o.ricci[i] - o.scalar * half_dm1 * g[i]) * inv_dm2;
    o.weyl.assign(n * n * n * n, T(0.0));
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            o.weyl[I4(m, v, k, l)] = o.riemann[I4(m, v, k, l)] -
                                     (g[I2(m, l)] * P[I2(k, v)] + g[I2(k, v)] * P[I2(m, l)] -
                                      g[I2(m, k)] * P[I2(l, v)] - g[I2(l, v)] * P[I2(m, k)]);
          }
  }

  if (!opt.gauge) return o;
  o.gauge = true;

  o.F.assign(n * n, T(0.0));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) o.F[I2(m, v)] = dA[I2(m, v)] - dA[I2(v, m)];

  o.Fmix.assign(n * n, T(0.0));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) {
      T s(0.0);
      for (std::size_t k = 0; k < n; ++k) s += o.F[I2(m, k)] * o.ginv[I2(k, v)];
      o.Fmix[I2(m, v)] = s;
    }

  o.F2 = T(0.0);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) {
      T up(0.0);  // F^{μν}
      for (std::size_t a = 0; a < n; ++a) up += o.ginv[I2(m, a)] * o.Fmix[I2(a, v)];
      o.F2 += o.F[I2(m, v)] * up;
    }

  o.FF.assign(n * n, T(0.0));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) {
      T s(0.0);
      for (std::size_t k = 0; k < n; ++k) s += o.F[I2(m, k)] * o.Fmix[I2(v, k)];
      o.FF[I2(m, v)] = s;
    }

  o.DF.assign(n * n * n, T(0.0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t v = 0; v < n; ++v) {
        T s = ddA[I3(k, m, v)] - ddA[I3(k, v, m)];
        for (std::size_t q = 0; q < n; ++q) {
          s -= o.gamma[I3(k, m, q)] * o.F[I2(q, v)] + o.gamma[I3(k, v, q)] * o.F[I2(m, q)];
        }
        o.DF[I3(k, m, v)] = s;
      }

  o.divF.assign(n, T(0.0));
  for (std::size_t v = 0; v < n; ++v) {
    T s(0.0);
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m) s += o.ginv[I2(l, m)] * o.DF[I3(l, v, m)];
    o.divF[v] = s;
  }

  if (opt.model) {
    o.model.assign(n * n * n * n, T(0.0));
    const T c0 = 2.0 * (opt.k + 0.125 * o.F2);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            T gg = 0.5 * (g[I2(m, l)] * g[I2(k, v)] - g[I2(m, k)] * g[I2(l, v)]);
            T gff = 0.5 * (g[I2(m, k)] * o.FF[I2(l, v)] - g[I2(m, l)] * o.FF[I2(k, v)]) -
                    0.5 * (g[I2(v, k)] * o.FF[I2(l, m)] - g[I2(v, l)] * o.FF[I2(k, m)]);
            T ff = o.F[I2(m, v)] * o.F[I2(k, l)] -
                   0.5 * (o.F[I2(m, k)] * o.F[I2(l, v)] - o.F[I2(m, l)] * o.F[I2(k, v)]);
            o.model[I4(m, v, k, l)] = c0 * gg - 0.5 * gff - 0.5 * ff;
          }
  }

  if (std::abs(value_of(o.F2)) > 0.0) {
    o.has_J = true;
    T scale = sqrt(T(static_cast<double>(d)) / (value_of(o.F2) > 0 ? o.F2 : -o.F2));
    o.J.assign(n * n, T(0.0));
    for (std::size_t i = 0; i < n * n; ++i) o.J[i] = scale * o.Fmix[i];
  }
  return o;
}

}  // namespace kkforms::detail
