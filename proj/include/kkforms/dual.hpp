#pragma once

// First-order truncated expansion scalars a + b·ε with ε² = 0.
//
// Nesting the type gives exact higher derivatives: Dual<Dual<Dual<double>>>
// seeded along directions (i, j, k) carries every partial of a closed-form
// expression up to ∂_i∂_j∂_k with no truncation error.

#include <cmath>
#include <type_traits>

namespace kkforms {

template <class T>
struct Dual {
  T v{};  // value part
  T e{};  // infinitesimal part

  constexpr Dual() = default;
  constexpr Dual(double x) : v(x), e(0.0) {}  // NOLINT: implicit lift of constants
  constexpr Dual(T value, T eps) : v(value), e(eps) {}

  Dual& operator+=(const Dual& o) { v += o.v; e += o.e; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; e -= o.e; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.e + b.e}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.e - b.e}; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.e}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.e + a.e * b.v}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v / b.v;
    return {q, (a.e - q * b.e) / b.v};
  }
  friend Dual operator+(const Dual& a, double b) { return {a.v + b, a.e}; }
  friend Dual operator+(double a, const Dual& b) { return {a + b.v, b.e}; }
  friend Dual operator-(const Dual& a, double b) { return {a.v - b, a.e}; }
  friend Dual operator-(double a, const Dual& b) { return {a - b.v, -b.e}; }
  friend Dual operator*(const Dual& a, double b) { return {a.v * b, a.e * b}; }
  friend Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.e}; }
  friend Dual operator/(const Dual& a, double b) { return {a.v / b, a.e / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Innermost real value of a (possibly nested) scalar.
inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;
using std::atanh;

template <class T>
Dual<T> sin(const Dual<T>& a) { return {sin(a.v), cos(a.v) * a.e}; }
template <class T>
Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -sin(a.v) * a.e}; }
template <class T>
Dual<T> exp(const Dual<T>& a) {
  T ev = exp(a.v);
  return {ev, ev * a.e};
}
template <class T>
Dual<T> log(const Dual<T>& a) { return {log(a.v), a.e / a.v}; }
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  T s = sqrt(a.v);
  return {s, a.e / (2.0 * s)};
}
template <class T>
Dual<T> sinh(const Dual<T>& a) { return {sinh(a.v), cosh(a.v) * a.e}; }
template <class T>
Dual<T> cosh(const Dual<T>& a) { return {cosh(a.v), sinh(a.v) * a.e}; }
template <class T>
Dual<T> tanh(const Dual<T>& a) {
  T t = tanh(a.v);
  return {t, (1.0 - t * t) * a.e};
}
template <class T>
Dual<T> atanh(const Dual<T>& a) { return {atanh(a.v), a.e / (1.0 - a.v * a.v)}; }

/// Hyperbolic secant, spelled out so every scalar type shares one definition.
template <class T>
T sech(const T& a) {
  return 1.0 / cosh(a);
}
inline double sech(double a) { return 1.0 / std::cosh(a); }

using Dual1 = Dual<double>;
using Dual3 = Dual<Dual<Dual<double>>>;

}  // namespace kkforms
