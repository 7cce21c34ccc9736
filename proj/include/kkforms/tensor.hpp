#pragma once

// Chart points, dense tensor values and the index algebra shared by every
// other module. Tensors are dense, covariant slots first.

#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kkforms/dual.hpp"
#include "kkforms/error.hpp"

namespace kkforms {

/// A coordinate tuple x^μ in a chart of ℝ^d.
class ChartPoint {
 public:
  ChartPoint() = default;
  explicit ChartPoint(std::vector<double> coords);
  ChartPoint(std::initializer_list<double> coords) : ChartPoint(std::vector<double>(coords)) {}

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

/// Sampling region: a coordinate box plus a validity predicate that removes
/// neighbourhoods of coordinate singularities.
struct Domain {
  std::vector<double> lo;
  std::vector<double> hi;
  std::function<bool(const ChartPoint&)> predicate;
  double margin = 0.0;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const ChartPoint& p) const;
};

/// Diagonal ±1 matrix; the first `index` entries are −1.
class SignatureMatrix {
 public:
  SignatureMatrix(int dim, int negative_count);
  explicit SignatureMatrix(std::vector<int> diag);

  int dim() const { return static_cast<int>(diag_.size()); }
  int index() const;
  int operator[](int i) const { return diag_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& diag() const { return diag_; }
  int determinant() const;

 private:
  std::vector<int> diag_;
};

/// Dense tensor with `lower` covariant slots followed by `upper` contravariant
/// slots, each of extent dim. Components are stored row-major in slot order.
class TensorValue {
 public:
  TensorValue() = default;
  TensorValue(int dim, int lower, int upper);

  int dim() const { return dim_; }
  int lower() const { return lower_; }
  int upper() const { return upper_; }
  int rank() const { return lower_ + upper_; }
  std::size_t size() const { return data_.size(); }
  bool slot_is_lower(int slot) const { return slot < lower_; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  std::size_t offset(std::span<const int> idx) const;

  template <class... I>
  double& operator()(I... i) {
    const int idx[] = {static_cast<int>(i)...};
    return data_[offset(idx)];
  }
  template <class... I>
  double operator()(I... i) const {
    const int idx[] = {static_cast<int>(i)...};
    return data_[offset(idx)];
  }

  double max_abs() const;

  TensorValue& operator+=(const TensorValue& o);
  TensorValue& operator-=(const TensorValue& o);
  TensorValue& operator*=(double s);
  friend TensorValue operator+(TensorValue a, const TensorValue& b) { return a += b; }
  friend TensorValue operator-(TensorValue a, const TensorValue& b) { return a -= b; }
  friend TensorValue operator*(double s, TensorValue a) { return a *= s; }

  /// Square matrix (two covariant slots) from row-major components.
  static TensorValue matrix(int dim, std::span<const double> rowmajor, int lower = 2);
  static TensorValue identity(int dim);  // δ_μ^ν

 private:
  int dim_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<double> data_;
};

/// Row-major multi-index walk over rank slots of extent dim.
bool next_index(std::vector<int>& idx, int dim);

/// Gauss-Jordan inverse with partial pivoting on the innermost value.
/// Works for plain and nested-expansion scalars. Returns false if a pivot is zero.
template <class T>
bool invert_matrix(int n, std::span<const T> a, std::span<T> out) {
  std::vector<T> m(a.begin(), a.end());
  for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
  for (int i = 0; i < n; ++i) out[i * n + i] = T(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(m[col * n + col]));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(value_of(m[r * n + col]));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(m[col * n + c], m[piv * n + c]);
        std::swap(out[col * n + c], out[piv * n + c]);
      }
    }
    T inv = 1.0 / m[col * n + col];
    for (int c = 0; c < n; ++c) {
      m[col * n + c] = m[col * n + c] * inv;
      out[col * n + c] = out[col * n + c] * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = m[r * n + col];
      if (value_of(f) == 0.0 && !is_dual<T>::value) continue;
      for (int c = 0; c < n; ++c) {
        m[r * n + c] = m[r * n + c] - f * m[col * n + c];
        out[r * n + c] = out[r * n + c] - f * out[col * n + c];
      }
    }
  }
  return true;
}

/// Degeneracy rule: reject when max|inverse| exceeds 1e12 · max|input|.
inline constexpr double kInverseGrowthBound = 1e12;

/// Inverse of a symmetric nondegenerate metric g_{μν}; returns g^{μν}.
/// Throws DegenerateMetric on singular or ill-conditioned input.
TensorValue metric_inverse(const TensorValue& g);

/// Trace over two slots. Mixed-variance pairs are traced directly; two
/// covariant slots need `inverse_metric`, two contravariant slots need `metric`.
TensorValue contract(const TensorValue& t, int slot_a, int slot_b,
                     const TensorValue* metric = nullptr,
                     const TensorValue* inverse_metric = nullptr);

/// (t_{…a…b…} − t_{…b…a…}) / 2 over two slots of equal variance.
TensorValue antisym_pair(const TensorValue& t, int slot_a, int slot_b);

/// Matrix of a rank-2 tensor as a dense row-major vector.
std::vector<double> as_matrix(const TensorValue& t);

}  // namespace kkforms
