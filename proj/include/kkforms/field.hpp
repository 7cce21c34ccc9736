#pragma once

// Smooth component fields and their jets (value plus partial derivatives up
// to third order), computed by nested first-order expansion arithmetic.

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kkforms/dual.hpp"
#include "kkforms/tensor.hpp"

namespace kkforms {

inline constexpr int kMaxJetOrder = 3;

/// Components and all partials ∂_a, ∂_a∂_b, ∂_a∂_b∂_c of a field at one point.
/// Derivative slots are dense and fully symmetric.
class FieldJet {
 public:
  FieldJet() = default;
  FieldJet(int dim, int components, int order);

  int dim() const { return dim_; }
  int components() const { return ncomp_; }
  int order() const { return order_; }

  double value(int c) const { return value_[idx(c)]; }
  double d1(int c, int a) const { return d1_[idx(c) * n_ + idx(a)]; }
  double d2(int c, int a, int b) const { return d2_[(idx(c) * n_ + idx(a)) * n_ + idx(b)]; }
  double d3(int c, int a, int b, int e) const {
    return d3_[((idx(c) * n_ + idx(a)) * n_ + idx(b)) * n_ + idx(e)];
  }

  double& value(int c) { return value_[idx(c)]; }
  double& d1(int c, int a) { return d1_[idx(c) * n_ + idx(a)]; }
  double& d2(int c, int a, int b) { return d2_[(idx(c) * n_ + idx(a)) * n_ + idx(b)]; }
  double& d3(int c, int a, int b, int e) { return d3_[((idx(c) * n_ + idx(a)) * n_ + idx(b)) * n_ + idx(e)]; }

  std::span<const double> values() const { return value_; }

 private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }
  int dim_ = 0;
  int ncomp_ = 0;
  int order_ = 0;
  std::size_t n_ = 0;
  std::vector<double> value_, d1_, d2_, d3_;
};

/// Shape of a field's components: `lower`/`upper` slots of extent `dim`.
struct Valence {
  int lower = 0;
  int upper = 0;
};

/// A smooth map from chart points of ℝ^dim to the components of a tensor.
///
/// The component function is supplied once as a generic callable
/// `f(std::span<const S> x, std::span<S> out)` and instantiated both for
/// double and for the third-order nested expansion scalar, so the value of a
/// jet is bit-identical to the plain evaluation.
class SmoothField {
 public:
  using PlainFn = std::function<void(std::span<const double>, std::span<double>)>;
  using JetFn = std::function<void(std::span<const Dual3>, std::span<Dual3>)>;

  SmoothField() = default;
  SmoothField(int dim, Valence valence, PlainFn plain, JetFn jet);

  template <class F>
  static SmoothField make(int dim, Valence valence, F f) {
    return SmoothField(
        dim, valence, [f](std::span<const double> x, std::span<double> out) { f(x, out); },
        [f](std::span<const Dual3> x, std::span<Dual3> out) { f(x, out); });
  }

  int dim() const { return dim_; }
  Valence valence() const { return valence_; }
  int components() const { return ncomp_; }
  bool valid() const { return static_cast<bool>(plain_); }

  /// Plain component evaluation; throws NonFiniteValue on NaN/inf output.
  std::vector<double> operator()(std::span<const double> x) const;
  std::vector<double> operator()(const ChartPoint& p) const { return (*this)(p.coords()); }

  /// Raw nested-expansion evaluation (no finiteness check).
  void eval(std::span<const Dual3> x, std::span<Dual3> out) const { jet_(x, out); }
  void eval(std::span<const double> x, std::span<double> out) const { plain_(x, out); }

  /// The component value of an evaluation at p as a tensor.
  TensorValue tensor_at(const ChartPoint& p) const;

  /// Pointwise scaling by a constant (e.g. the opposite metric).
  SmoothField scaled(double s) const;

 private:
  int dim_ = 0;
  Valence valence_{};
  int ncomp_ = 0;
  PlainFn plain_;
  JetFn jet_;
};

/// Value and all partials up to `order` (0..3) of `field` at `p`.
/// Throws InvalidArgument for order > 3 or dimension mismatch and
/// NonFiniteValue when any component or derivative is not finite.
FieldJet jet_eval(const SmoothField& field, const ChartPoint& p, int order);

/// One seeded nested evaluation returning ∂_i∂_j∂_k of component c
/// (directions may be -1 for "not differentiated"); used to test that mixed
/// partials commute independently of the order the seeds are applied in.
double seeded_partial(const SmoothField& field, const ChartPoint& p, int c, std::array<int, 3> dirs);

}  // namespace kkforms
