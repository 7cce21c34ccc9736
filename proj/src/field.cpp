#include "kkforms/field.hpp"

#include <cmath>

namespace kkforms {

namespace {

using D1 = Dual<double>;
using D2 = Dual<D1>;

Dual3 seed(double x, bool outer, bool middle, bool inner) {
  return Dual3{D2{D1{x, inner ? 1.0 : 0.0}, D1{middle ? 1.0 : 0.0, 0.0}},
               D2{D1{outer ? 1.0 : 0.0, 0.0}, D1{0.0, 0.0}}};
}

void seeded_eval(const SmoothField& f, std::span<const double> x, std::array<int, 3> dirs,
                 std::vector<Dual3>& in, std::vector<Dual3>& out) {
  const int d = f.dim();
  for (int m = 0; m < d; ++m) {
    in[static_cast<std::size_t>(m)] = seed(x[static_cast<std::size_t>(m)], dirs[0] == m, dirs[1] == m, dirs[2] == m);
  }
  f.eval(std::span<const Dual3>(in), std::span<Dual3>(out));
}

void check_finite(double v) {
  if (!std::isfinite(v)) throw NonFiniteValue("jet_eval: non-finite component or derivative");
}

}  // namespace

FieldJet::FieldJet(int dim, int components, int order)
    : dim_(dim), ncomp_(components), order_(order), n_(static_cast<std::size_t>(dim)) {
  const std::size_t c = static_cast<std::size_t>(components);
  value_.assign(c, 0.0);
  if (order >= 1) d1_.assign(c * n_, 0.0);
  if (order >= 2) d2_.assign(c * n_ * n_, 0.0);
  if (order >= 3) d3_.assign(c * n_ * n_ * n_, 0.0);
}

SmoothField::SmoothField(int dim, Valence valence, PlainFn plain, JetFn jet)
    : dim_(dim), valence_(valence), plain_(std::move(plain)), jet_(std::move(jet)) {
  if (dim < 1) throw InvalidArgument("SmoothField: dimension must be positive");
  ncomp_ = 1;
  for (int i = 0; i < valence.lower + valence.upper; ++i) ncomp_ *= dim;
}

std::vector<double> SmoothField::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("SmoothField: point dimension mismatch");
  std::vector<double> out(static_cast<std::size_t>(ncomp_), 0.0);
  plain_(x, out);
  for (double v : out) check_finite(v);
  return out;
}

TensorValue SmoothField::tensor_at(const ChartPoint& p) const {
  auto v = (*this)(p);
  TensorValue t(dim_, valence_.lower, valence_.upper);
  std::copy(v.begin(), v.end(), t.data().begin());
  return t;
}

SmoothField SmoothField::scaled(double s) const {
  auto plain = plain_;
  auto jet = jet_;
  return SmoothField(
      dim_, valence_,
      [plain, s](std::span<const double> x, std::span<double> out) {
        plain(x, out);
        for (auto& v : out) v = s * v;
      },
      [jet, s](std::span<const Dual3> x, std::span<Dual3> out) {
        jet(x, out);
        for (auto& v : out) v = s * v;
      });
}

FieldJet jet_eval(const SmoothField& field, const ChartPoint& p, int order) {
  if (order < 0 || order > kMaxJetOrder) throw InvalidArgument("jet_eval: order must be in 0..3");
  if (p.dim() != field.dim()) throw InvalidArgument("jet_eval: point dimension mismatch");
  const int d = field.dim();
  const int nc = field.components();
  FieldJet jet(d, nc, order);

  auto vals = field(p.coords());
  for (int c = 0; c < nc; ++c) jet.value(c) = vals[static_cast<std::size_t>(c)];
  if (order == 0) return jet;

  std::vector<Dual3> in(static_cast<std::size_t>(d));
  std::vector<Dual3> out(static_cast<std::size_t>(nc));
  auto x = p.coords();

  if (order == 1) {
    for (int i = 0; i < d; ++i) {
      seeded_eval(field, x, {i, -1, -1}, in, out);
      for (int c = 0; c < nc; ++c) {
        double v = out[static_cast<std::size_t>(c)].e.v.v;
        check_finite(v);
        jet.d1(c, i) = v;
      }
    }
    return jet;
  }

  if (order == 2) {
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        seeded_eval(field, x, {i, j, -1}, in, out);
        for (int c = 0; c < nc; ++c) {
          const Dual3& f = out[static_cast<std::size_t>(c)];
          check_finite(f.e.e.v);
          jet.d1(c, i) = f.e.v.v;
          jet.d1(c, j) = f.v.e.v;
          jet.d2(c, i, j) = f.e.e.v;
          jet.d2(c, j, i) = f.e.e.v;
        }
      }
    }
    for (int c = 0; c < nc; ++c) {
      for (int a = 0; a < d; ++a) check_finite(jet.d1(c, a));
    }
    return jet;
  }

  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      for (int k = j; k < d; ++k) {
        seeded_eval(field, x, {i, j, k}, in, out);
        for (int c = 0; c < nc; ++c) {
          const Dual3& f = out[static_cast<std::size_t>(c)];
          check_finite(f.e.e.e);
          jet.d1(c, i) = f.e.v.v;
          jet.d1(c, j) = f.v.e.v;
          jet.d1(c, k) = f.v.v.e;
          jet.d2(c, i, j) = jet.d2(c, j, i) = f.e.e.v;
          jet.d2(c, i, k) = jet.d2(c, k, i) = f.e.v.e;
          jet.d2(c, j, k) = jet.d2(c, k, j) = f.v.e.e;
          const double t = f.e.e.e;
          jet.d3(c, i, j, k) = jet.d3(c, i, k, j) = jet.d3(c, j, i, k) = t;
          jet.d3(c, j, k, i) = jet.d3(c, k, i, j) = jet.d3(c, k, j, i) = t;
        }
      }
    }
  }
  for (int c = 0; c < nc; ++c) {
    for (int a = 0; a < d; ++a) {
      check_finite(jet.d1(c, a));
      for (int b = 0; b < d; ++b) check_finite(jet.d2(c, a, b));
    }
  }
  return jet;
}

double seeded_partial(const SmoothField& field, const ChartPoint& p, int c, std::array<int, 3> dirs) {
  if (p.dim() != field.dim()) throw InvalidArgument("seeded_partial: point dimension mismatch");
  std::vector<Dual3> in(static_cast<std::size_t>(field.dim()));
  std::vector<Dual3> out(static_cast<std::size_t>(field.components()));
  seeded_eval(field, p.coords(), dirs, in, out);
  const Dual3& f = out[static_cast<std::size_t>(c)];
  const bool i = dirs[0] >= 0, j = dirs[1] >= 0, k = dirs[2] >= 0;
  if (i && j && k) return f.e.e.e;
  if (i && j) return f.e.e.v;
  if (i && k) return f.e.v.e;
  if (j && k) return f.v.e.e;
  if (i) return f.e.v.v;
  if (j) return f.v.e.v;
  if (k) return f.v.v.e;
  return f.v.v.v;
}

}  // namespace kkforms
