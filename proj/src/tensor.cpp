#include "kkforms/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace kkforms {

ChartPoint::ChartPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("ChartPoint: need at least one coordinate");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InvalidArgument("ChartPoint: non-finite coordinate");
  }
}

bool Domain::contains(const ChartPoint& p) const {
  if (p.dim() != dim()) return false;
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] < lo[static_cast<std::size_t>(i)] || p[i] > hi[static_cast<std::size_t>(i)]) return false;
  }
  return !predicate || predicate(p);
}

SignatureMatrix::SignatureMatrix(int dim, int negative_count) {
  if (dim < 1 || negative_count < 0 || negative_count > dim) {
    throw ParameterError("signature index s must satisfy 0 <= s <= d");
  }
  diag_.assign(static_cast<std::size_t>(dim), 1);
  for (int i = 0; i < negative_count; ++i) diag_[static_cast<std::size_t>(i)] = -1;
}

SignatureMatrix::SignatureMatrix(std::vector<int> diag) : diag_(std::move(diag)) {
  for (int v : diag_) {
    if (v != 1 && v != -1) throw InvalidArgument("SignatureMatrix: entries must be +1 or -1");
  }
}

int SignatureMatrix::index() const {
  return static_cast<int>(std::count(diag_.begin(), diag_.end(), -1));
}

int SignatureMatrix::determinant() const { return index() % 2 == 0 ? 1 : -1; }

TensorValue::TensorValue(int dim, int lower, int upper) : dim_(dim), lower_(lower), upper_(upper) {
  if (dim < 1 || lower < 0 || upper < 0) throw InvalidArgument("TensorValue: bad shape");
  std::size_t n = 1;
  for (int i = 0; i < lower + upper; ++i) n *= static_cast<std::size_t>(dim);
  data_.assign(n, 0.0);
}

std::size_t TensorValue::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw InvalidArgument("TensorValue: wrong index count");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw InvalidArgument("TensorValue: index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

double TensorValue::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

TensorValue& TensorValue::operator+=(const TensorValue& o) {
  if (o.dim_ != dim_ || o.lower_ != lower_ || o.upper_ != upper_) throw InvalidArgument("TensorValue: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

TensorValue& TensorValue::operator-=(const TensorValue& o) {
  if (o.dim_ != dim_ || o.lower_ != lower_ || o.upper_ != upper_) throw InvalidArgument("TensorValue: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

TensorValue& TensorValue::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

TensorValue TensorValue::matrix(int dim, std::span<const double> rowmajor, int lower) {
  TensorValue t(dim, lower, 2 - lower);
  if (rowmajor.size() != t.size()) throw InvalidArgument("TensorValue::matrix: size mismatch");
  std::copy(rowmajor.begin(), rowmajor.end(), t.data_.begin());
  return t;
}

TensorValue TensorValue::identity(int dim) {
  TensorValue t(dim, 1, 1);
  for (int i = 0; i < dim; ++i) t(i, i) = 1.0;
  return t;
}

bool next_index(std::vector<int>& idx, int dim) {
  for (int s = static_cast<int>(idx.size()) - 1; s >= 0; --s) {
    if (++idx[static_cast<std::size_t>(s)] < dim) return true;
    idx[static_cast<std::size_t>(s)] = 0;
  }
  return false;
}

TensorValue metric_inverse(const TensorValue& g) {
  if (g.rank() != 2) throw InvalidArgument("metric_inverse: rank-2 input required");
  const int n = g.dim();
  TensorValue inv(n, g.upper(), g.lower());
  if (!invert_matrix<double>(n, g.data(), inv.data())) {
    throw DegenerateMetric("metric_inverse: singular matrix");
  }
  double in_max = g.max_abs();
  double out_max = inv.max_abs();
  if (!std::isfinite(out_max) || out_max > kInverseGrowthBound * in_max) {
    throw DegenerateMetric("metric_inverse: matrix too close to degenerate");
  }
  return inv;
}

TensorValue contract(const TensorValue& t, int slot_a, int slot_b, const TensorValue* metric,
                     const TensorValue* inverse_metric) {
  const int rank = t.rank();
  if (slot_a < 0 || slot_b < 0 || slot_a >= rank || slot_b >= rank || slot_a == slot_b) {
    throw InvalidArgument("contract: slot out of range");
  }
  if (slot_a > slot_b) std::swap(slot_a, slot_b);
  const bool la = t.slot_is_lower(slot_a);
  const bool lb = t.slot_is_lower(slot_b);
  const TensorValue* w = nullptr;
  if (la && lb) {
    if (!inverse_metric) throw InvalidArgument("contract: two covariant slots need the inverse metric");
    w = inverse_metric;
  } else if (!la && !lb) {
    if (!metric) throw InvalidArgument("contract: two contravariant slots need the metric");
    w = metric;
  }
  const int dim = t.dim();
  const int new_lower = t.lower() - (la ? 1 : 0) - (lb ? 1 : 0);
  const int new_upper = t.upper() - (la ? 0 : 1) - (lb ? 0 : 1);
  TensorValue out(dim, new_lower, new_upper);
  std::vector<int> src(static_cast<std::size_t>(rank), 0);
  do {
    const int i = src[static_cast<std::size_t>(slot_a)];
    const int j = src[static_cast<std::size_t>(slot_b)];
    double weight;
    if (w) {
      weight = (*w)(i, j);
    } else {
      weight = (i == j) ? 1.0 : 0.0;
    }
    if (weight == 0.0) continue;
    std::vector<int> dst;
    dst.reserve(static_cast<std::size_t>(rank - 2));
    for (int s = 0; s < rank; ++s) {
      if (s != slot_a && s != slot_b) dst.push_back(src[static_cast<std::size_t>(s)]);
    }
    out.data()[out.rank() == 0 ? 0 : out.offset(dst)] += weight * t.data()[t.offset(src)];
  } while (next_index(src, dim));
  return out;
}

TensorValue antisym_pair(const TensorValue& t, int slot_a, int slot_b) {
  const int rank = t.rank();
  if (slot_a < 0 || slot_b < 0 || slot_a >= rank || slot_b >= rank || slot_a == slot_b) {
    throw InvalidArgument("antisym_pair: slot out of range");
  }
  if (t.slot_is_lower(slot_a) != t.slot_is_lower(slot_b)) {
    throw InvalidArgument("antisym_pair: slots differ in variance");
  }
  TensorValue out(t.dim(), t.lower(), t.upper());
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  do {
    std::vector<int> sw = idx;
    std::swap(sw[static_cast<std::size_t>(slot_a)], sw[static_cast<std::size_t>(slot_b)]);
    out.data()[out.offset(idx)] = 0.5 * (t.data()[t.offset(idx)] - t.data()[t.offset(sw)]);
  } while (next_index(idx, t.dim()));
  return out;
}

std::vector<double> as_matrix(const TensorValue& t) {
  if (t.rank() != 2) throw InvalidArgument("as_matrix: rank-2 tensor required");
  return {t.data().begin(), t.data().end()};
}

}  // namespace kkforms
