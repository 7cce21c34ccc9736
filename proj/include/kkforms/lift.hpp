#pragma once

// The (d+1)-dimensional metric ĝ = g + ε_d(A + dx^d)² and its Weyl check.

#include <cstdint>
#include <vector>

#include "kkforms/field.hpp"
#include "kkforms/tensor.hpp"
#include "kkforms/verify.hpp"

namespace kkforms {

/// Components (extra coordinate last):
///   ĝ_{μν} = g_{μν} + ε_d A_μA_ν,  ĝ_{μd} = ε_d A_μ,  ĝ_{dd} = ε_d
/// The assembled field reads only x^0..x^{d−1}, so its jets are products of
/// the base jets and have no x^d dependence.
struct LiftedMetric {
  SmoothField g, A;
  int eps_d = 1;
  SmoothField assembled;  // (d+1)-dimensional
  bool independent = true;
  int base_dim() const { return g.dim(); }
};

LiftedMetric lift(const SmoothField& g, const SmoothField& A, int eps_d);

/// A base point extended with x^d = 0.
ChartPoint lifted_point(const ChartPoint& p);

/// max|C| / max|Riemann| of the lifted metric at a base point.
PointResidual lifted_weyl_residual(const LiftedMetric& lifted, const ChartPoint& p);

/// Rejects d + 1 = 3 (InvalidArgument).
ResidualReport weyl_vanishing(const LiftedMetric& lifted, const std::vector<ChartPoint>& points,
                              double tolerance = 1e-7, std::uint64_t seed = 0);

struct Reduced {
  SmoothField g, A;
  int eps_d = 1;
};

/// g_{μν} = ĝ_{μν} − ĝ_{μd}ĝ_{νd}/ĝ_{dd}, A_μ = ĝ_{μd}/ĝ_{dd}, ε_d = ĝ_{dd}.
/// Throws InvalidArgument for a lifted metric flagged as x^d-dependent.
Reduced reduce(const LiftedMetric& lifted);

/// Same for a bare (d+1)-dimensional field; every first partial along x^d
/// at the probe points must vanish and ĝ_{dd} must be ±1, otherwise
/// InvalidArgument.
Reduced reduce(const SmoothField& lifted, const std::vector<ChartPoint>& probes);

}  // namespace kkforms
