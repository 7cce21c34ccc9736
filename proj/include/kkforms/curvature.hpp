#pragma once

// Christoffel symbols, curvature tensors and covariant derivatives.
//
// Conventions (fixed once, used everywhere):
//   Γ_{μν}^λ      = ½ g^{λσ}(∂_μg_{σν} + ∂_νg_{σμ} − ∂_σg_{μν}),  stored [μ][ν][λ]
//   R_{μνκ}^λ     = ∂_μΓ_{νκ}^λ − ∂_νΓ_{μκ}^λ + Γ_{μξ}^λΓ_{νκ}^ξ − Γ_{νξ}^λΓ_{μκ}^ξ
//   R_{μνκλ}      = R_{μνκ}^ξ g_{ξλ}
//   R_{μν}        = R_{κμν}^κ,   R = g^{μν}R_{μν}
//   C_{μνκλ}      = R_{μνκλ} − (g_{μλ}P_{κν} + g_{κν}P_{μλ} − g_{μκ}P_{λν} − g_{λν}P_{μκ})
//                   with P = (Ric − R g/(2(d−1)))/(d−2)  (d ≥ 3)
//
// With these signs a space of constant sectional curvature k has
// R_{μνκλ} = k(g_{μλ}g_{κν} − g_{μκ}g_{λν}) and R = d(d−1)k.

#include <optional>

#include "kkforms/field.hpp"
#include "kkforms/tensor.hpp"

namespace kkforms {

struct CurvatureBundle {
  TensorValue christoffel;  // (2,1)  Γ_{μν}^λ
  TensorValue riemann_up;   // (3,1)  R_{μνκ}^λ
  TensorValue riemann;      // (4,0)  R_{μνκλ}
  TensorValue ricci;        // (2,0)
  double scalar = 0.0;
  TensorValue weyl;  // (4,0), empty unless requested and d ≥ 3
  bool has_weyl = false;
};

TensorValue christoffel(const SmoothField& g, const ChartPoint& p);

/// Throws InvalidArgument when Weyl is requested with d < 3.
CurvatureBundle curvature_bundle(const SmoothField& g, const ChartPoint& p, bool with_weyl = true);

/// D_a X from the value X, its partials dX (extra leading covariant slot,
/// dX(a, ...) = ∂_a X(...)) and the Christoffel symbols.
TensorValue covariant_derivative(const TensorValue& x, const TensorValue& dx, const TensorValue& gamma);

/// D_a t for an arbitrary tensor field; result has one more covariant slot, in front.
TensorValue covariant_derivative(const SmoothField& t, const SmoothField& g, const ChartPoint& p);

/// D^a D_a F_{μν} for a two-form field F.
TensorValue two_form_laplacian(const SmoothField& F, const SmoothField& g, const ChartPoint& p);

/// max_{μν} |D_μK_ν + D_νK_μ|.
double killing_residual(const SmoothField& K, const SmoothField& g, const ChartPoint& p);
double killing_residual(const TensorValue& DK);

/// Everything the residual checks need at one point, computed in one pass.
struct GeometryOptions {
  bool derivatives = false;  // first partials of curvature, DF, divF, J (needs order-3 jets)
  bool weyl = true;
  std::optional<double> k;  // builds the predicted Riemann tensor from (g, F, k)
};

struct LocalGeometry {
  int dim = 0;
  TensorValue g, ginv, christoffel, riemann_up, riemann, ricci, weyl;
  TensorValue d_christoffel;  // (3,1) ∂_aΓ_{μν}^λ
  double scalar = 0.0;
  bool has_weyl = false;

  bool has_gauge = false;
  TensorValue F;        // (2,0)
  TensorValue F_mixed;  // (1,1) F_μ^ν
  TensorValue FF;       // (2,0) F_{μκ}F_ν^κ
  TensorValue DF;       // (3,0) D_κF_{μν}
  TensorValue divF;     // (1,0) D_λF_ν^λ
  TensorValue dF;       // (3,0) ∂_κF_{μν}
  double F2 = 0.0;

  bool has_model = false;
  TensorValue model;  // (4,0)

  bool has_J = false;
  TensorValue J;  // (1,1) √(d/|F²|) F_μ^ν

  // Partials with a leading derivative slot, e.g. d_riemann(a, μ, ν, κ, λ).
  bool has_derivatives = false;
  TensorValue d_riemann, d_model, d_DF, d_divF, d_J;
  TensorValue ddF;  // (4,0) ∂_a∂_κF_{μν}
};

LocalGeometry local_geometry(const SmoothField& g, const SmoothField* A, const ChartPoint& p,
                             const GeometryOptions& opt = {});

}  // namespace kkforms
