#pragma once

// Pointwise residuals of the field equations, constant extraction and the
// adapted-frame checks.
//
// Every residual carries the largest magnitude among the summands of its
// equation at that point; the relative residual is abs / max(scale, 1e-30).
//
// The equations are written for a positive extra coordinate. Functions that
// take `eps_d` evaluate them on ε_d·g with ε_d·k, so a solution and its
// opposite give identical residuals.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kkforms/catalog.hpp"
#include "kkforms/curvature.hpp"
#include "kkforms/field.hpp"
#include "kkforms/tensor.hpp"

namespace kkforms {

inline constexpr double kScaleFloor = 1e-30;

struct PointResidual {
  double abs = 0.0;
  double scale = 0.0;
  double rel() const;
  /// Worst of two residuals (by relative value).
  static PointResidual worst(const PointResidual& a, const PointResidual& b);
};

/// abs = max|Σ terms|, scale = max over terms of max|term|.
PointResidual tensor_residual(const TensorValue& total, std::initializer_list<double> term_scales);

struct ResidualReport {
  std::string equation;
  int points = 0;
  std::uint64_t seed = 0;
  double max_abs = 0.0, mean_abs = 0.0;
  double max_rel = 0.0, mean_rel = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;

  nlohmann::ordered_json to_json() const;
};

/// Pure fold over per-point residuals. An empty sample fails.
ResidualReport aggregate(const std::string& equation, const std::vector<PointResidual>& per_point,
                         std::uint64_t seed, double tolerance);

// ---- field equations ------------------------------------------------------

struct GJEquationSet {
  TensorValue weyl_eq;  // (4,0), Riemann index symmetries
  TensorValue ricci_eq;  // (2,0), symmetric traceless
  TensorValue gauge_eq;  // (3,0) [κ][μ][ν], antisymmetric in μν
  PointResidual r_weyl, r_ricci, r_gauge;
};

/// Needs gauge data (A may be zero) and d ≥ 3; no knowledge of k.
GJEquationSet gj_residual(const LocalGeometry& geo);
GJEquationSet gj_residual(const SmoothField& g, const SmoothField& A, const ChartPoint& p, int eps_d = 1);

struct CurvatureIdentity {
  PointResidual riemann, ricci, scalar;
};

/// Riemann, Ricci and scalar identities with the supplied constant. The
/// LocalGeometry overload takes k for the metric `geo` was built on.
CurvatureIdentity curvature_identity_residual(const LocalGeometry& geo, double k);
CurvatureIdentity curvature_identity_residual(const SmoothField& g, const SmoothField& A, double k,
                                              const ChartPoint& p, int eps_d = 1);

struct KEstimate {
  double mean = 0.0, spread = 0.0, min = 0.0, max = 0.0;
  int points = 0;
};

/// Per point (R − (d+1)(d+2)F²/8)/(d(d−1)) on ε_d·g, returned with the
/// physical sign. Throws InvalidArgument on an empty sample.
KEstimate estimate_k(const SmoothField& g, const SmoothField& A, const std::vector<ChartPoint>& points,
                     int eps_d = 1);
double point_k(const LocalGeometry& geo);

struct TracelessKink {
  PointResidual traceless, kink, traceless_sym;
};

/// Needs GeometryOptions::derivatives.
TracelessKink traceless_kink_residual(const LocalGeometry& geo, double k);
TracelessKink traceless_kink_residual(const SmoothField& g, const SmoothField& A, double k, const ChartPoint& p,
                                      int eps_d = 1);

/// D_μK_ν + D_νK_μ for K_μ = D_νF_μ^ν/(d−1). Needs derivatives.
PointResidual killing_from_gauge(const LocalGeometry& geo);

struct StructureResidual {
  PointResidual j2, hermitian, dj, holomorphic;
  int sigma = 0;
  double coefficient = 0.0;
};

/// J = √(d/|F²|)F. σ = 0 takes the sign of F²; the holomorphic coefficient
/// defaults to F²/(4d). Needs derivatives. Throws InvalidArgument if F² = 0.
StructureResidual structure_residual(const LocalGeometry& geo, int sigma = 0,
                                     std::optional<double> coefficient = std::nullopt);
StructureResidual structure_residual(const SmoothField& g, const SmoothField& A, const ChartPoint& p, int sigma = 0,
                                     std::optional<double> coefficient = std::nullopt, int eps_d = 1);

PointResidual bianchi_residual(const LocalGeometry& geo);           // on the predicted Riemann tensor
PointResidual bianchi_residual_computed(const LocalGeometry& geo);  // on the computed one

// ---- two-dimensional kink systems -----------------------------------------

struct KinkOdeResidual {
  PointResidual curvature, kink, traceless;
  PointResidual gauge;  // F² − 2σφ² for the supplied potential (zero when none)
};

/// R = 2k + 3σφ² + τ3l²/φ⁴, ∇²φ + 2kφ + σφ³ − τl²/φ³ = 0 and the
/// traceless Hessian; l2 = 0 gives the undeformed system.
KinkOdeResidual kink_ode_residual(const SmoothField& g2, const SmoothField& phi, double k, int sigma,
                                  const ChartPoint& p, int eps_d = 1, double l2 = 0.0, int tau = 1,
                                  const SmoothField* A2 = nullptr);

struct CKinkResidual {
  KinkOdeResidual ode;
  PointResidual lambda;      // λ − τF² with F² = 2σφ²
  double k_map = 0.0;        // |k − K − 3L/4|
  double l2_map = 0.0;       // |l² − 2τ(K + L/2)²L|
};

/// Throws InvalidArgument when φ = 0 at p.
CKinkResidual ckink_ode_residual(const KinkData& kink, const ChartPoint& p, int eps_d = 1);

// ---- adapted frame --------------------------------------------------------

struct FundamentalForms {
  int r = 0, n = 0;
  TensorValue E_hat;  // (3,0) [i][α][β], internal index first, padded to d
  TensorValue E;      // (3,0) [α][i][j]
  TensorValue f;      // (3,0) [i][α][β], f^i_{αβ}
  PointResidual umbilic;  // E_{γij} − (1/n) h^{kl}E_{γkl} h_{ij}
  PointResidual trace;    // h^{ij}E_{αij} − n/(r−1) (F⁻¹)_α^β ∇_γF_β^γ
  PointResidual f_constraint;
};

/// `A` is the full potential; its external components define the residual
/// gauge field. Needs r ≥ 2 for the trace relation.
FundamentalForms fundamental_forms(const BlockMetric& block, const SmoothField& A, const ChartPoint& p);

}  // namespace kkforms
