#pragma once

// Closed-form solution families: metric g, potential A, sampling domain and
// the constants each solution is asserted to have.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kkforms/field.hpp"
#include "kkforms/tensor.hpp"

namespace kkforms {

enum class Family { real_space_form, cpx_space_form, product, kink2, kink_warped, kk_nullity_one, ckink3 };

inline constexpr Family kAllFamilies[] = {Family::real_space_form, Family::cpx_space_form, Family::product,
                                          Family::kink2,           Family::kink_warped,    Family::kk_nullity_one,
                                          Family::ckink3};

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // ParameterError on unknown names

using ParamMap = std::map<std::string, double>;

struct ExpectedConstants {
  double k = 0.0;             // constant of the Riemann identity, physical sign
  std::optional<double> F2;   // set when F² is constant
  int rank = 0;
  int nullity = 0;
  int signature_index = 0;    // number of negative metric eigenvalues
  std::optional<double> l;    // angular-momentum constant (nullity one)
};

/// J = √(d/|F²|)F on a maximal-rank block, with holomorphic coefficient c
/// (Riemann = c(gg − gg + σJJ − σJJ − 2σJJ)).
struct ExternalStructure {
  SmoothField g, A;  // r-dimensional external geometry
  int sigma = 1;
  double coefficient = 0.0;
};

/// Two-dimensional kink data for the reduced ODE checks. Profiles are
/// functions of ξ¹, the second external coordinate.
struct KinkData {
  SmoothField g2, A2, phi;  // 2-d metric (physical sign), potential, scalar φ
  double k = 0.0;           // physical sign
  int sigma = -1;
  bool centrifugal = false;  // c-kink: the system with the l² terms
  int tau = 1;
  double l2 = 0.0;
  double K = 0.0, L = 0.0;
  SmoothField lambda;  // warp λ(ξ¹) as a 2-d scalar, c-kink only
};

/// Adapted-frame block metric: external g_{αβ}, internal h_{ij} = λ c_{ij},
/// off-diagonal potential a_α^i, assembled as
///   g_{αβ} + a_α^k a_β^l h_{kl} | a_α^k h_{kj}
///   h_{il} a_β^l               | h_{ij}
/// All parts are d-dimensional fields padded into their block positions:
/// ext at [α][β], c and h at [i][j], a^i_α at [α][i] (α < r ≤ i).
struct BlockMetric {
  int r = 0;
  int n = 0;
  SmoothField ext, c, warp, a, h, assembled;
  int dim() const { return r + n; }
};

BlockMetric assemble_block_metric(int r, int n, const SmoothField& ext, const SmoothField& int_metric,
                                  const SmoothField& warp, const SmoothField& a);

/// Canonical flat blocks η = diag(σ η_r', η_r') and ε_μ^ν = [[0, η_r'], [−σ η_r', 0]].
struct CanonicalStructure {
  int d = 0;
  int sigma = 1;
  std::vector<double> eta;  // diagonal
  std::vector<double> eps;  // d×d row-major, ε_μ^ν
  std::vector<double> eps_lower() const;  // ε_{μν} = ε_μ^κ η_{κν}
};
CanonicalStructure canonical_structure(int r_pairs, int s_pairs, int sigma);

struct SolutionInstance {
  Family family{};
  std::string label;
  ParamMap params;
  int dim = 0;
  int eps_d = 1;  // signature of the extra coordinate for which the lift is conformally flat
  SmoothField g, A;
  Domain domain;
  ExpectedConstants expected;
  std::optional<BlockMetric> block;
  std::optional<ExternalStructure> structure;
  std::optional<KinkData> kink;

  /// Same solution with the overall metric sign flipped: −g, −ε_d, k → −k.
  SolutionInstance opposite() const;
};

struct KinkGeometry {
  double k = 0.0;
  int profile_sign = 1;
  bool anti = true;
  SmoothField g, A, phi;  // 2-d
  double phi_at(double xi1) const;
};

/// Gravitational kink. anti = true gives the metric in its standard form
/// (g = diag(−k² sech⁴, 1), lifting with ε_d = +1, R → −4k);
/// anti = false its opposite.
KinkGeometry make_kink(double k, int profile_sign, bool anti);

SolutionInstance make_real_space_form(int d, int s, double k, int eps_d = 1);
SolutionInstance make_cpx_space_form(int r_pairs, int s_pairs, int sigma, double F2, int eps_d = 1);
SolutionInstance make_product_solution(int r_pairs, int s_ext, int sigma, double F2, int n, int s_int,
                                       int eps_d = 1);
SolutionInstance make_kink2(double k, int warp_sign, int profile_sign, bool anti);
SolutionInstance make_kink_warped(double k, int n, int s_int, int warp_sign, bool anti, int profile_sign = 1,
                                  std::optional<double> internal_curvature = std::nullopt);
SolutionInstance make_kk_nullity_one(int r_pairs, int s_pairs, int sigma, double F2, double l, int lambda,
                                     int eps_d = 1);
SolutionInstance make_ckink(double K, double L, int tau, int profile_sign, bool anti);

/// c-kink gap half-width √(2/K)·artanh√(|L|/(2K)) (τ = −1 only).
double ckink_gap(double K, double L);
double ckink_phi(double K, double L, double xi1, int profile_sign = 1);
double ckink_lambda(double K, double L, int tau, double xi1);
double kink_phi(double k, double xi1, int profile_sign = 1);

/// Build from a family name and named parameters (unknown names rejected,
/// omitted ones take documented defaults).
SolutionInstance make_instance(Family f, const ParamMap& params);

/// Three parameter tuples per family spanning small/medium/large curvature.
std::vector<SolutionInstance> default_grid();
std::vector<ParamMap> default_params(Family f);

/// One entry per family: identifier, parameters with defaults and ranges,
/// rank/nullity, description.
nlohmann::ordered_json catalog_manifest();

}  // namespace kkforms
