#include "kkforms/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kkforms {

namespace {

using std::size_t;

std::vector<double> eta_diag(int n, int negatives) {
  std::vector<double> e(static_cast<size_t>(n), 1.0);
  for (int i = 0; i < negatives; ++i) e[static_cast<size_t>(i)] = -1.0;
  return e;
}

template <class S>
S eta_quad(const std::vector<double>& eta, std::span<const S> x, int o) {
  S q(0.0);
  for (size_t i = 0; i < eta.size(); ++i) q += eta[i] * x[static_cast<size_t>(o) + i] * x[static_cast<size_t>(o) + i];
  return q;
}

// scale · η/(1+(k/4)ηyy)² into the diagonal block starting at (o, o).
template <class S>
void put_real_form(std::span<const S> x, std::span<S> out, int D, int o, const std::vector<double>& eta, double k,
                   const S& scale) {
  S den = 1.0 + 0.25 * k * eta_quad(eta, x, o);
  S f = scale / (den * den);
  for (size_t i = 0; i < eta.size(); ++i) {
    const size_t r = static_cast<size_t>(o) + i;
    out[r * static_cast<size_t>(D) + r] = eta[i] * f;
  }
}

struct CpxForm {
  int d = 0;
  int sigma = 1;
  std::vector<double> eta, eps, epsl;
  double c = 0.0;    // holomorphic coefficient F²/(4d)
  double amp = 0.0;  // potential amplitude ½√(|F²|/d)
};

CpxForm cpx_form(int r_pairs, int s_pairs, int sigma, double c, double amp) {
  CanonicalStructure cs = canonical_structure(r_pairs, s_pairs, sigma);
  CpxForm f;
  f.d = cs.d;
  f.sigma = sigma;
  f.eta = cs.eta;
  f.eps = cs.eps;
  f.epsl = cs.eps_lower();
  f.c = c;
  f.amp = amp;
  return f;
}

// [η + c((ηxx)η − (ηx)(ηx)ᵀ − σ(ε_l x)(ε_l x)ᵀ)] / (1+cηxx)², d×d into blk.
template <class S>
void cpx_metric(const CpxForm& f, std::span<const S> x, int o, std::vector<S>& blk) {
  const size_t d = static_cast<size_t>(f.d);
  blk.assign(d * d, S(0.0));
  S q = eta_quad(f.eta, x, o);
  std::vector<S> nx(d), ex(d, S(0.0));
  for (size_t m = 0; m < d; ++m) nx[m] = f.eta[m] * x[static_cast<size_t>(o) + m];
  for (size_t m = 0; m < d; ++m)
    for (size_t v = 0; v < d; ++v) {
      if (f.epsl[m * d + v] != 0.0) ex[m] += f.epsl[m * d + v] * x[static_cast<size_t>(o) + v];
    }
  S den = 1.0 + f.c * q;
  S inv = 1.0 / (den * den);
  for (size_t m = 0; m < d; ++m)
    for (size_t v = 0; v < d; ++v) {
      S num = f.c * (-(nx[m] * nx[v]) - static_cast<double>(f.sigma) * ex[m] * ex[v]);
      if (m == v) num += f.eta[m] * (1.0 + f.c * q);
      blk[m * d + v] = num * inv;
    }
}

// A_μ = amp (1+cηxx) ε_μ^κ g_{κλ} x^λ
template <class S>
void cpx_potential(const CpxForm& f, std::span<const S> x, int o, const std::vector<S>& blk, std::vector<S>& A) {
  const size_t d = static_cast<size_t>(f.d);
  A.assign(d, S(0.0));
  std::vector<S> gx(d, S(0.0));
  for (size_t k = 0; k < d; ++k)
    for (size_t l = 0; l < d; ++l) gx[k] += blk[k * d + l] * x[static_cast<size_t>(o) + l];
  S pre = f.amp * (1.0 + f.c * eta_quad(f.eta, x, o));
  for (size_t m = 0; m < d; ++m) {
    S s(0.0);
    for (size_t k = 0; k < d; ++k) {
      if (f.eps[m * d + k] != 0.0) s += f.eps[m * d + k] * gx[k];
    }
    A[m] = pre * s;
  }
}

double half_width(double c, int dims) {
  if (c == 0.0) return 1.0;
  return std::min(1.0, std::sqrt(0.5 / (std::abs(c) * dims)));
}

std::function<bool(const ChartPoint&)> denominator_guard(std::vector<double> eta, int o, double c) {
  return [eta = std::move(eta), o, c](const ChartPoint& p) {
    double q = 0.0;
    for (size_t i = 0; i < eta.size(); ++i) q += eta[i] * p[o + static_cast<int>(i)] * p[o + static_cast<int>(i)];
    return std::abs(1.0 + c * q) >= 0.1;
  };
}

std::function<bool(const ChartPoint&)> all_of(std::vector<std::function<bool(const ChartPoint&)>> preds) {
  return [preds = std::move(preds)](const ChartPoint& p) {
    for (const auto& f : preds) {
      if (f && !f(p)) return false;
    }
    return true;
  };
}

void fail(const std::string& msg) { throw ParameterError(msg); }

void require_sign(int v, const char* what) {
  if (v != 1 && v != -1) fail(std::string(what) + " must be +1 or -1");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

constexpr double kKinkBox = 2.5;      // |√(k/2) ξ¹| ≤ 2.5
constexpr double kWarpCollar = 0.05;  // |tanh(√(k/2) ξ¹)| ≥ 0.05
constexpr double kGapMargin = 0.05;

// 2-d kink pieces, standard branch. Coordinates (ξ⁰, ξ¹); profile depends on ξ¹.
template <class S>
void kink_metric(double k, std::span<const S> x, S& g00) {
  const double s = std::sqrt(0.5 * k);
  S sh = sech(s * x[1]);
  S sh2 = sh * sh;
  g00 = -(k * k) * sh2 * sh2;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::real_space_form: return "real_space_form";
    case Family::cpx_space_form: return "cpx_space_form";
    case Family::product: return "product";
    case Family::kink2: return "kink2";
    case Family::kink_warped: return "kink_warped";
    case Family::kk_nullity_one: return "kk_nullity_one";
    case Family::ckink3: return "ckink3";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  throw ParameterError("unknown family '" + name + "'");
}

std::vector<double> CanonicalStructure::eps_lower() const {
  const size_t n = static_cast<size_t>(d);
  std::vector<double> out(n * n, 0.0);
  for (size_t m = 0; m < n; ++m)
    for (size_t v = 0; v < n; ++v) out[m * n + v] = eps[m * n + v] * eta[v];
  return out;
}

CanonicalStructure canonical_structure(int r_pairs, int s_pairs, int sigma) {
  if (r_pairs < 1) fail("complex/para-complex blocks need r' >= 1");
  if (s_pairs < 0 || s_pairs > r_pairs) fail("signature index s' must satisfy 0 <= s' <= r'");
  require_sign(sigma, "sigma");
  CanonicalStructure cs;
  cs.d = 2 * r_pairs;
  cs.sigma = sigma;
  const size_t rp = static_cast<size_t>(r_pairs);
  const size_t d = 2 * rp;
  auto ed = eta_diag(r_pairs, s_pairs);
  cs.eta.assign(d, 0.0);
  cs.eps.assign(d * d, 0.0);
  for (size_t i = 0; i < rp; ++i) {
    cs.eta[i] = sigma * ed[i];
    cs.eta[rp + i] = ed[i];
    cs.eps[i * d + rp + i] = ed[i];
    cs.eps[(rp + i) * d + i] = -sigma * ed[i];
  }
  return cs;
}

BlockMetric assemble_block_metric(int r, int n, const SmoothField& ext, const SmoothField& int_metric,
                                  const SmoothField& warp, const SmoothField& a) {
  const int d = r + n;
  if (r < 1 || n < 1) throw InvalidArgument("assemble_block_metric: need r >= 1 and n >= 1");
  for (const SmoothField* f : {&ext, &int_metric, &a}) {
    if (f->dim() != d || f->valence().lower != 2 || f->valence().upper != 0) {
      throw InvalidArgument("assemble_block_metric: block fields must be padded d x d covariant fields");
    }
  }
  if (warp.dim() != d || warp.components() != 1) throw InvalidArgument("assemble_block_metric: warp must be a scalar");

  BlockMetric b;
  b.r = r;
  b.n = n;
  b.ext = ext;
  b.c = int_metric;
  b.warp = warp;
  b.a = a;
  b.h = SmoothField::make(d, {2, 0}, [int_metric, warp, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    std::vector<S> c(out.size()), w(1);
    int_metric.eval(x, std::span<S>(c));
    warp.eval(x, std::span<S>(w));
    for (size_t i = 0; i < out.size(); ++i) out[i] = S(0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const size_t o = static_cast<size_t>(i * d + j);
        out[o] = w[0] * c[o];
      }
  });
  SmoothField h = b.h;
  b.assembled = SmoothField::make(d, {2, 0}, [ext, h, a, r, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    const size_t D = static_cast<size_t>(d);
    std::vector<S> ge(D * D), hh(D * D), aa(D * D);
    ext.eval(x, std::span<S>(ge));
    h.eval(x, std::span<S>(hh));
    a.eval(x, std::span<S>(aa));
    const size_t R = static_cast<size_t>(r);
    // ah[α][j] = a_α^k h_{kj}
    std::vector<S> ah(D * D, S(0.0));
    for (size_t al = 0; al < R; ++al)
      for (size_t j = R; j < D; ++j) {
        S s(0.0);
        for (size_t k = R; k < D; ++k) s += aa[al * D + k] * hh[k * D + j];
        ah[al * D + j] = s;
      }
    for (size_t al = 0; al < R; ++al)
      for (size_t be = 0; be < R; ++be) {
        S s = ge[al * D + be];
        for (size_t l = R; l < D; ++l) s += ah[al * D + l] * aa[be * D + l];
        out[al * D + be] = s;
      }
    for (size_t al = 0; al < R; ++al)
      for (size_t j = R; j < D; ++j) {
        out[al * D + j] = ah[al * D + j];
        out[j * D + al] = ah[al * D + j];
      }
    for (size_t i = R; i < D; ++i)
      for (size_t j = R; j < D; ++j) out[i * D + j] = hh[i * D + j];
  });
  return b;
}

SolutionInstance SolutionInstance::opposite() const {
  SolutionInstance o = *this;
  o.g = g.scaled(-1.0);
  o.eps_d = -eps_d;
  o.expected.k = -expected.k;
  o.expected.signature_index = dim - expected.signature_index;
  o.label = label + " [opposite]";
  if (block) {
    o.block->ext = block->ext.scaled(-1.0);
    o.block->warp = block->warp.scaled(-1.0);
    o.block->h = block->h.scaled(-1.0);
    o.block->assembled = block->assembled.scaled(-1.0);
  }
  if (structure) o.structure->g = structure->g.scaled(-1.0);
  if (kink) {
    o.kink->g2 = kink->g2.scaled(-1.0);
    o.kink->k = -kink->k;
    if (kink->lambda.valid()) o.kink->lambda = kink->lambda.scaled(-1.0);
  }
  return o;
}

double kink_phi(double k, double xi1, int profile_sign) {
  return profile_sign * std::sqrt(2.0 * k) * std::tanh(std::sqrt(0.5 * k) * xi1);
}

double KinkGeometry::phi_at(double xi1) const { return kink_phi(k, xi1, profile_sign); }

KinkGeometry make_kink(double k, int profile_sign, bool anti) {
  if (!(k > 0.0)) fail("kink: requires k > 0");
  require_sign(profile_sign, "profile_sign");
  KinkGeometry kg;
  kg.k = k;
  kg.profile_sign = profile_sign;
  kg.anti = anti;
  const double flip = anti ? 1.0 : -1.0;
  const double s = std::sqrt(0.5 * k);
  kg.g = SmoothField::make(2, {2, 0}, [k, flip](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    S g00;
    kink_metric<S>(k, x, g00);
    out[0] = flip * g00;
    out[1] = S(0.0);
    out[2] = S(0.0);
    out[3] = S(flip);
  });
  const double ps = profile_sign;
  kg.A = SmoothField::make(2, {1, 0}, [k, s, ps](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    S sh = sech(s * x[1]);
    out[0] = ps * k * sh * sh;
    out[1] = S(0.0);
  });
  kg.phi = SmoothField::make(2, {0, 0}, [k, s, ps](auto x, auto out) {
    out[0] = ps * std::sqrt(2.0 * k) * tanh(s * x[1]);
  });
  return kg;
}

SolutionInstance make_real_space_form(int d, int s, double k, int eps_d) {
  if (d < 2) fail("real_space_form: requires d >= 2");
  if (s < 0 || s > d) fail("real_space_form: signature index must satisfy 0 <= s <= d");
  require_sign(eps_d, "eps_d");
  auto eta = eta_diag(d, s);
  SolutionInstance in;
  in.family = Family::real_space_form;
  in.label = "real_space_form(d=" + std::to_string(d) + ",s=" + std::to_string(s) + ",k=" + fmt(k) + ")";
  in.params = {{"d", d}, {"s", s}, {"k", k}, {"eps_d", 1}};
  in.dim = d;
  in.g = SmoothField::make(d, {2, 0}, [eta, k, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    put_real_form<S>(x, out, d, 0, eta, k, S(1.0));
  });
  in.A = SmoothField::make(d, {1, 0}, [](auto, auto out) {
    using S = std::remove_reference_t<decltype(out[0])>;
    for (auto& v : out) v = S(0.0);
  });
  const double w = half_width(0.25 * k, d);
  in.domain.lo.assign(static_cast<size_t>(d), -w);
  in.domain.hi.assign(static_cast<size_t>(d), w);
  in.domain.predicate = denominator_guard(eta, 0, 0.25 * k);
  in.domain.margin = 0.1;
  in.expected.k = k;
  in.expected.F2 = 0.0;
  in.expected.rank = 0;
  in.expected.nullity = d;
  in.expected.signature_index = s;
  if (eps_d < 0) {
    in = in.opposite();
    in.params["eps_d"] = -1;
  }
  return in;
}

namespace {

void check_cpx(const char* fam, int r_pairs, int s_pairs, int sigma, double F2) {
  if (r_pairs < 1) fail(std::string(fam) + ": requires r' >= 1 (external dimension 2r')");
  if (s_pairs < 0 || s_pairs > r_pairs) fail(std::string(fam) + ": signature index must satisfy 0 <= s' <= r'");
  require_sign(sigma, "sigma");
  if (F2 == 0.0 || !std::isfinite(F2)) fail(std::string(fam) + ": requires F^2 != 0 (maximal rank gauge field)");
  if ((F2 > 0 ? 1 : -1) != sigma) fail(std::string(fam) + ": sigma must equal sign(F^2)");
}

int cpx_signature(int r_pairs, int s_pairs, int sigma) { return sigma > 0 ? 2 * s_pairs : r_pairs; }

}  // namespace

SolutionInstance make_cpx_space_form(int r_pairs, int s_pairs, int sigma, double F2, int eps_d) {
  check_cpx("cpx_space_form", r_pairs, s_pairs, sigma, F2);
  require_sign(eps_d, "eps_d");
  const int d = 2 * r_pairs;
  CpxForm cf = cpx_form(r_pairs, s_pairs, sigma, F2 / (4.0 * d), 0.5 * std::sqrt(std::abs(F2) / d));
  SolutionInstance in;
  in.family = Family::cpx_space_form;
  in.label = "cpx_space_form(r'=" + std::to_string(r_pairs) + ",s'=" + std::to_string(s_pairs) +
             ",sigma=" + std::to_string(sigma) + ",F2=" + fmt(F2) + ")";
  in.params = {{"rp", r_pairs}, {"s", s_pairs}, {"sigma", sigma}, {"F2", F2}, {"eps_d", 1}};
  in.dim = d;
  in.g = SmoothField::make(d, {2, 0}, [cf](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    std::vector<S> blk;
    cpx_metric<S>(cf, x, 0, blk);
    std::copy(blk.begin(), blk.end(), out.begin());
  });
  in.A = SmoothField::make(d, {1, 0}, [cf](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    std::vector<S> blk, A;
    cpx_metric<S>(cf, x, 0, blk);
    cpx_potential<S>(cf, x, 0, blk, A);
    std::copy(A.begin(), A.end(), out.begin());
  });
  const double w = half_width(cf.c, d);
  in.domain.lo.assign(static_cast<size_t>(d), -w);
  in.domain.hi.assign(static_cast<size_t>(d), w);
  in.domain.predicate = denominator_guard(cf.eta, 0, cf.c);
  in.domain.margin = 0.1;
  in.expected.k = -(d + 2) * F2 / (8.0 * d);
  in.expected.F2 = F2;
  in.expected.rank = d;
  in.expected.nullity = 0;
  in.expected.signature_index = cpx_signature(r_pairs, s_pairs, sigma);
  in.structure = ExternalStructure{in.g, in.A, sigma, cf.c};
  if (eps_d < 0) {
    in = in.opposite();
    in.params["eps_d"] = -1;
  }
  return in;
}

namespace {

SmoothField padded_zero(int d) {
  return SmoothField::make(d, {2, 0}, [](auto, auto out) {
    using S = std::remove_reference_t<decltype(out[0])>;
    for (auto& v : out) v = S(0.0);
  });
}

SmoothField unit_scalar(int d) {
  return SmoothField::make(d, {0, 0}, [](auto, auto out) {
    using S = std::remove_reference_t<decltype(out[0])>;
    out[0] = S(1.0);
  });
}

// External potential padded with zeros along the internal directions.
template <class Fn>
SmoothField padded_potential(int d, Fn ext_potential) {
  return SmoothField::make(d, {1, 0}, [ext_potential](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    ext_potential(x, out);
  });
}

}  // namespace

SolutionInstance make_product_solution(int r_pairs, int s_ext, int sigma, double F2, int n, int s_int, int eps_d) {
  check_cpx("product", r_pairs, s_ext, sigma, F2);
  if (n <= 1) fail("product: requires internal dimension n > 1 (n = 1 is the nullity-one family)");
  if (s_int < 0 || s_int > n) fail("product: internal signature index must satisfy 0 <= s_int <= n");
  require_sign(eps_d, "eps_d");
  const int r = 2 * r_pairs;
  const int d = r + n;
  CpxForm cf = cpx_form(r_pairs, s_ext, sigma, F2 / (4.0 * r), 0.5 * std::sqrt(std::abs(F2) / r));
  const double k_int = -F2 / (4.0 * r);
  auto eta_int = eta_diag(n, s_int);

  SmoothField ext = SmoothField::make(d, {2, 0}, [cf, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    std::vector<S> blk;
    cpx_metric<S>(cf, x, 0, blk);
    const size_t R = static_cast<size_t>(cf.d);
    for (size_t i = 0; i < R; ++i)
      for (size_t j = 0; j < R; ++j) out[i * static_cast<size_t>(d) + j] = blk[i * R + j];
  });
  SmoothField cint = SmoothField::make(d, {2, 0}, [eta_int, k_int, r, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    put_real_form<S>(x, out, d, r, eta_int, k_int, S(1.0));
  });
  BlockMetric bm = assemble_block_metric(r, n, ext, cint, unit_scalar(d), padded_zero(d));

  SolutionInstance in;
  in.family = Family::product;
  in.label = "product(r'=" + std::to_string(r_pairs) + ",s_ext=" + std::to_string(s_ext) +
             ",sigma=" + std::to_string(sigma) + ",F2=" + fmt(F2) + ",n=" + std::to_string(n) +
             ",s_int=" + std::to_string(s_int) + ")";
  in.params = {{"rp", r_pairs}, {"s_ext", s_ext}, {"sigma", sigma}, {"F2", F2},
               {"n", n},        {"s_int", s_int}, {"eps_d", 1}};
  in.dim = d;
  in.g = bm.assembled;
  in.A = padded_potential(d, [cf](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    std::vector<S> blk, A;
    cpx_metric<S>(cf, x, 0, blk);
    cpx_potential<S>(cf, x, 0, blk, A);
    for (size_t i = 0; i < A.size(); ++i) out[i] = A[i];
  });
  in.block = bm;

  const double we = half_width(cf.c, r);
  const double wi = half_width(0.25 * k_int, n);
  in.domain.lo.assign(static_cast<size_t>(d), 0.0);
  in.domain.hi.assign(static_cast<size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    const double w = i < r ? we : wi;
    in.domain.lo[static_cast<size_t>(i)] = -w;
    in.domain.hi[static_cast<size_t>(i)] = w;
  }
  in.domain.predicate = all_of({denominator_guard(cf.eta, 0, cf.c), denominator_guard(eta_int, r, 0.25 * k_int)});
  in.domain.margin = 0.1;

  // Restricted to the external block the geometry is the maximal-rank form.
  SolutionInstance ext_form = make_cpx_space_form(r_pairs, s_ext, sigma, F2);
  in.structure = ExternalStructure{ext_form.g, ext_form.A, sigma, cf.c};

  in.expected.k = -(r + 2) * F2 / (8.0 * r);
  in.expected.F2 = F2;
  in.expected.rank = r;
  in.expected.nullity = n;
  in.expected.signature_index = cpx_signature(r_pairs, s_ext, sigma) + s_int;
  if (eps_d < 0) {
    in = in.opposite();
    in.params["eps_d"] = -1;
  }
  return in;
}

namespace {

KinkData kink_data(const KinkGeometry& kg) {
  KinkData kd;
  kd.g2 = kg.g;
  kd.A2 = kg.A;
  kd.phi = kg.phi;
  kd.k = kg.k;
  kd.sigma = -1;
  return kd;
}

// Kink ×_λ (internal block) on coordinates (ξ⁰, ξ¹, y...).
SolutionInstance kink_product(double k, int n, int s_int, int warp_sign, double kappa, int profile_sign) {
  const int d = 2 + n;
  const double s = std::sqrt(0.5 * k);
  KinkGeometry kg = make_kink(k, profile_sign, true);
  auto eta_int = eta_diag(n, s_int);

  SmoothField ext = SmoothField::make(d, {2, 0}, [k, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    S g00;
    kink_metric<S>(k, x, g00);
    out[0] = g00;
    out[static_cast<size_t>(d) + 1] = S(1.0);
  });
  SmoothField cint = SmoothField::make(d, {2, 0}, [eta_int, kappa, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    put_real_form<S>(x, out, d, 2, eta_int, kappa, S(1.0));
  });
  const double w4k = warp_sign * 4.0 * k;
  SmoothField warp = SmoothField::make(d, {0, 0}, [w4k, s](auto x, auto out) {
    auto t = tanh(s * x[1]);
    out[0] = w4k * t * t;
  });
  BlockMetric bm = assemble_block_metric(2, n, ext, cint, warp, padded_zero(d));

  SolutionInstance in;
  in.dim = d;
  in.g = bm.assembled;
  const double ps = profile_sign;
  in.A = padded_potential(d, [k, s, ps](auto x, auto out) {
    auto sh = sech(s * x[1]);
    out[0] = ps * k * sh * sh;
  });
  in.block = bm;
  in.kink = kink_data(kg);

  const double wi = half_width(0.25 * kappa, n);
  in.domain.lo.assign(static_cast<size_t>(d), -wi);
  in.domain.hi.assign(static_cast<size_t>(d), wi);
  in.domain.lo[0] = -1.0;
  in.domain.hi[0] = 1.0;
  in.domain.lo[1] = -kKinkBox / s;
  in.domain.hi[1] = kKinkBox / s;
  in.domain.predicate = all_of({[s](const ChartPoint& p) { return std::abs(std::tanh(s * p[1])) >= kWarpCollar; },
                                denominator_guard(eta_int, 2, 0.25 * kappa)});
  in.domain.margin = kWarpCollar;
  in.expected.k = k;
  in.expected.rank = 2;
  in.expected.nullity = n;
  in.expected.signature_index = 1 + (warp_sign > 0 ? s_int : n - s_int);
  return in;
}

}  // namespace

SolutionInstance make_kink2(double k, int warp_sign, int profile_sign, bool anti) {
  if (!(k > 0.0)) fail("kink2: requires k > 0");
  require_sign(warp_sign, "warp_sign");
  require_sign(profile_sign, "profile_sign");
  SolutionInstance in = kink_product(k, 1, 0, warp_sign, 0.0, profile_sign);
  in.family = Family::kink2;
  in.label = "kink2(k=" + fmt(k) + ",warp=" + std::to_string(warp_sign) + ")";
  in.params = {{"k", k}, {"warp_sign", warp_sign}, {"profile_sign", profile_sign}, {"anti", 1}};
  if (!anti) {
    in = in.opposite();
    in.params["anti"] = 0;
  }
  return in;
}

SolutionInstance make_kink_warped(double k, int n, int s_int, int warp_sign, bool anti, int profile_sign,
                                  std::optional<double> internal_curvature) {
  if (!(k > 0.0)) fail("kink_warped: requires k > 0");
  if (n <= 1) fail("kink_warped: requires internal dimension n > 1");
  if (s_int < 0 || s_int > n) fail("kink_warped: internal signature index must satisfy 0 <= s_int <= n");
  require_sign(warp_sign, "warp_sign");
  require_sign(profile_sign, "profile_sign");
  // Standard branch: warp +4k tanh² pairs with curvature +2k², −4k tanh² with −2k².
  // The opposite branch flips the whole metric, which flips the internal curvature.
  const double kappa = warp_sign * 2.0 * k * k;
  if (internal_curvature) {
    const double want = anti ? kappa : -kappa;
    if (std::abs(*internal_curvature - want) > 1e-12 * std::max(1.0, std::abs(want))) {
      fail("kink_warped: internal curvature must be " + fmt(want) + " for warp sign " + std::to_string(warp_sign) +
           (anti ? " on the standard branch" : " on the opposite branch") + " (pairing of warp and curvature signs)");
    }
  }
  SolutionInstance in = kink_product(k, n, s_int, warp_sign, kappa, profile_sign);
  in.family = Family::kink_warped;
  in.label = "kink_warped(k=" + fmt(k) + ",n=" + std::to_string(n) + ",s_int=" + std::to_string(s_int) +
             ",warp=" + std::to_string(warp_sign) + ")";
  in.params = {{"k", k}, {"n", n}, {"s_int", s_int}, {"warp_sign", warp_sign}, {"profile_sign", profile_sign},
               {"anti", 1}};
  if (!anti) {
    in = in.opposite();
    in.params["anti"] = 0;
  }
  return in;
}

SolutionInstance make_kk_nullity_one(int r_pairs, int s_pairs, int sigma, double F2, double l, int lambda,
                                     int eps_d) {
  check_cpx("kk_nullity_one", r_pairs, s_pairs, sigma, F2);
  require_sign(lambda, "lambda");
  require_sign(eps_d, "eps_d");
  if (!std::isfinite(l)) fail("kk_nullity_one: l must be finite");
  const int r = 2 * r_pairs;
  const int d = r + 1;
  const double H = F2 / r + 4.0 * r * l * l / (lambda * F2);
  CpxForm cf = cpx_form(r_pairs, s_pairs, sigma, 0.25 * H, 0.5 * std::sqrt(std::abs(F2) / r));
  const double coef = 2.0 * l * r / std::abs(F2);
  const double lam = lambda;

  SmoothField ext = SmoothField::make(d, {2, 0}, [cf, d](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    std::vector<S> blk;
    cpx_metric<S>(cf, x, 0, blk);
    const size_t R = static_cast<size_t>(cf.d);
    for (size_t i = 0; i < R; ++i)
      for (size_t j = 0; j < R; ++j) out[i * static_cast<size_t>(d) + j] = blk[i * R + j];
  });
  SmoothField cint = SmoothField::make(d, {2, 0}, [d](auto, auto out) {
    using S = std::remove_reference_t<decltype(out[0])>;
    for (auto& v : out) v = S(0.0);
    out[static_cast<size_t>(d * d - 1)] = S(1.0);
  });
  SmoothField warp = SmoothField::make(d, {0, 0}, [lam](auto, auto out) {
    using S = std::remove_reference_t<decltype(out[0])>;
    out[0] = S(lam);
  });
  SmoothField a = SmoothField::make(d, {2, 0}, [cf, coef, d, r](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    std::vector<S> blk, A;
    cpx_metric<S>(cf, x, 0, blk);
    cpx_potential<S>(cf, x, 0, blk, A);
    for (size_t al = 0; al < static_cast<size_t>(r); ++al) out[al * static_cast<size_t>(d) + static_cast<size_t>(r)] = coef * A[al];
  });
  BlockMetric bm = assemble_block_metric(r, 1, ext, cint, warp, a);

  SolutionInstance in;
  in.family = Family::kk_nullity_one;
  in.label = "kk_nullity_one(r'=" + std::to_string(r_pairs) + ",s'=" + std::to_string(s_pairs) +
             ",sigma=" + std::to_string(sigma) + ",F2=" + fmt(F2) + ",l=" + fmt(l) +
             ",lambda=" + std::to_string(lambda) + ")";
  in.params = {{"rp", r_pairs}, {"s", s_pairs}, {"sigma", sigma}, {"F2", F2},
               {"l", l},        {"lambda", lambda}, {"eps_d", 1}};
  in.dim = d;
  in.g = bm.assembled;
  in.A = padded_potential(d, [cf](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    std::vector<S> blk, A;
    cpx_metric<S>(cf, x, 0, blk);
    cpx_potential<S>(cf, x, 0, blk, A);
    for (size_t i = 0; i < A.size(); ++i) out[i] = A[i];
  });
  in.block = bm;

  SmoothField g_ext = SmoothField::make(r, {2, 0}, [cf](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    std::vector<S> blk;
    cpx_metric<S>(cf, x, 0, blk);
    std::copy(blk.begin(), blk.end(), out.begin());
  });
  SmoothField A_ext = SmoothField::make(r, {1, 0}, [cf](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    std::vector<S> blk, A;
    cpx_metric<S>(cf, x, 0, blk);
    cpx_potential<S>(cf, x, 0, blk, A);
    std::copy(A.begin(), A.end(), out.begin());
  });
  in.structure = ExternalStructure{g_ext, A_ext, sigma, cf.c};

  const double w = half_width(cf.c, r);
  in.domain.lo.assign(static_cast<size_t>(d), -w);
  in.domain.hi.assign(static_cast<size_t>(d), w);
  in.domain.lo[static_cast<size_t>(r)] = -1.0;
  in.domain.hi[static_cast<size_t>(r)] = 1.0;
  in.domain.predicate = denominator_guard(cf.eta, 0, cf.c);
  in.domain.margin = 0.1;

  in.expected.k = r * l * l / (lambda * F2) - (r + 2) * F2 / (8.0 * r);
  in.expected.F2 = F2;
  in.expected.rank = r;
  in.expected.nullity = 1;
  in.expected.signature_index = cpx_signature(r_pairs, s_pairs, sigma) + (lambda < 0 ? 1 : 0);
  in.expected.l = l;
  if (eps_d < 0) {
    in = in.opposite();
    in.params["eps_d"] = -1;
  }
  return in;
}

double ckink_gap(double K, double L) { return std::sqrt(2.0 / K) * std::atanh(std::sqrt(std::abs(L) / (2.0 * K))); }

double ckink_phi(double K, double L, double xi1, int profile_sign) {
  const double t = std::tanh(std::sqrt(0.5 * K) * xi1);
  return profile_sign * std::sqrt(2.0 * K * t * t + L);
}

double ckink_lambda(double K, double L, int tau, double xi1) {
  const double t = std::tanh(std::sqrt(0.5 * K) * xi1);
  return -2.0 * tau * (2.0 * K * t * t + L);
}

SolutionInstance make_ckink(double K, double L, int tau, int profile_sign, bool anti) {
  if (!(K > 0.0)) fail("ckink3: requires K > 0");
  require_sign(tau, "tau");
  require_sign(profile_sign, "profile_sign");
  if (!(tau * L > 0.0)) {
    fail("ckink3: requires tau*L > 0 (L positive for the centripetal branch tau=+1, negative for the centrifugal "
         "branch tau=-1)");
  }
  if (tau < 0 && std::abs(L) >= 2.0 * K) fail("ckink3: centrifugal branch requires |L| < 2K (the gap covers everything)");
  const double s = std::sqrt(0.5 * K);
  if (tau < 0 && ckink_gap(K, L) + kGapMargin >= kKinkBox / s) {
    fail("ckink3: gap leaves no sampling region; reduce |L|");
  }
  const double ps = profile_sign;
  const double a_num = K * std::sqrt(2.0 * tau * L);
  const double tt = tau;

  auto parts = [K, L, s, a_num, tt](auto x, auto& g00, auto& a0, auto& lam) {
    auto t = tanh(s * x[1]);
    auto sh = sech(s * x[1]);
    auto ch = cosh(s * x[1]);
    auto sh2 = sh * sh;
    auto den = 2.0 * K * t * t + L;
    g00 = -2.0 * K * K * K * sh2 * sh2 * t * t / den;
    a0 = a_num / (2.0 * (2.0 * K + L) * ch * ch - 4.0 * K);
    lam = -2.0 * tt * den;
  };
  SmoothField ext = SmoothField::make(3, {2, 0}, [parts](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    S g00, a0, lam;
    parts(x, g00, a0, lam);
    out[0] = g00;
    out[4] = S(1.0);
  });
  SmoothField cint = SmoothField::make(3, {2, 0}, [](auto, auto out) {
    using S = std::remove_reference_t<decltype(out[0])>;
    for (auto& v : out) v = S(0.0);
    out[8] = S(1.0);
  });
  SmoothField warp = SmoothField::make(3, {0, 0}, [parts](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    S g00, a0, lam;
    parts(x, g00, a0, lam);
    out[0] = lam;
  });
  SmoothField a = SmoothField::make(3, {2, 0}, [parts, ps](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    for (auto& v : out) v = S(0.0);
    S g00, a0, lam;
    parts(x, g00, a0, lam);
    out[2] = ps * a0;  // a^y_0
  });
  BlockMetric bm = assemble_block_metric(2, 1, ext, cint, warp, a);

  SolutionInstance in;
  in.family = Family::ckink3;
  in.label = "ckink3(K=" + fmt(K) + ",L=" + fmt(L) + ",tau=" + std::to_string(tau) + ")";
  in.params = {{"K", K}, {"L", L}, {"tau", tau}, {"profile_sign", profile_sign}, {"anti", 1}};
  in.dim = 3;
  in.g = bm.assembled;
  in.A = padded_potential(3, [K, s, ps](auto x, auto out) {
    auto sh = sech(s * x[1]);
    out[0] = ps * K * sh * sh;
  });
  in.block = bm;

  KinkData kd;
  kd.g2 = SmoothField::make(2, {2, 0}, [parts](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    S g00, a0, lam;
    parts(x, g00, a0, lam);
    out[0] = g00;
    out[1] = S(0.0);
    out[2] = S(0.0);
    out[3] = S(1.0);
  });
  kd.A2 = SmoothField::make(2, {1, 0}, [K, s, ps](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    auto sh = sech(s * x[1]);
    out[0] = ps * K * sh * sh;
    out[1] = S(0.0);
  });
  kd.phi = SmoothField::make(2, {0, 0}, [K, L, s, ps](auto x, auto out) {
    auto t = tanh(s * x[1]);
    out[0] = ps * sqrt(2.0 * K * t * t + L);
  });
  kd.lambda = SmoothField::make(2, {0, 0}, [parts](auto x, auto out) {
    using S = std::remove_const_t<typename decltype(x)::element_type>;
    S g00, a0, lam;
    parts(x, g00, a0, lam);
    out[0] = lam;
  });
  kd.k = K + 0.75 * L;
  kd.sigma = -1;
  kd.centrifugal = true;
  kd.tau = tau;
  kd.l2 = 2.0 * tau * (K + 0.5 * L) * (K + 0.5 * L) * L;
  kd.K = K;
  kd.L = L;
  in.kink = kd;

  in.domain.lo = {-1.0, -kKinkBox / s, -1.0};
  in.domain.hi = {1.0, kKinkBox / s, 1.0};
  const double gap = tau < 0 ? ckink_gap(K, L) + kGapMargin : 0.0;
  in.domain.predicate = [s, gap](const ChartPoint& p) {
    return std::abs(std::tanh(s * p[1])) >= kWarpCollar && std::abs(p[1]) >= gap;
  };
  in.domain.margin = tau < 0 ? kGapMargin : kWarpCollar;

  in.expected.k = K + 0.75 * L;
  in.expected.rank = 2;
  in.expected.nullity = 1;
  in.expected.signature_index = tau > 0 ? 2 : 1;
  in.expected.l = std::sqrt(kd.l2);
  if (!anti) {
    in = in.opposite();
    in.params["anti"] = 0;
  }
  return in;
}

namespace {

struct ParamSpec {
  std::string name;
  double def;
  bool integer;
  std::string range;
};

std::vector<ParamSpec> param_schema(Family f) {
  switch (f) {
    case Family::real_space_form:
      return {{"d", 4, true, "integer >= 3"},
              {"s", 0, true, "integer, 0 <= s <= d"},
              {"k", 1.0, false, "real"},
              {"eps_d", 1, true, "+1 or -1"}};
    case Family::cpx_space_form:
      return {{"rp", 2, true, "integer >= 2 (d = 2rp)"},
              {"s", 0, true, "integer, 0 <= s <= rp"},
              {"sigma", 1, true, "sign(F2)"},
              {"F2", 8.0, false, "nonzero real"},
              {"eps_d", 1, true, "+1 or -1"}};
    case Family::product:
      return {{"rp", 1, true, "integer >= 1 (r = 2rp)"},
              {"s_ext", 0, true, "integer, 0 <= s_ext <= rp"},
              {"sigma", 1, true, "sign(F2)"},
              {"F2", 4.0, false, "nonzero real"},
              {"n", 2, true, "integer >= 2"},
              {"s_int", 0, true, "integer, 0 <= s_int <= n"},
              {"eps_d", 1, true, "+1 or -1"}};
    case Family::kink2:
      return {{"k", 1.0, false, "real > 0"},
              {"warp_sign", 1, true, "+1 or -1"},
              {"profile_sign", 1, true, "+1 or -1"},
              {"anti", 1, true, "1 (standard form) or 0 (opposite)"}};
    case Family::kink_warped:
      return {{"k", 1.0, false, "real > 0"},
              {"n", 2, true, "integer >= 2"},
              {"s_int", 0, true, "integer, 0 <= s_int <= n"},
              {"warp_sign", 1, true, "+1 or -1"},
              {"profile_sign", 1, true, "+1 or -1"},
              {"anti", 1, true, "1 (standard form) or 0 (opposite)"}};
    case Family::kk_nullity_one:
      return {{"rp", 1, true, "integer >= 1 (r = 2rp)"},
              {"s", 0, true, "integer, 0 <= s <= rp"},
              {"sigma", 1, true, "sign(F2)"},
              {"F2", 4.0, false, "nonzero real"},
              {"l", 1.0, false, "real"},
              {"lambda", 1, true, "+1 or -1"},
              {"eps_d", 1, true, "+1 or -1"}};
    case Family::ckink3:
      return {{"K", 2.0, false, "real > 0"},
              {"L", 0.5, false, "real, tau*L > 0, |L| < 2K for tau=-1"},
              {"tau", 1, true, "+1 or -1"},
              {"profile_sign", 1, true, "+1 or -1"},
              {"anti", 1, true, "1 (standard form) or 0 (opposite)"}};
  }
  return {};
}

const char* family_description(Family f) {
  switch (f) {
    case Family::real_space_form: return "real space form of constant sectional curvature k, A = 0";
    case Family::cpx_space_form: return "complex / para-complex space form of constant holomorphic curvature";
    case Family::product: return "direct product of a complex / para-complex space form and a real space form";
    case Family::kink2: return "gravitational kink warped with a line";
    case Family::kink_warped: return "gravitational kink warped with a real space form of curvature +-2k^2";
    case Family::kk_nullity_one: return "Kaluza-Klein product over a complex / para-complex space form";
    case Family::ckink3: return "centripetal / centrifugal kink deformation";
  }
  return "";
}

// Where each family is stated in the classification, by subject rather than numbering.
const char* family_reference(Family f) {
  switch (f) {
    case Family::real_space_form: return "null rank solutions: real space forms of constant sectional curvature";
    case Family::cpx_space_form: return "maximal rank solutions: complex and para-complex space forms";
    case Family::product: return "nullity greater than one, rank at least two: products with real space forms";
    case Family::kink2: return "nullity equal to one, rank two: kink warped with a line";
    case Family::kink_warped: return "nullity greater than one, rank two: gravitational kink warped products";
    case Family::kk_nullity_one: return "nullity equal to one, rank at least two: Kaluza-Klein products";
    case Family::ckink3: return "nullity equal to one, rank two: centripetal and centrifugal kink deformations";
  }
  return "";
}

const char* family_rank(Family f) {
  switch (f) {
    case Family::real_space_form: return "0";
    case Family::cpx_space_form: return "d";
    case Family::product: return "2rp";
    case Family::kink2: return "2";
    case Family::kink_warped: return "2";
    case Family::kk_nullity_one: return "2rp";
    case Family::ckink3: return "2";
  }
  return "";
}

const char* family_nullity(Family f) {
  switch (f) {
    case Family::real_space_form: return "d";
    case Family::cpx_space_form: return "0";
    case Family::product: return "n";
    case Family::kink2: return "1";
    case Family::kink_warped: return "n";
    case Family::kk_nullity_one: return "1";
    case Family::ckink3: return "1";
  }
  return "";
}

class Params {
 public:
  Params(Family f, const ParamMap& given) : schema_(param_schema(f)), fam_(family_name(f)) {
    for (const auto& [k, v] : given) {
      auto it = std::find_if(schema_.begin(), schema_.end(), [&](const ParamSpec& p) { return p.name == k; });
      if (it == schema_.end()) fail(fam_ + ": unknown parameter '" + k + "'");
      if (!std::isfinite(v)) fail(fam_ + ": parameter '" + k + "' must be finite");
      if (it->integer && v != std::round(v)) fail(fam_ + ": parameter '" + k + "' must be an integer");
      values_[k] = v;
    }
  }
  double real(const std::string& n) const {
    auto it = values_.find(n);
    if (it != values_.end()) return it->second;
    for (const auto& p : schema_)
      if (p.name == n) return p.def;
    fail(fam_ + ": no parameter '" + n + "'");
    return 0.0;
  }
  int integer(const std::string& n) const { return static_cast<int>(std::lround(real(n))); }
  bool flag(const std::string& n) const {
    int v = integer(n);
    if (v != 0 && v != 1) fail(fam_ + ": parameter '" + n + "' must be 0 or 1");
    return v == 1;
  }

 private:
  std::vector<ParamSpec> schema_;
  std::string fam_;
  ParamMap values_;
};

}  // namespace

SolutionInstance make_instance(Family f, const ParamMap& given) {
  Params p(f, given);
  switch (f) {
    case Family::real_space_form: {
      int d = p.integer("d");
      if (d < 3) fail("real_space_form: verification requires d >= 3");
      return make_real_space_form(d, p.integer("s"), p.real("k"), p.integer("eps_d"));
    }
    case Family::cpx_space_form: {
      int rp = p.integer("rp");
      if (rp < 2) fail("cpx_space_form: verification requires d = 2rp >= 4");
      return make_cpx_space_form(rp, p.integer("s"), p.integer("sigma"), p.real("F2"), p.integer("eps_d"));
    }
    case Family::product:
      return make_product_solution(p.integer("rp"), p.integer("s_ext"), p.integer("sigma"), p.real("F2"),
                                   p.integer("n"), p.integer("s_int"), p.integer("eps_d"));
    case Family::kink2:
      return make_kink2(p.real("k"), p.integer("warp_sign"), p.integer("profile_sign"), p.flag("anti"));
    case Family::kink_warped:
      return make_kink_warped(p.real("k"), p.integer("n"), p.integer("s_int"), p.integer("warp_sign"),
                              p.flag("anti"), p.integer("profile_sign"));
    case Family::kk_nullity_one:
      return make_kk_nullity_one(p.integer("rp"), p.integer("s"), p.integer("sigma"), p.real("F2"), p.real("l"),
                                 p.integer("lambda"), p.integer("eps_d"));
    case Family::ckink3:
      return make_ckink(p.real("K"), p.real("L"), p.integer("tau"), p.integer("profile_sign"), p.flag("anti"));
  }
  fail("unknown family");
  return {};
}

std::vector<ParamMap> default_params(Family f) {
  switch (f) {
    case Family::real_space_form:
      return {{{"d", 3}, {"s", 1}, {"k", 0.1}},
              {{"d", 4}, {"s", 0}, {"k", 1.0}},
              {{"d", 6}, {"s", 2}, {"k", -10.0}, {"eps_d", -1}}};
    case Family::cpx_space_form:
      return {{{"rp", 2}, {"s", 0}, {"sigma", 1}, {"F2", 8.0}},
              {{"rp", 2}, {"s", 1}, {"sigma", -1}, {"F2", -0.3}, {"eps_d", -1}},
              {{"rp", 3}, {"s", 1}, {"sigma", 1}, {"F2", 80.0}}};
    case Family::product:
      return {{{"rp", 1}, {"s_ext", 0}, {"sigma", 1}, {"F2", 4.0}, {"n", 2}, {"s_int", 0}},
              {{"rp", 1}, {"s_ext", 0}, {"sigma", -1}, {"F2", -0.4}, {"n", 2}, {"s_int", 1}, {"eps_d", -1}},
              {{"rp", 2}, {"s_ext", 1}, {"sigma", 1}, {"F2", 40.0}, {"n", 2}, {"s_int", 0}}};
    case Family::kink2:
      return {{{"k", 0.1}, {"warp_sign", 1}},
              {{"k", 1.0}, {"warp_sign", -1}, {"anti", 0}},
              {{"k", 10.0}, {"warp_sign", 1}, {"profile_sign", -1}}};
    case Family::kink_warped:
      return {{{"k", 1.0}, {"n", 2}, {"s_int", 0}, {"warp_sign", 1}},
              {{"k", 0.1}, {"n", 3}, {"s_int", 1}, {"warp_sign", -1}, {"anti", 0}},
              {{"k", 10.0}, {"n", 4}, {"s_int", 0}, {"warp_sign", 1}}};
    case Family::kk_nullity_one:
      return {{{"rp", 1}, {"s", 0}, {"sigma", 1}, {"F2", 4.0}, {"l", 1.0}, {"lambda", 1}},
              {{"rp", 1}, {"s", 0}, {"sigma", -1}, {"F2", -4.0}, {"l", 0.7}, {"lambda", -1}, {"eps_d", -1}},
              {{"rp", 2}, {"s", 1}, {"sigma", 1}, {"F2", 30.0}, {"l", 5.0}, {"lambda", 1}}};
    case Family::ckink3:
      return {{{"K", 2.0}, {"L", 0.5}, {"tau", 1}},
              {{"K", 2.0}, {"L", -0.5}, {"tau", -1}},
              {{"K", 5.0}, {"L", 1.0}, {"tau", 1}, {"anti", 0}}};
  }
  return {};
}

std::vector<SolutionInstance> default_grid() {
  std::vector<SolutionInstance> out;
  for (Family f : kAllFamilies) {
    for (const auto& p : default_params(f)) out.push_back(make_instance(f, p));
  }
  return out;
}

nlohmann::ordered_json catalog_manifest() {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["families"] = nlohmann::ordered_json::array();
  for (Family f : kAllFamilies) {
    nlohmann::ordered_json row;
    row["id"] = family_name(f);
    row["description"] = family_description(f);
    row["rank"] = family_rank(f);
    row["nullity"] = family_nullity(f);
    row["reference"] = family_reference(f);
    nlohmann::ordered_json ps = nlohmann::ordered_json::array();
    for (const auto& p : param_schema(f)) {
      nlohmann::ordered_json e;
      e["name"] = p.name;
      e["type"] = p.integer ? "integer" : "real";
      e["default"] = p.def;
      e["range"] = p.range;
      ps.push_back(e);
    }
    row["parameters"] = ps;
    j["families"].push_back(row);
  }
  return j;
}

}  // namespace kkforms
