#include "bflab/bellman.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "bflab/quadrature.hpp"
#include "bflab/rng.hpp"

namespace bflab::bellman {

Variant parse_variant(const std::string& s) {
  if (s == "phi") return Variant::phi;
  if (s == "phi0") return Variant::phi0;
  if (s == "fp" || s == "Fp") return Variant::fp;
  throw DomainError("unknown Bellman variant '" + s + "' (phi|phi0|fp)");
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::phi: return "phi";
    case Variant::phi0: return "phi0";
    case Variant::fp: return "fp";
  }
  return "?";
}

static void check_p(double p) {
  if (!(p > 1.0)) throw DomainError("Bellman candidates need p > 1");
}

double gamma_p(double p) {
  check_p(p);
  return p * std::pow(1.0 - 1.0 / pstar(p), p - 1.0);
}

double h_obstacle(double x, double y, double p) {
  return std::pow(std::abs(y), p) - std::pow(pstar(p) - 1.0, p) * std::pow(std::abs(x), p);
}

static double phi_raw(double ax, double ay, double p) {
  return std::pow(ax + ay, p - 1.0) * (ay - (pstar(p) - 1.0) * ax);
}

double eval_phi(double x, double y, double p, Variant v) {
  check_p(p);
  const double ax = std::abs(x), ay = std::abs(y);
  switch (v) {
    case Variant::phi:
      return gamma_p(p) * phi_raw(ax, ay, p);
    case Variant::phi0: {
      const double h = h_obstacle(x, y, p);
      return h <= 0.0 ? h : gamma_p(p) * phi_raw(ax, ay, p);
    }
    case Variant::fp:
      if (x < 0.0 || y < 0.0) throw DomainError("F_p is defined for x, y >= 0");
      return h_obstacle(x, y, p);
  }
  return 0.0;
}

BellmanCandidate phi_candidate(double p, Variant v) {
  check_p(p);
  BellmanCandidate c;
  c.name = variant_name(v);
  c.arity = 2;
  c.value = [p, v](const double* z) { return eval_phi(z[0], z[1], p, v); };
  if (v == Variant::fp) c.domain = [](const double* z) { return z[0] >= 0.0 && z[1] >= 0.0; };
  return c;
}

ZigzagReport zigzag_check(const BellmanCandidate& c, std::size_t samples, double step, double box,
                          std::uint64_t seed) {
  ZigzagReport rep;
  rep.samples = samples;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  CounterRng rng(seed, 0x5A5A);
  const double margin_eps = 1e-6 * box;
  for (std::size_t i = 0; i < samples; ++i) {
    double z[2];
    do {
      z[0] = rng.uniform(-box, box);
      z[1] = rng.uniform(-box, box);
    } while (std::abs(z[0]) < margin_eps || std::abs(z[1]) < margin_eps);
    const double a = rng.uniform() * step * box;
    for (int sgn : {1, -1}) {
      const double zp[2] = {z[0] + a, z[1] + sgn * a};
      const double zm[2] = {z[0] - a, z[1] - sgn * a};
      if (!c.domain(z) || !c.domain(zp) || !c.domain(zm)) continue;
      const double f0 = c.value(z), fp = c.value(zp), fm = c.value(zm);
      const double scale = 1.0 + std::max({std::abs(f0), std::abs(fp), std::abs(fm)});
      const double m = (f0 - 0.5 * (fp + fm)) / scale;
      if (m < rep.worst_margin) {
        rep.worst_margin = m;
        rep.witness_point = {z[0], z[1]};
        rep.witness_step = {a, sgn * a};
      }
    }
  }
  if (!std::isfinite(rep.worst_margin)) rep.worst_margin = 0.0;
  return rep;
}

MajorantReport majorant_check(Variant v, double p, std::size_t samples, double box,
                              std::uint64_t seed) {
  MajorantReport rep;
  rep.samples = samples;
  rep.worst_gap = std::numeric_limits<double>::infinity();
  CounterRng rng(seed, 0xA11A);
  for (std::size_t i = 0; i < samples; ++i) {
    double x = rng.uniform(-box, box), y = rng.uniform(-box, box);
    if (v == Variant::fp) {
      x = std::abs(x);
      y = std::abs(y);
    }
    const double h = h_obstacle(x, y, p);
    const double g = (eval_phi(x, y, p, v) - h) / (1.0 + std::abs(h));
    if (g < rep.worst_gap) {
      rep.worst_gap = g;
      rep.witness = {x, y};
    }
  }
  return rep;
}

namespace {

double nrm(const std::array<double, 2>& v) { return std::hypot(v[0], v[1]); }
double dotp(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return a[0] * b[0] + a[1] * b[1];
}

// phi(x,y) without gamma_p; the p < 2 form is multiplied through by (p-1).
double phi_vec(const std::array<double, 2>& x, const std::array<double, 2>& y, double p) {
  const double a = nrm(x), b = nrm(y), S = a + b;
  if (p >= 2.0) return (b - (p - 1.0) * a) * std::pow(S, p - 1.0);
  return ((p - 1.0) * b - a) * std::pow(S, p - 1.0);
}

}  // namespace

HessianForm hessian_form_identity(const std::array<double, 2>& x, const std::array<double, 2>& y,
                                  const std::array<double, 2>& dx, const std::array<double, 2>& dy,
                                  double p, double h) {
  check_p(p);
  const double a = nrm(x), b = nrm(y);
  const double scale = std::max(a, b);
  if (a < 1e-8 * scale || b < 1e-8 * scale || scale == 0.0)
    throw DomainError("hessian_form_identity: point on the singular locus |x| = 0 or |y| = 0");
  const double S = a + b;
  const double hp = dotp(dx, x) / a, kp = dotp(dy, y) / b;
  const double dx2 = dotp(dx, dx), dy2 = dotp(dy, dy);
  HessianForm out;
  if (p >= 2.0) {
    const double dyh = dy2 - kp * kp;
    out.analytic = -p * (p - 2.0) * std::pow(S, p - 1.0) / b * dyh -
                   p * (p - 1.0) * std::pow(S, p - 2.0) * (dx2 - dy2) -
                   p * (p - 1.0) * (p - 2.0) * a * std::pow(S, p - 3.0) * (hp + kp) * (hp + kp);
  } else {
    const double dxh = dx2 - hp * hp;
    out.analytic = -p * (2.0 - p) * std::pow(S, p - 1.0) / a * dxh -
                   p * (p - 1.0) * std::pow(S, p - 2.0) * (dx2 - dy2) -
                   p * (p - 1.0) * (2.0 - p) * b * std::pow(S, p - 3.0) * (hp + kp) * (hp + kp);
  }
  if (dx2 + dy2 == 0.0) {
    out.numeric = 0.0;
    return out;
  }
  const double t = h * scale;
  auto shift = [&](double s) {
    return phi_vec({x[0] + s * dx[0], x[1] + s * dx[1]}, {y[0] + s * dy[0], y[1] + s * dy[1]}, p);
  };
  out.numeric = (shift(t) - 2.0 * phi_vec(x, y, p) + shift(-t)) / (t * t);
  return out;
}

double h_section(double s, double c, double p) {
  return std::pow(0.5 * (1.0 + s), p) - std::pow(c, p) * std::pow(0.5 * (1.0 - s), p);
}

Feasibility linear_majorant_feasibility(double c, double p, int grid) {
  check_p(p);
  if (c < 0.0) throw DomainError("feasibility needs c >= 0");
  Feasibility out;
  const double gam = gamma_p(p);
  const double rho_max = 4.0 * pstar(p);
  auto ell = [](double s, double rho) { return 0.5 * (1.0 + s) - rho * 0.5 * (1.0 - s); };
  // 2 s g'(s) - p g(s) with a = 1.
  auto conv = [&](double s, double rho) { return s * (1.0 + rho) - p * ell(s, rho); };
  auto conv_ok = [&](double rho) { return conv(1.0, rho) >= -1e-12 && conv(-1.0, rho) >= -1e-12; };
  auto zero_ok = [&](double rho) {
    const double sr = (rho - 1.0) / (rho + 1.0);
    return h_section(sr, c, p) <= 0.0;
  };

  // Both constraints are monotone in rho: bisect for their switch points.
  auto bisect = [&](auto pred, bool want_true_above) {
    double lo = 0.0, hi = rho_max;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * rho_max; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (pred(mid) == want_true_above) hi = mid; else lo = mid;
    }
    return want_true_above ? hi : lo;
  };
  out.rho_lo = conv_ok(0.0) ? 0.0 : (conv_ok(rho_max) ? bisect(conv_ok, true) : rho_max + 1.0);
  out.rho_hi = zero_ok(rho_max) ? rho_max : (zero_ok(0.0) ? bisect(zero_ok, false) : -1.0);

  // Candidate rho values: coarse grid plus a zoomed grid on [rho_lo, rho_hi].
  std::vector<double> rhos;
  for (int i = 0; i <= grid; ++i) rhos.push_back(rho_max * i / grid);
  if (out.rho_lo <= out.rho_hi) {
    for (int i = 0; i <= 64; ++i) rhos.push_back(out.rho_lo + (out.rho_hi - out.rho_lo) * i / 64.0);
  }

  std::vector<double> sg(grid + 1);
  for (int i = 0; i <= grid; ++i) sg[i] = -1.0 + 2.0 * i / grid;
  double best_width = -std::numeric_limits<double>::infinity();
  for (double rho : rhos) {
    if (!conv_ok(rho) || !zero_ok(rho)) continue;
    const double sr = (rho - 1.0) / (rho + 1.0);
    double alo = 0.0, ahi = 4.0 * gam;
    for (double s : sg) {
      const double l = ell(s, rho);
      if (std::abs(s - sr) < 1e-12) continue;
      const double r = h_section(s, c, p) / l;
      if (l > 0.0) alo = std::max(alo, r);
      else ahi = std::min(ahi, r);
    }
    const double width = ahi - alo;
    if (width >= -1e-9 * (1.0 + ahi) && ahi > 0.0 && width > best_width) {
      best_width = width;
      out.feasible = true;
      out.rho = rho;
      out.a = std::max(alo, std::min(ahi, 0.5 * (alo + ahi)));
    }
  }
  return out;
}

double feasibility_transition(double p, double tol) {
  double lo = 1e-3, hi = 4.0 * pstar(p);
  if (linear_majorant_feasibility(lo, p).feasible) return lo;
  if (!linear_majorant_feasibility(hi, p).feasible)
    throw NumericError("feasibility search: no feasible c in range");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (linear_majorant_feasibility(mid, p).feasible) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

double h_section_inequality(double p, int grid) {
  if (p < 2.0) throw DomainError("h_section_inequality needs p >= 2");
  const double ps = pstar(p);
  const double cp = std::pow(ps - 1.0, p);
  const double sp = (ps - 2.0) / ps;
  const double lo = -1.0 + 1e-9;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double s = lo + (sp - lo) * i / grid;
    const double u = 0.5 * (1.0 + s), v = 0.5 * (1.0 - s);
    const double H = std::pow(u, p) - cp * std::pow(v, p);
    const double H1 = 0.5 * p * (std::pow(u, p - 1.0) + cp * std::pow(v, p - 1.0));
    const double H2 = 0.25 * p * (p - 1.0) * (std::pow(u, p - 2.0) - cp * std::pow(v, p - 2.0));
    const double e = s * s * H2 + (p - 1.0) * (-2.0 * s * H1 + p * H);
    worst = std::max(worst, e);
  }
  return worst;
}

double tau(double p) {
  if (!(p > 0.0)) throw DomainError("tau needs p > 0");
  // sin^p s near s = 0 is only as smooth as s^p; tanh-sinh absorbs that.
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  const double I = ts.integrate([p](double s) { return std::pow(std::sin(s), p); }, 0.0, 0.5 * kPi, 1e-15);
  return std::pow(2.0 / kPi * I, 1.0 / p);
}

double tau_closed_form(double p) {
  const double lg = std::lgamma(0.5 * (p + 1.0)) - 0.5 * std::log(kPi) - std::lgamma(0.5 * p + 1.0);
  return std::exp(lg / p);
}

double interpolation_constant(double q, double* argmin_p) {
  if (q < 2.0) throw DomainError("interpolation_constant needs q >= 2");
  if (q == 2.0) {
    if (argmin_p) *argmin_p = 2.0;
    return 1.0;
  }
  auto val = [q](double p) {
    const double th = (0.5 - 1.0 / q) / (0.5 - 1.0 / p);
    return th * std::log(std::sqrt(2.0) * (p - 1.0) / tau_closed_form(p));
  };
  const double pmax = 1e3;
  const int n = 240;
  int best = 0;
  double bv = std::numeric_limits<double>::infinity();
  std::vector<double> ps(n + 1);
  for (int i = 0; i <= n; ++i) {
    ps[i] = q * std::pow(pmax / q, static_cast<double>(i) / n);
    const double v = val(ps[i]);
    if (v < bv) {
      bv = v;
      best = i;
    }
  }
  const double a = ps[std::max(0, best - 1)], b = ps[std::min(n, best + 1)];
  double fm = 0.0;
  const double pm = quad::golden_min(val, a, b, 1e-10 * b, &fm);
  if (fm > bv) fm = bv;
  if (argmin_p) *argmin_p = fm == bv ? ps[best] : pm;
  return std::exp(fm);
}

BqReport bq_hessian_check(double Q, double alpha, std::size_t samples, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("bq_hessian_check needs alpha in (0, 1/2)");
  if (!(Q > 1.0)) throw DomainError("bq_hessian_check needs Q > 1");
  BqReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.worst_range = std::numeric_limits<double>::infinity();
  CounterRng rng(seed, 0xB0B0);
  const double qa = std::pow(Q, alpha);
  for (std::size_t i = 0; i < samples; ++i) {
    const double lx = rng.uniform(-std::log(1e3), std::log(1e3));
    const double x = std::exp(lx);
    const double prod = rng.uniform(1.0, Q);
    const double y = prod / x;
    const double dx = rng.normal(), dy = rng.normal();
    const double b = std::pow(x, alpha) * std::pow(y, alpha);
    // Analytic Hessian of x^a y^a.
    const double bxx = alpha * (alpha - 1.0) * b / (x * x);
    const double byy = alpha * (alpha - 1.0) * b / (y * y);
    const double bxy = alpha * alpha * b / (x * y);
    const double form = bxx * dx * dx + 2.0 * bxy * dx * dy + byy * dy * dy;
    const double u = dx / x, v = dy / y;
    const double need = alpha * (1.0 - 2.0 * alpha) * b * (u * u + v * v);
    const double norm = b * (u * u + v * v);
    const double margin = (-form - need) / norm;
    rep.worst_margin = std::min(rep.worst_margin, margin);
    const double exact = alpha * alpha * (u - v) * (u - v) / (u * u + v * v);
    rep.max_identity_err = std::max(rep.max_identity_err, std::abs(margin - exact));
    rep.worst_range = std::min(rep.worst_range, std::min(b, qa - b) / qa);
  }
  return rep;
}

double jn_phi(double x1, double x2, double eps, double q) {
  const double s = std::sqrt(eps - x2), se = std::sqrt(eps);
  return q * (1.0 - s) / (1.0 - se) * std::exp(x1 + s - se);
}

double jn_v(double x1, double x2, double delta) { return jn_phi(x1, x2, delta, 1.0); }

namespace {

using ld = long double;

ld jn_phi_ld(ld x1, ld x2, ld eps, ld q) {
  const ld s = std::sqrt(eps - x2), se = std::sqrt(eps);
  return q * (1.0L - s) / (1.0L - se) * std::exp(x1 + s - se);
}

struct Mat2 {
  double m11, m12, m22;
};

// Drift-modified matrix by centered differences in long double with one
// Richardson step.
Mat2 fd_matrix(double x1, double x2, double eps, double q, double h1, double h2) {
  auto f = [&](ld a, ld b) { return jn_phi_ld(a, b, eps, q); };
  auto once = [&](ld k1, ld k2) {
    const ld a = x1, b = x2;
    const ld f0 = f(a, b);
    const ld d11 = (f(a + k1, b) - 2 * f0 + f(a - k1, b)) / (k1 * k1);
    const ld d22 = (f(a, b + k2) - 2 * f0 + f(a, b - k2)) / (k2 * k2);
    const ld d12 = (f(a + k1, b + k2) - f(a + k1, b - k2) - f(a - k1, b + k2) + f(a - k1, b - k2)) /
                   (4 * k1 * k2);
    const ld d2 = (f(a, b + k2) - f(a, b - k2)) / (2 * k2);
    return std::array<ld, 3>{d11 - 2 * d2, d12, d22};
  };
  const auto A = once(h1, h2);
  const auto B = once(h1 / 2, h2 / 2);
  Mat2 m;
  m.m11 = static_cast<double>((4 * B[0] - A[0]) / 3);
  m.m12 = static_cast<double>((4 * B[1] - A[1]) / 3);
  m.m22 = static_cast<double>((4 * B[2] - A[2]) / 3);
  return m;
}

}  // namespace

JnReport jn_check(double eps, double q, int grid, double L, double clip) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("jn check needs 0 < delta < 1");
  if (q < 1.0) throw DomainError("jn check needs q >= 1");
  if (grid < 2) throw DomainError("jn check needs grid >= 2");
  JnReport rep;
  rep.max_eigenvalue = -std::numeric_limits<double>::infinity();
  rep.min_obstacle_gap = std::numeric_limits<double>::infinity();
  rep.x2_max = eps - clip;
  rep.clipped = clip > 0.0;
  if (rep.x2_max <= 0.0) throw DomainError("clip leaves an empty domain");
  for (int i = 0; i < grid; ++i) {
    const double x1 = -L + 2.0 * L * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double x2 = rep.x2_max * j / (grid - 1);
      const double s = std::sqrt(eps - x2);
      const double h1 = 1e-3;
      const double h2 = 1e-3 * s * s;
      const Mat2 m = fd_matrix(x1, x2, eps, q, h1, h2);
      // Closed form: C e^{x1+s} [[-s, 1/2], [1/2, -1/(4s)]].
      const double C = q * std::exp(-std::sqrt(eps)) / (1.0 - std::sqrt(eps)) * std::exp(x1 + s);
      const double a11 = -C * s, a12 = 0.5 * C, a22 = -C / (4.0 * s);
      const double sc = std::abs(a11) + std::abs(a12) + std::abs(a22);
      rep.max_analytic_err =
          std::max(rep.max_analytic_err,
                   (std::abs(m.m11 - a11) + std::abs(m.m12 - a12) + std::abs(m.m22 - a22)) / sc);
      const double tr = m.m11 + m.m22;
      const double det = m.m11 * m.m22 - m.m12 * m.m12;
      const double disc = std::sqrt(std::max(0.0, 0.25 * (m.m11 - m.m22) * (m.m11 - m.m22) + m.m12 * m.m12));
      rep.max_eigenvalue = std::max(rep.max_eigenvalue, 0.5 * tr + disc);
      rep.max_rel_det = std::max(rep.max_rel_det, std::abs(det) / (std::abs(m.m11 * m.m22) + m.m12 * m.m12));
      const double ob = std::exp(x1);
      rep.min_obstacle_gap = std::min(rep.min_obstacle_gap, (jn_phi(x1, x2, eps, q) - ob) / ob);
      ++rep.points;
    }
  }
  return rep;
}

}  // namespace bflab::bellman
