#include "bflab/qc_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bflab/quadrature.hpp"

namespace bflab::qc {

RadialMap make_map(double K, MapVariant v) {
  if (!(K >= 1.0)) throw DomainError("quasiconformal model needs K >= 1");
  return {K, v};
}

namespace {

double power_of(const RadialMap& f) {
  switch (f.variant) {
    case MapVariant::regular: return 1.0 / f.K;
    case MapVariant::inverse: return f.K;
    case MapVariant::singular: return 1.0 - 1.0 / f.K;
  }
  return 1.0;
}

}  // namespace

cplx RadialMap::operator()(cplx z) const {
  const double r = std::abs(z);
  const double a = power_of(*this);
  if (variant == MapVariant::singular) return std::pow(r, a) / z;
  return z * std::pow(r, a - 1.0);
}

cplx RadialMap::f_z(cplx z) const {
  const double r = std::abs(z);
  const double a = power_of(*this);
  if (variant == MapVariant::singular) return (0.5 * a - 1.0) * std::pow(r, a) / (z * z);
  return 0.5 * (1.0 + a) * std::pow(r, a - 1.0);
}

cplx RadialMap::f_zbar(cplx z) const {
  const double r = std::abs(z);
  const double a = power_of(*this);
  if (variant == MapVariant::singular) return 0.5 * a * std::pow(r, a - 2.0);
  return 0.5 * (a - 1.0) * std::pow(r, a - 1.0) * z / std::conj(z);
}

double RadialMap::jacobian(double r) const {
  const cplx z(r, 0.0);
  return std::norm(f_z(z)) - std::norm(f_zbar(z));
}

double beltrami_ratio_fd(const RadialMap& f, cplx z, double h) {
  const double s = h * std::abs(z);
  const cplx fx = (f(z + s) - f(z - s)) / (2.0 * s);
  const cplx fy = (f(z + cplx(0, s)) - f(z - cplx(0, s))) / (2.0 * s);
  const cplx fz = 0.5 * (fx - cplx(0, 1) * fy);
  const cplx fzb = 0.5 * (fx + cplx(0, 1) * fy);
  return std::abs(fzb) / std::abs(fz);
}

DistortionFit distortion_exponent(const RadialMap& f, const std::vector<double>& radii) {
  if (f.variant != MapVariant::regular) throw DomainError("distortion_exponent needs the regular map");
  if (radii.size() < 2) throw DomainError("distortion_exponent needs at least two radii");
  std::vector<double> lx, ly;
  DistortionFit fit;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radii must lie in (0, 1)");
    // Image of B_r is the disc of radius |f(r)|.
    const double R = std::abs(f(cplx(r, 0.0)));
    const double img = kPi * R * R;
    const double area = kPi * r * r;
    lx.push_back(std::log(area));
    ly.push_back(std::log(img));
    fit.ratios.push_back(img / std::pow(area, 1.0 / f.K));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  for (std::size_t i = 0; i < lx.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(ly[i] - (my + fit.slope * (lx[i] - mx))));
  return fit;
}

namespace {

double density(const RadialMap& f, double r) {
  const cplx z(r, 0.0);
  return std::abs(f.f_z(z)) + std::abs(f.f_zbar(z));
}

// int_a^b g(r)^q 2 pi r dr in the variable u = log r.
double shell(const RadialMap& f, double q, double a, double b) {
  auto g = [&](double u) {
    const double r = std::exp(u);
    return std::pow(density(f, r), q) * 2.0 * kPi * r * r;
  };
  return quad::integrate_gl(g, std::log(a), std::log(b), 4, 24);
}

}  // namespace

double sobolev_annulus(const RadialMap& f, double q, double eps) {
  if (f.variant != MapVariant::singular) throw DomainError("sobolev_threshold needs the singular map");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("sobolev_threshold needs 0 < eps < 1");
  double s = 0.0, b = 1.0;
  while (b > eps) {
    const double a = std::max(eps, 0.5 * b);
    s += shell(f, q, a, b);
    b = a;
  }
  return s;
}

double sobolev_annulus_exact(const RadialMap& f, double q, double eps) {
  // (|f_z| + |f_zbar|) = r^{a-2} with a = 1 - 1/K.
  const double a = 1.0 - 1.0 / f.K;
  const double e = (a - 2.0) * q + 2.0;
  const double L = std::log(eps);
  if (std::abs(e * L) < 1e-8) return -2.0 * kPi * L * (1.0 + 0.5 * e * L);
  return -2.0 * kPi * std::expm1(e * L) / e;
}

SobolevReport sobolev_threshold(const RadialMap& f, double q, double eps_min) {
  if (!(eps_min > 0.0 && eps_min < 0.5)) throw DomainError("eps_min must lie in (0, 1/2)");
  SobolevReport rep;
  const double kk = f.k();
  rep.predicted_rate = (1.0 + kk - q) * (1.0 + 1.0 / f.K);
  const int levels = std::max(2, static_cast<int>(std::floor(-std::log2(eps_min))));
  double acc = 0.0;
  std::vector<double> shells;
  for (int j = 0; j < levels; ++j) {
    const double b = std::ldexp(1.0, -j), a = 0.5 * b;
    const double s = shell(f, q, a, b);
    shells.push_back(s);
    acc += s;
    rep.partial.push_back(acc);
  }
  // Shell integrals of a power density are geometric; fit the ratio on the
  // deepest pair.
  const double ratio = shells[levels - 1] / shells[levels - 2];
  rep.rate = -std::log2(ratio);
  rep.converges = rep.rate > 0.0;
  return rep;
}

double sobolev_threshold_q(const RadialMap& f, double tol) {
  double lo = 1.0 + 1e-9, hi = 2.0 - 1e-9;
  if (!sobolev_threshold(f, lo, 1e-6).converges) return lo;
  if (sobolev_threshold(f, hi, 1e-6).converges) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (sobolev_threshold(f, mid, 1e-6).converges) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Average of r^g over the square [-h/2, h/2]^2, g > -2.
double origin_cell_average(double g, double h) {
  const double I = quad::integrate_adaptive(
      [g](double th) { return std::pow(std::cos(th), -(g + 2.0)); }, 0.0, 0.25 * kPi, 1e-14);
  return 8.0 / (g + 2.0) * std::pow(0.5 * h, g + 2.0) * I / (h * h);
}

double cell_average(double g, double cx, double cy, double h, int order) {
  const auto& r = quad::gauss_legendre(order);
  double s = 0.0;
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const double x = cx + 0.5 * h * r.x[a], y = cy + 0.5 * h * r.x[b];
      s += r.w[a] * r.w[b] * std::pow(x * x + y * y, 0.5 * g);
    }
  return 0.25 * s;
}

}  // namespace

planar::PlanarWeight jacobian_weight(const RadialMap& f, double p, int n, double L) {
  if (f.variant == MapVariant::singular) throw DomainError("jacobian_weight needs a homeomorphic model map");
  const double kk = f.k();
  const double pmax = kk > 0.0 ? 1.0 + 1.0 / kk : std::numeric_limits<double>::infinity();
  if (p < 2.0) throw DomainError("jacobian_weight needs p >= 2");
  if (p >= pmax) throw DomainError("jacobian_weight needs p < 1 + 1/k");
  if (n % 2 != 0) throw DomainError("jacobian_weight needs an even grid");
  // J = c r^{2a-2}, so w = J^{1-p/2} is c' r^g with g = (2a-2)(1-p/2).
  const double a = f.variant == MapVariant::regular ? 1.0 / f.K : f.K;
  const double g = (2.0 * a - 2.0) * (1.0 - 0.5 * p);
  const double c = std::pow(a, 1.0 - 0.5 * p);
  planar::GridField w(n, L), s(n, L);
  const double h = L / n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = -0.5 * L + i * h, y = -0.5 * L + j * h;
      const int di = std::abs(i - n / 2), dj = std::abs(j - n / 2);
      double aw, as;
      if (di == 0 && dj == 0) {
        aw = origin_cell_average(g, h);
        as = origin_cell_average(-g, h);
      } else {
        const int order = std::max(di, dj) <= 3 ? 16 : 4;
        aw = cell_average(g, x, y, h, order);
        as = cell_average(-g, x, y, h, order);
      }
      w(i, j) = c * aw;
      s(i, j) = as / c;
    }
  planar::PlanarWeight out{w, s, 2.0};
  return out;
}

}  // namespace bflab::qc
