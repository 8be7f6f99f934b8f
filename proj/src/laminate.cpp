#include "bflab/laminate.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "bflab/rng.hpp"

namespace bflab::laminate {

Laminate Laminate::reflected_y() const {
  Laminate out = *this;
  for (auto& a : out.atoms) a.at.y = -a.at.y;
  for (auto& r : out.rays) r.dy = -r.dy;
  return out;
}

Laminate Laminate::scaled(double c) const {
  Laminate out = *this;
  for (auto& a : out.atoms) a.mass *= c;
  for (auto& r : out.rays) r.weight *= c;
  return out;
}

Laminate Laminate::operator+(const Laminate& o) const {
  Laminate out = *this;
  out.atoms.insert(out.atoms.end(), o.atoms.begin(), o.atoms.end());
  out.rays.insert(out.rays.end(), o.rays.begin(), o.rays.end());
  return out;
}

TestFunction2D phi1(double p) {
  return {"phi1", [p](double x, double y) { return std::pow(std::abs(x + y), p); }, Tag::power, p};
}

TestFunction2D phi2(double p) {
  return {"phi2", [p](double x, double y) { return std::pow(std::abs(x - y), p); }, Tag::power, p};
}

Params s0_K_p_relations(double p, double eta) {
  const double pe = p + eta;
  if (!(pe > 2.0)) throw DomainError("s0_K_p_relations needs p + eta > 2");
  Params r;
  r.p_eta = pe;
  r.s0 = 1.0 - 2.0 / pe;
  r.K = pe / (pe - 2.0);
  r.residual = std::abs((pe - 1.0) - (r.K + 1.0) / (r.K - 1.0));
  return r;
}

static void check_k(double K, double p, double eta) {
  if (!(K > 1.0)) throw DomainError("laminate needs K > 1");
  if (!(eta > 0.0)) throw DomainError("laminate needs eta > 0");
  if (!(p > 1.0)) throw DomainError("laminate needs p > 1");
}

Laminate nu_K(double K, double p, double eta) {
  check_k(K, p, eta);
  Laminate l;
  l.rays.push_back({1.0 / K, 1.0, K / (K - 1.0), p + eta + 1.0});
  return l;
}

Laminate nu_invK(double K, double p, double eta) {
  check_k(K, p, eta);
  Laminate l;
  l.rays.push_back({1.0, 1.0 / K, K / (K - 1.0), p + eta + 1.0});
  return l;
}

Laminate mu(double K, double p, double eta) {
  Laminate l = (nu_K(K, p, eta) + nu_invK(K, p, eta)).scaled(0.25);
  l.atoms.push_back({{-1.0, 1.0}, 0.25});
  l.atoms.push_back({{0.0, 1.0}, 0.5});
  return l;
}

Laminate sigma(double K, double p, double eta) { return mu(K, p, eta).reflected_y(); }

double mass(const Laminate& lam) {
  double m = 0.0;
  for (const auto& a : lam.atoms) m += a.mass;
  for (const auto& r : lam.rays) {
    if (!(r.exponent > 1.0)) throw DomainError("ray mass diverges");
    m += r.weight / (r.exponent - 1.0);
  }
  return m;
}

namespace {

// int_1^inf g(t) t^-e dt with t = e^s, adaptive Gauss-Kronrod on [0, S] plus a
// power-law tail fitted at e^S.
double ray_quadrature(const std::function<double(double)>& g, double e) {
  const double S = 60.0;
  auto integrand = [&](double s) {
    const double t = std::exp(s);
    return g(t) * std::exp((1.0 - e) * s);
  };
  double err = 0.0;
  double v = 0.0;
  // Split into unit panels so kinks of piecewise-smooth g stay local.
  for (double a = 0.0; a < S; a += 2.0)
    v += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, a + 2.0, 12,
                                                                      1e-14, &err);
  const double T = std::exp(S);
  const double g1 = g(T), g2 = g(2.0 * T);
  if (g1 != 0.0 && g2 != 0.0 && (g1 > 0) == (g2 > 0)) {
    const double d = std::log(std::abs(g2 / g1)) / std::log(2.0);
    if (d >= e - 1.0) throw DomainError("divergent ray integral (growth degree >= p + eta)");
    v += g1 * std::pow(T, 1.0 - e) / (e - 1.0 - d);
  }
  return v;
}

}  // namespace

double integrate(const Laminate& lam, const TestFunction2D& phi, bool force_quadrature,
                 Point shift) {
  double s = 0.0;
  for (const auto& a : lam.atoms) s += a.mass * phi.f(shift.x + a.at.x, shift.y + a.at.y);
  for (const auto& r : lam.rays) {
    const bool shifted = shift.x != 0.0 || shift.y != 0.0;
    if (phi.homogeneity && !force_quadrature && !shifted) {
      const double d = *phi.homogeneity;
      if (d >= r.exponent - 1.0) throw DomainError("divergent ray integral (degree >= p + eta)");
      s += r.weight * phi.f(r.dx, r.dy) / (r.exponent - 1.0 - d);
    } else {
      s += r.weight * ray_quadrature(
                          [&](double t) { return phi.f(shift.x + r.dx * t, shift.y + r.dy * t); },
                          r.exponent);
    }
  }
  return s;
}

Baricenter baricenter(const Laminate& lam) {
  Baricenter b;
  b.mass = mass(lam);
  const TestFunction2D X{"X", [](double x, double) { return x; }, Tag::power, 1.0};
  const TestFunction2D Y{"Y", [](double, double y) { return y; }, Tag::power, 1.0};
  b.x = integrate(lam, X) / b.mass;
  b.y = integrate(lam, Y) / b.mass;
  return b;
}

RatioResult ratio(double K, double eta, double p) {
  check_k(K, p, eta);
  const Laminate m = mu(K, p, eta);
  RatioResult r;
  r.K = K;
  r.direct = integrate(m, phi1(p)) / integrate(m, phi2(p));
  r.quadrature = integrate(m, phi1(p), true) / integrate(m, phi2(p), true);
  const double Kp = std::pow(K, p);
  const double num = 0.25 * K * (std::pow(K + 1.0, p) + std::pow(K + 1.0, p) / Kp) / eta + 0.5 * (K - 1.0);
  const double den = 0.25 * K * (std::pow(K - 1.0, p) + std::pow(K - 1.0, p) / Kp) / eta +
                     0.5 * (K - 1.0) + 0.25 * std::pow(2.0, p) * (K - 1.0);
  r.printed = num / den;
  r.target = std::pow((K + 1.0) / (K - 1.0), p);
  return r;
}

RatioResult ratio_tied(double p, double eta) {
  if (p < 2.0) throw DomainError("laminate ratio needs p >= 2");
  return ratio(s0_K_p_relations(p, eta).K, eta, p);
}

Certification certify_biconcave(const TestFunction2D& f, std::uint64_t seed, int samples,
                                double box) {
  Certification c;
  CounterRng rng(seed, 0xC0C0);
  for (int i = 0; i < samples; ++i) {
    const double x = rng.uniform(-box, box), y = rng.uniform(-box, box);
    const double h = rng.uniform() * box * 0.5;
    const double f0 = f.f(x, y);
    const double scale = 1.0 + std::abs(f0);
    const double dxx = (f.f(x + h, y) - 2.0 * f0 + f.f(x - h, y)) / scale;
    const double dyy = (f.f(x, y + h) - 2.0 * f0 + f.f(x, y - h)) / scale;
    const double w = std::max(dxx, dyy);
    if (w > c.worst_second_difference) {
      c.worst_second_difference = w;
      c.witness = {x, y};
    }
  }
  c.ok = c.worst_second_difference <= 1e-12;
  return c;
}

std::vector<TestFunction2D> default_battery(std::uint64_t seed) {
  std::vector<TestFunction2D> b;
  b.push_back({"affine", [](double x, double y) { return 0.3 - 1.7 * x + 0.4 * y; },
               Tag::biconcave_certified, std::nullopt});
  b.push_back({"-X^2", [](double x, double) { return -x * x; }, Tag::biconcave_certified, std::nullopt});
  b.push_back({"-Y^2", [](double, double y) { return -y * y; }, Tag::biconcave_certified, std::nullopt});
  b.push_back({"XY", [](double x, double y) { return x * y; }, Tag::biconcave_certified, std::nullopt});
  b.push_back({"-(X-Y)^2+XY", [](double x, double y) { return -(x * x + y * y) + 3.0 * x * y; },
               Tag::biconcave_certified, std::nullopt});
  CounterRng rng(seed, 0xBA77);
  for (int m = 0; m < 4; ++m) {
    std::vector<std::array<double, 3>> planes(5);
    for (auto& pl : planes) pl = {rng.normal(), rng.normal(), rng.normal()};
    b.push_back({"min-affine-" + std::to_string(m),
                 [planes](double x, double y) {
                   double v = std::numeric_limits<double>::infinity();
                   for (const auto& pl : planes) v = std::min(v, pl[0] + pl[1] * x + pl[2] * y);
                   return v;
                 },
                 Tag::biconcave_certified, std::nullopt});
  }
  return b;
}

InequalityReport laminate_inequality_check(const Laminate& lam, Point a,
                                           const std::vector<TestFunction2D>& battery,
                                           std::uint64_t seed) {
  const Baricenter bc = baricenter(lam);
  InequalityReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& f : battery) {
    const auto cert = certify_biconcave(f, seed);
    if (!cert.ok)
      throw DomainError("battery member '" + f.name + "' fails separate concavity at (" +
                        std::to_string(cert.witness.x) + ", " + std::to_string(cert.witness.y) + ")");
    const double lhs = f.f(a.x + bc.x, a.y + bc.y);
    const double rhs = integrate(lam, f, true, a) / bc.mass;
    const double m = (lhs - rhs) / (1.0 + std::abs(lhs));
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.worst_member = f.name;
    }
  }
  return rep;
}

}  // namespace bflab::laminate
