#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bflab/common.hpp"

namespace bflab::laminate {

struct Point {
  double x = 0.0, y = 0.0;
};

struct Atom {
  Point at;
  double mass = 0.0;
};

// Points (dx t, dy t), t in [1, inf), density weight * t^-(exponent).
struct Ray {
  double dx = 1.0, dy = 1.0;
  double weight = 0.0;
  double exponent = 0.0;
};

struct Laminate {
  std::vector<Atom> atoms;
  std::vector<Ray> rays;

  Laminate reflected_y() const;  // (X, Y) -> (X, -Y)
  Laminate scaled(double c) const;
  Laminate operator+(const Laminate& o) const;
};

enum class Tag { biconcave_certified, power, custom };

struct TestFunction2D {
  std::string name;
  std::function<double(double, double)> f;
  Tag tag = Tag::custom;
  // Degree d with f(c X, c Y) = c^d f(X, Y) for c > 0, when known.
  std::optional<double> homogeneity;
};

TestFunction2D phi1(double p);  // |X+Y|^p
TestFunction2D phi2(double p);  // |X-Y|^p

struct Params {
  double s0, K, p_eta, residual;
};
Params s0_K_p_relations(double p, double eta);

Laminate nu_K(double K, double p, double eta);      // on Y = K X
Laminate nu_invK(double K, double p, double eta);   // on Y = X / K
Laminate mu(double K, double p, double eta);
Laminate sigma(double K, double p, double eta);

double mass(const Laminate& lam);

// Closed form on rays for homogeneous functions unless force_quadrature.
double integrate(const Laminate& lam, const TestFunction2D& phi, bool force_quadrature = false,
                 Point shift = {});

struct Baricenter {
  double x = 0.0, y = 0.0, mass = 0.0;
};
Baricenter baricenter(const Laminate& lam);

struct RatioResult {
  double K = 0.0;
  double direct = 0.0;       // from integrate()
  double quadrature = 0.0;   // same, forcing ray quadrature
  double printed = 0.0;      // the published closed form
  double target = 0.0;       // ((K+1)/(K-1))^p
};
RatioResult ratio(double K, double eta, double p);
// K tied to p + eta.
RatioResult ratio_tied(double p, double eta);

struct Certification {
  bool ok = true;
  double worst_second_difference = 0.0;
  Point witness;
};
Certification certify_biconcave(const TestFunction2D& f, std::uint64_t seed, int samples = 10000,
                                double box = 10.0);

struct InequalityReport {
  double worst_margin = 0.0;
  std::string worst_member;
};
// min over the battery of f(a + bary) - int f(a + z) dlam(z) / mass.
InequalityReport laminate_inequality_check(const Laminate& lam, Point a,
                                           const std::vector<TestFunction2D>& battery,
                                           std::uint64_t seed);

std::vector<TestFunction2D> default_battery(std::uint64_t seed);

}  // namespace bflab::laminate
