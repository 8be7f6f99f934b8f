#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bflab/common.hpp"

namespace bflab::bellman {

enum class Variant { phi, phi0, fp };
Variant parse_variant(const std::string& s);
const char* variant_name(Variant v);

// gamma_p = p (1 - 1/p*)^(p-1)
double gamma_p(double p);

// h(x,y) = |y|^p - (p*-1)^p |x|^p
double h_obstacle(double x, double y, double p);

// Phi, Phi_0 and F_p with gamma_p carried explicitly (Phi(0,1) = gamma_p).
double eval_phi(double x, double y, double p, Variant v);

struct BellmanCandidate {
  std::string name;
  int arity = 2;
  std::function<double(const double*)> value;
  // Optional analytic Hessian, row-major arity x arity.
  std::function<void(const double*, double*)> hessian;
  std::function<bool(const double*)> domain = [](const double*) { return true; };
};

BellmanCandidate phi_candidate(double p, Variant v);

struct ZigzagReport {
  std::size_t samples = 0;
  double worst_margin = 0.0;  // relative to 1 + max |phi| over the stencil
  std::array<double, 2> witness_point{};
  std::array<double, 2> witness_step{};
};
// Random points in [-box, box]^2 and steps alpha in (0, step*box]; tests both
// diagonals (alpha, alpha) and (alpha, -alpha).
ZigzagReport zigzag_check(const BellmanCandidate& c, std::size_t samples, double step, double box,
                          std::uint64_t seed);

struct MajorantReport {
  std::size_t samples = 0;
  double worst_gap = 0.0;  // relative to 1 + |h|
  std::array<double, 2> witness{};
};
MajorantReport majorant_check(Variant v, double p, std::size_t samples, double box,
                              std::uint64_t seed);

struct HessianForm {
  double analytic = 0.0;
  double numeric = 0.0;
};
// Quadratic form of phi(x,y) = Phi(|x|,|y|) (without gamma_p) at (x,y) in
// direction (dx,dy); numeric uses a centered difference with step h.
HessianForm hessian_form_identity(const std::array<double, 2>& x, const std::array<double, 2>& y,
                                  const std::array<double, 2>& dx, const std::array<double, 2>& dy,
                                  double p, double h = 1e-4);

struct Feasibility {
  bool feasible = false;
  double rho = 0.0;
  double a = 0.0;
  double rho_lo = 0.0;  // from the endpoint convexity conditions
  double rho_hi = 0.0;  // largest rho with H_c(s_rho) <= 0
};
double h_section(double s, double c, double p);
Feasibility linear_majorant_feasibility(double c, double p, int grid = 2000);
// Bisection in c on [lo, hi] for the feasibility switch.
double feasibility_transition(double p, double tol = 1e-7);

// max over the grid of s^2 H'' + (p-1)(-2 s H' + p H) for H = H_{p*-1}.
double h_section_inequality(double p, int grid);

double tau(double p);
double tau_closed_form(double p);
double interpolation_constant(double q, double* argmin_p = nullptr);

struct BqReport {
  double worst_margin = 0.0;  // (-d2b - bound) / (b (u^2+v^2)), min over samples
  double worst_range = 0.0;   // min of b and Q^a - b, relative
  double max_identity_err = 0.0;
};
BqReport bq_hessian_check(double Q, double alpha, std::size_t samples, std::uint64_t seed);

struct JnReport {
  std::size_t points = 0;
  double max_eigenvalue = 0.0;   // largest eigenvalue over the grid
  double max_rel_det = 0.0;      // |det| / (|m11 m22| + m12^2)
  double min_obstacle_gap = 0.0; // v - e^{x1}, relative to e^{x1}
  double max_analytic_err = 0.0; // FD vs closed-form matrix, relative
  double x2_max = 0.0;           // clipped top of the grid
  bool clipped = false;
};
double jn_phi(double x1, double x2, double eps, double q);
// v_delta = phi_{delta,1}
double jn_v(double x1, double x2, double delta);
JnReport jn_check(double eps, double q, int grid, double L = 1.0, double clip = 1e-2);
inline JnReport jn_bellman_check(double delta, int grid) { return jn_check(delta, 1.0, grid); }

}  // namespace bflab::bellman
