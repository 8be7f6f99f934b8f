#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bflab/bellman.hpp"
#include "bflab/rng.hpp"

using namespace bflab;
using namespace bflab::bellman;

TEST_CASE("gamma_p and variants at the normalization point") {
  CHECK(gamma_p(3) == doctest::Approx(3.0 * std::pow(1.0 - 1.0 / 3.0, 2.0)));
  CHECK(eval_phi(0, 1, 3, Variant::phi) == doctest::Approx(gamma_p(3)));
  CHECK_THROWS_AS(eval_phi(0, 1, 1.0, Variant::phi), DomainError);
  CHECK(parse_variant("phi0") == Variant::phi0);
  CHECK_THROWS(parse_variant("nope"));
}

TEST_CASE("p = 2 variants reduce to y^2 - x^2") {
  CounterRng r(1, 0);
  for (int i = 0; i < 200; ++i) {
    // F_p lives on the closed first quadrant.
    const double x = r.uniform(0, 3), y = r.uniform(0, 3);
    for (auto v : {Variant::phi, Variant::phi0, Variant::fp}) {
      CAPTURE(variant_name(v));
      CHECK(eval_phi(x, y, 2.0, v) / gamma_p(2.0) == doctest::Approx(y * y - x * x).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("zigzag check") {
  BellmanCandidate affine{"affine", 2, [](const double* z) { return 2 * z[0] - z[1] + 0.5; }};
  CHECK(std::abs(zigzag_check(affine, 2000, 0.5, 5, 1).worst_margin) <= 1e-15);
  BellmanCandidate convex{"convex", 2, [](const double* z) { return z[0] * z[0] + z[1] * z[1]; }};
  CHECK(zigzag_check(convex, 2000, 0.5, 5, 1).worst_margin < -1e-3);
  CHECK(zigzag_check(phi_candidate(3, Variant::phi), 100000, 0.5, 5, 1).worst_margin >= -1e-9);
  CHECK(majorant_check(Variant::phi, 3, 100000, 5, 1).worst_gap >= -1e-9);
}

TEST_CASE("Hessian quadratic form") {
  const auto z = hessian_form_identity({0.4, -0.3}, {0.7, 0.2}, {0, 0}, {0, 0}, 3);
  CHECK(z.analytic == doctest::Approx(0.0));
  CHECK(z.numeric == doctest::Approx(0.0));

  CounterRng r(2, 0);
  for (int i = 0; i < 100; ++i) {
    std::array<double, 2> x{r.uniform(-2, 2), r.uniform(-2, 2)}, y{r.uniform(-2, 2), r.uniform(-2, 2)};
    const double a = r.uniform(0, 6.283), b = r.uniform(0, 6.283), len = r.uniform(0.1, 1);
    const auto f = hessian_form_identity(x, y, {len * std::cos(a), len * std::sin(a)},
                                         {len * std::cos(b), len * std::sin(b)}, 3);
    CHECK(f.analytic <= 1e-10 * (1 + std::abs(f.numeric)));
  }

  // Second-order convergence of the centered difference.
  const std::array<double, 2> x{0.8, 0.3}, y{-0.4, 1.1}, dx{0.3, -0.5}, dy{0.6, 0.2};
  std::vector<double> err;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const auto f = hessian_form_identity(x, y, dx, dy, 2.5, h);
    err.push_back(std::abs(f.analytic - f.numeric));
  }
  CHECK(std::log2(err[0] / err[1]) > 1.8);
  CHECK(std::log2(err[1] / err[2]) > 1.8);
}

TEST_CASE("linear majorant feasibility") {
  const auto f = linear_majorant_feasibility(2.0, 3.0);
  CHECK(f.feasible);
  CHECK(f.rho == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(f.a == doctest::Approx(3.0 * std::pow(2.0 / 3.0, 2.0)).epsilon(1e-3));
  CHECK_FALSE(linear_majorant_feasibility(0.9 * 2.0, 3.0).feasible);
  CHECK(linear_majorant_feasibility(20.0, 3.0).feasible);
  CHECK(std::abs(feasibility_transition(3.0) - 2.0) <= 1e-3);
}

TEST_CASE("H section inequality") {
  CHECK(std::abs(h_section_inequality(2.0, 1000)) <= 1e-12);
  CHECK(h_section_inequality(4.0, 10000) <= 1e-10);
}

TEST_CASE("tau against independent quadrature and Wallis form") {
  CHECK(tau(2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(tau(4) == doctest::Approx(std::pow(3.0 / 8.0, 0.25)).epsilon(1e-12));
  for (double p : {1.0, 1.5, 3.0, 7.25, 20.0}) {
    const double m = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [p](double t) { return std::pow(std::abs(std::cos(t)), p); }, 0.0, M_PI / 2, 10, 1e-14);
    CHECK(tau(p) == doctest::Approx(std::pow(m / (M_PI / 2), 1.0 / p)).epsilon(1e-10));
  }
  // sqrt(2)(p-1)/tau(p) over p-1 tends to 1.41...
  const double p = 2000.0;
  CHECK(std::sqrt(2.0) / tau(p) == doctest::Approx(1.41).epsilon(0.01));
}

TEST_CASE("interpolation constant") {
  CHECK(interpolation_constant(2.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(interpolation_constant(10.0) <= 1.7 * 9.0);
  // Brute-force minimization over a fine log grid in p as the oracle.
  for (double q : {2.1, 3.0, 5.0, 10.0, 50.0}) {
    double best = 1e300;
    for (int i = 0; i <= 200000; ++i) {
      const double p = q * std::pow(1e3 / q, i / 200000.0);
      const double th = (0.5 - 1.0 / q) / (0.5 - 1.0 / p);
      best = std::min(best, std::pow(std::sqrt(2.0) * (p - 1.0) / tau_closed_form(p), th));
    }
    CHECK(interpolation_constant(q) == doctest::Approx(best).epsilon(1e-7));
    MESSAGE("q = " << q << ": C(q)/(q-1) = " << interpolation_constant(q) / (q - 1));
  }
}

TEST_CASE("Buckley-type Bellman Hessian") {
  const auto b = bq_hessian_check(8, 0.25, 100000, 1);
  CHECK(b.worst_margin >= -1e-12);
  CHECK(b.worst_range >= -1e-12);
}

TEST_CASE("John-Nirenberg Bellman function") {
  for (double x1 : {-1.0, 0.0, 0.7}) CHECK(jn_v(x1, 0.0, 0.25) == doctest::Approx(std::exp(x1)).epsilon(1e-14));
  CHECK(jn_phi(0.3, 0.02, 0.25, 1.0) == doctest::Approx(jn_v(0.3, 0.02, 0.25)).epsilon(1e-15));
  const auto j = jn_bellman_check(0.25, 200);
  CHECK(j.max_rel_det <= 1e-5);
  CHECK(j.max_eigenvalue <= 1e-6);
  CHECK(j.min_obstacle_gap >= -1e-12);
}
