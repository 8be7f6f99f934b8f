#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bflab/laminate.hpp"

using namespace bflab;
using namespace bflab::laminate;

TEST_CASE("parameter relations") {
  const auto a = s0_K_p_relations(4, 0.0 + 1e-300);
  CHECK(a.s0 == doctest::Approx(0.5));
  CHECK(a.K == doctest::Approx(2.0));
  CHECK(s0_K_p_relations(2, 2).K == doctest::Approx(2.0));
  double worst = 0;
  for (double p : {2.0, 2.5, 3.0, 4.0, 7.0})
    for (double eta : {1e-4, 1e-2, 0.5, 2.0}) worst = std::max(worst, s0_K_p_relations(p, eta).residual);
  CHECK(worst <= 1e-14 * 10);
  CHECK_THROWS_AS(s0_K_p_relations(1.5, 0.1), DomainError);
}

TEST_CASE("masses and baricenters") {
  const double p = 3, eta = 0.1, K = s0_K_p_relations(p, eta).K;
  TestFunction2D one{"one", [](double, double) { return 1.0; }, Tag::custom, 0.0};
  CHECK(integrate(nu_K(K, p, eta), one) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(integrate(nu_K(K, p, eta), one, true) == doctest::Approx(0.5).epsilon(1e-10));

  const auto pair = nu_K(K, p, eta) + nu_invK(K, p, eta);
  const auto b = baricenter(pair);
  CHECK(b.mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.y == doctest::Approx(1.0).epsilon(1e-12));

  Laminate point;
  point.atoms.push_back({{1, 1}, 1});
  const auto pb = baricenter(point);
  CHECK(pb.x == 1.0);
  CHECK(pb.y == 1.0);
  CHECK(pb.mass == 1.0);

  // The printed atoms of mu put its baricenter at (0, 1).
  const auto m = baricenter(mu(K, p, eta));
  CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.x == doctest::Approx(0.0).scale(1.0));
  CHECK(m.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power integrals against independent quadrature") {
  const double p = 3, eta = 0.05, K = s0_K_p_relations(p, eta).K;
  const auto lam = nu_K(K, p, eta);
  const auto& r = lam.rays[0];
  // int_1^inf |dx + dy|^p t^p w t^-e dt by hand.
  const double ref = std::pow(r.dx + r.dy, p) * r.weight / (r.exponent - p - 1.0);
  CHECK(integrate(lam, phi1(p)) == doctest::Approx(ref).epsilon(1e-10));
  CHECK(integrate(lam, phi1(p), true) == doctest::Approx(ref).epsilon(1e-10));

  Laminate atoms;
  atoms.atoms = {{{1, 2}, 0.3}, {{-2, 0.5}, 0.7}};
  TestFunction2D lin{"x-y", [](double x, double y) { return x - y; }, Tag::custom, 1.0};
  CHECK(integrate(atoms, lin) == doctest::Approx(0.3 * -1 + 0.7 * -2.5).epsilon(1e-15));
}

TEST_CASE("ratio tends to (p-1)^p") {
  const double p = 3;
  double prev = 1e300;
  for (double eta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto r = ratio_tied(p, eta);
    const double d = std::abs(std::pow(r.direct, 1.0 / p) - (p - 1));
    CHECK(d < prev);
    prev = d;
    CHECK(std::abs(r.quadrature - r.direct) <= 1e-10 * r.direct);
  }
  CHECK(prev <= 5e-3);

  // Fixed K: strictly decreasing in eta.
  double last = 1e300;
  for (double eta : {1e-3, 1e-2, 1e-1, 1.0}) {
    const double v = ratio(2.0, eta, 4).direct;
    CHECK(v < last);
    last = v;
  }
  // Large eta: the rays fade and only the atoms remain, so the ratio tends to
  // 1/2 / (1/2 + 2^p/4), which is below 1.
  const auto big = ratio_tied(2, 2);
  CHECK(std::isfinite(big.direct));
  CHECK(big.direct > 0.0);
  CHECK(ratio(3.0, 1e9, 2).direct == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("reflection swaps the two test functions") {
  const double p = 3, eta = 0.02, K = 2.5;
  const auto m = mu(K, p, eta), s = sigma(K, p, eta);
  CHECK(integrate(s, phi2(p)) == doctest::Approx(integrate(m, phi1(p))).epsilon(1e-14));
  CHECK(integrate(s, phi1(p)) == doctest::Approx(integrate(m, phi2(p))).epsilon(1e-14));
  CHECK(integrate(s, phi2(p)) / integrate(s, phi1(p)) == doctest::Approx(ratio(K, eta, p).direct).epsilon(1e-14));
}

TEST_CASE("Jensen inequality for biconcave functions") {
  const double p = 3, eta = 0.05, K = s0_K_p_relations(p, eta).K;
  const auto pair = nu_K(K, p, eta) + nu_invK(K, p, eta);
  TestFunction2D affine{"affine", [](double x, double y) { return 2 * x - 3 * y + 1; }, Tag::custom, std::nullopt};
  CHECK(std::abs(laminate_inequality_check(pair, {0, 0}, {affine}, 1).worst_margin) <= 1e-10);
  TestFunction2D negsq{"-x^2", [](double x, double) { return -x * x; }, Tag::custom, std::nullopt};
  CHECK(certify_biconcave(negsq, 1).ok);
  TestFunction2D sq{"x^2", [](double x, double) { return x * x; }, Tag::custom, std::nullopt};
  CHECK_FALSE(certify_biconcave(sq, 1).ok);
  CHECK(laminate_inequality_check(pair, {-1, -1}, {negsq}, 1).worst_margin >= 0.0);
  CHECK(laminate_inequality_check(pair, {-1, -1}, default_battery(1), 1).worst_margin >= -1e-10);
}
