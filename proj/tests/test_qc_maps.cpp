#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bflab/planar.hpp"
#include "bflab/qc_maps.hpp"

using namespace bflab;
using namespace bflab::qc;

TEST_CASE("radial maps are K-quasiconformal") {
  for (double K : {1.5, 2.0, 3.0})
    for (auto v : {MapVariant::regular, MapVariant::singular, MapVariant::inverse}) {
      const auto f = make_map(K, v);
      for (cplx z : {cplx(0.3, 0.1), cplx(-0.7, 0.4), cplx(0.05, -0.9)}) {
        CHECK(beltrami_ratio_fd(f, z) == doctest::Approx(f.k()).epsilon(1e-6));
        CHECK(std::abs(f.f_zbar(z)) / std::abs(f.f_z(z)) == doctest::Approx(f.k()).epsilon(1e-12));
      }
    }
  CHECK_THROWS_AS(make_map(0.5, MapVariant::regular), DomainError);
}

TEST_CASE("Jacobian of the regular map") {
  const auto f = make_map(2.0, MapVariant::regular);
  for (double r : {0.1, 0.5, 2.0}) {
    const cplx z(r, 0);
    const double j = std::norm(f.f_z(z)) - std::norm(f.f_zbar(z));
    CHECK(f.jacobian(r) == doctest::Approx(j).epsilon(1e-12));
  }
}

TEST_CASE("area distortion exponent") {
  std::vector<double> radii;
  for (int j = 1; j <= 10; ++j) radii.push_back(std::ldexp(1.0, -j));
  for (double K : {1.5, 2.0, 4.0}) {
    const auto fit = distortion_exponent(make_map(K, MapVariant::regular), radii);
    CHECK(std::abs(fit.slope - 1.0 / K) <= 1e-10);
  }
}

TEST_CASE("Sobolev exponent of the singular map") {
  for (double K : {1.5, 2.0, 3.0}) {
    const auto f = make_map(K, MapVariant::singular);
    CHECK(sobolev_annulus(f, 1.2, 1e-3) == doctest::Approx(sobolev_annulus_exact(f, 1.2, 1e-3)).epsilon(1e-8));
    CHECK(sobolev_threshold(f, 1.0 + f.k() - 0.05, 1e-6).converges);
    CHECK_FALSE(sobolev_threshold(f, 1.0 + f.k() + 0.05, 1e-6).converges);
    CHECK(std::abs(sobolev_threshold_q(f) - (1.0 + f.k())) <= 1e-3);
  }
}

TEST_CASE("Jacobian weights blow up in A2 as p approaches 1 + 1/k") {
  const auto f = make_map(2.0, MapVariant::inverse);
  double prev = 0;
  for (double p : {2.0, 2.5, 3.0, 3.5}) {
    const double v = planar::ap_class(jacobian_weight(f, p, 64));
    CHECK(v >= 1.0 - 1e-12);
    CHECK(v > prev);
    prev = v;
  }
  // p = 2 gives w = 1.
  CHECK(planar::ap_class(jacobian_weight(f, 2.0, 64)) == doctest::Approx(1.0).epsilon(1e-9));
}
