#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bflab/stochastic.hpp"

using namespace bflab;
using namespace bflab::stoch;

TEST_CASE("mean and confidence interval") {
  const auto ci = mean_ci({1, 2, 3, 4, 5});
  CHECK(ci.mean == doctest::Approx(3.0));
  CHECK(ci.stderr_ == doctest::Approx(std::sqrt(2.5 / 5)));
  CHECK(ci.contains(3.0));
  CHECK_FALSE(ci.contains(100.0));
}

TEST_CASE("drivers are reproducible per path") {
  const auto d = BrownianDriver::uniform(2, 1.0, 64, 9);
  CHECK(d.increments(17) == d.increments(17));
  CHECK(d.increments(17) != d.increments(18));
  const auto c = d.coarsened(4);
  CHECK(c.steps() == 16);
  const auto fi = d.increments(3), ci = c.increments(3);
  for (int k = 0; k < 2; ++k) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += fi[2 * i + k];
    CHECK(ci[k] == doctest::Approx(s).epsilon(1e-14));
  }
  const auto g = BrownianDriver::geometric(2, 5.0, 50, 1e-4, 1);
  CHECK(g.horizon() == doctest::Approx(5.0));
  CHECK(g.times().front() == 0.0);
}

TEST_CASE("adapted processes cannot look ahead") {
  std::vector<double> w{0, 1, 2, 3}, t{0, 1, 2, 3};
  PastView v(w, t, 1);
  CHECK(v.w(1) == 1.0);
  CHECK_THROWS_AS(v.w(2), DomainError);
  const auto d = BrownianDriver::uniform(1, 1.0, 10, 1);
  AdaptedProcess peek = [](const PastView& pv) { return pv.w(pv.step() + 1); };
  CHECK_THROWS_AS(ito_integral({peek}, d, 4), DomainError);
}

TEST_CASE("left and right Riemann sums") {
  const auto g = riemann_gap_demo(0, 1, 200, 20000, 1);
  CHECK(g.gap.contains(1.0));
  CHECK(g.sigma1.contains(0.0));
  CHECK(g.sigma1_sq.lo <= g.bound);
  const auto z = riemann_gap_demo(0.5, 0.5, 10, 100, 1);
  CHECK(z.gap.mean == 0.0);
  CHECK(z.sigma1.mean == 0.0);
  CHECK_THROWS_AS(riemann_gap_demo(1, 0.5, 10, 100, 1), DomainError);
}

TEST_CASE("Ito isometry and product rule") {
  const auto d = BrownianDriver::uniform(1, 1.0, 200, 2);
  AdaptedProcess one = [](const PastView&) { return 1.0; };
  AdaptedProcess w = [](const PastView& pv) { return pv.w(); };
  AdaptedProcess t = [](const PastView& pv) { return std::cos(pv.time()) + 0.5 * pv.w(); };
  const int paths = 8000;
  const auto r = ito_integral({one, w, t}, d, paths);
  std::vector<double> iso(paths), prod(paths), var1(paths);
  for (int i = 0; i < paths; ++i) {
    iso[i] = r.values[1][i] * r.values[1][i] - r.energy[1 * 3 + 1][i];
    prod[i] = r.values[1][i] * r.values[2][i] - r.energy[1 * 3 + 2][i];
    var1[i] = r.values[0][i] * r.values[0][i];
  }
  CHECK(mean_ci(iso).contains(0.0));
  CHECK(mean_ci(prod).contains(0.0));
  CHECK(mean_ci(var1).contains(1.0));
  CHECK(mean_ci(r.energy[4]).mean == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("heat surfaces") {
  const auto m = HeatSurface::mixture({{0.2, -0.1, 0.3, cplx(1.0, 0.5)}, {-0.6, 0.4, 0.7, cplx(-0.3, 0.0)}});
  // Heat equation u_s = (u_xx + u_yy)/2 by finite differences.
  const double s = 0.4, x = 0.3, y = -0.2, h = 1e-3;
  const cplx us = (m.value(s + h, x, y) - m.value(s - h, x, y)) / (2 * h);
  const cplx lap = (m.value(s, x + h, y) + m.value(s, x - h, y) + m.value(s, x, y + h) + m.value(s, x, y - h) -
                    4.0 * m.value(s, x, y)) /
                   (h * h);
  CHECK(std::abs(us - 0.5 * lap) <= 1e-5);
  const auto g = m.gradient(s, x, y);
  CHECK(std::abs(g.first - (m.value(s, x + h, y) - m.value(s, x - h, y)) / (2 * h)) <= 1e-6);

  const auto gen = HeatSurface::generic([&](double a, double b) { return m.f(a, b); }, 48);
  CHECK(std::abs(gen.value(s, x, y) - m.value(s, x, y)) <= 1e-10);
  CHECK(std::abs(gen.gradient(s, x, y).second - g.second) <= 1e-8);

  std::vector<double> xs{0.1, -0.5, 1.2}, ys{0.0, 0.3, -0.7};
  std::vector<cplx> ux(3), uy(3), v(3);
  m.gradient_batch(s, xs.data(), ys.data(), 3, ux.data(), uy.data(), v.data());
  for (int i = 0; i < 3; ++i) {
    const auto gi = m.gradient(s, xs[i], ys[i]);
    CHECK(std::abs(ux[i] - gi.first) <= 1e-14);
    CHECK(std::abs(uy[i] - gi.second) <= 1e-14);
    CHECK(std::abs(v[i] - m.value(s, xs[i], ys[i])) <= 1e-14);
  }
  const auto aff = HeatSurface::affine(1.0, cplx(0, 2), 3.0);
  CHECK(std::abs(aff.value(5.0, 1.0, 1.0) - cplx(4.0, 2.0)) <= 1e-15);
}

TEST_CASE("heat martingale and its AB transform") {
  const auto f = HeatSurface::mixture({{0, 0, 0.25, 1.0}});
  const auto d = BrownianDriver::uniform(2, 1.0, 400, 3);
  const auto x = heat_martingale(f, d, 0);
  CHECK(std::abs(x.values[0] - f.value(1.0, 0, 0)) <= 1e-15);
  CHECK(std::abs(x.values.back() - f.f(x.wx.back(), x.wy.back())) < 0.1);
  const auto y = ab_star(f, d, 0);
  CHECK(y.values[0] == cplx(0.0));
  const auto c = conformality(x, y);
  CHECK(c.max_dot <= 1e-10);
  CHECK(c.max_len_gap <= 1e-10);
  CHECK(c.max_subordination <= 1e-10);
  CHECK_THROWS_AS(heat_martingale(f, BrownianDriver::uniform(1, 1.0, 4, 1), 0), DomainError);
}

TEST_CASE("terminal gap shrinks with the step") {
  const auto f = HeatSurface::mixture({{0, 0, 0.25, 1.0}});
  const auto g = terminal_gap_sweep(f, 1.0, 128, 3, 300, 4);
  CHECK(g.rms[0] < g.rms[2]);
  CHECK(g.order > 0.3);
}

TEST_CASE("AB by conditioning agrees with the spectral oracle") {
  const auto f = HeatSurface::mixture({{0, 0, 0.25, 1.0}});
  AbConditioningOptions o;
  o.paths = 200000;
  o.bins = 8;
  o.min_count = 50;
  o.steps = 200;
  const auto est = ab_by_conditioning(f, o);
  const auto orc = ab_conditioning_oracle(f, o.bins, o.half_width, 256, 24.0);
  const auto ag = compare_with_oracle(est, orc);
  CHECK(ag.populated > 0);
  CHECK(ag.fraction >= 0.9);

  // Same seed, same numbers.
  o.paths = 20000;
  const auto a = ab_by_conditioning(f, o), b = ab_by_conditioning(f, o);
  CHECK(a.estimate == b.estimate);
}

TEST_CASE("subordination moment ratios stay below the constants") {
  const auto s = subordination_constants_mc(4, 2000, 1, 1.0, 100, 3);
  CHECK(s.ratio_plain_lo <= s.bound_plain);
  CHECK(s.ratio_conformal_lo <= s.bound_conformal);
  CHECK(s.bound_plain == doctest::Approx(3.0));
  CHECK(s.bound_conformal == doctest::Approx(std::sqrt(6.0)));
}
