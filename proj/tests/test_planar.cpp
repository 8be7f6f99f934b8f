#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "bflab/planar.hpp"
#include "bflab/rng.hpp"
#include "bflab/weight_spec.hpp"

using namespace bflab;
using namespace bflab::planar;

namespace {

GridField random_field(int n, double L, std::uint64_t seed, bool real = false) {
  CounterRng r(seed, 0);
  GridField f(n, L);
  for (auto& v : f.data()) v = cplx(r.uniform(-1, 1), real ? 0.0 : r.uniform(-1, 1));
  return f;
}

GridField mean_zero(GridField f) {
  const cplx m = f.mean();
  for (auto& v : f.data()) v -= m;
  return f;
}

double max_diff(const GridField& a, const GridField& b) { return (a - b).max_abs(); }

GridField bump(int n, double L, double cx = 0, double cy = 0, double a = 1) {
  return GridField::from_function(
      n, L, [=](double x, double y) { return cplx(std::exp(-a * ((x - cx) * (x - cx) + (y - cy) * (y - cy)))); });
}

}  // namespace

TEST_CASE("FFT round trip") {
  for (int n : {8, 64, 256, 1024}) {
    const auto f = random_field(n, 1.0, n);
    CHECK(max_diff(ifft(fft(f), n, 1.0), f) <= 1e-13);
  }
}

TEST_CASE("identity symbol and single modes") {
  const auto f = random_field(32, 1.0, 1);
  CHECK(max_diff(apply_multiplier(identity_symbol(), f), f) <= 1e-13);

  const double L = 2 * M_PI;
  const auto mode = GridField::from_function(32, L, [](double x, double y) { return std::exp(cplx(0, x + 2 * y)); });
  const auto t = ab_transform(mode);
  const cplx m = std::pow(cplx(1, -2), 2) / 5.0;
  for (std::size_t i = 0; i < mode.size(); ++i) CHECK(std::abs(t.data()[i] - m * mode.data()[i]) <= 1e-13);
  const auto tc = apply_multiplier(ab_conj_symbol(), mode);
  const cplx mc = std::pow(cplx(1, 2), 2) / 5.0;
  for (std::size_t i = 0; i < mode.size(); ++i) CHECK(std::abs(tc.data()[i] - mc * mode.data()[i]) <= 1e-13);
}

TEST_CASE("AB is an L2 isometry and splits into Riesz transforms") {
  const auto f = mean_zero(random_field(128, 1.0, 2));
  const auto t = ab_transform(f);
  CHECK(std::abs(t.l2_norm() - f.l2_norm()) <= 1e-12 * f.l2_norm());
  GridField d = riesz_sq(1, f) - riesz_sq(2, f);
  auto mixed = riesz_mixed(f);
  mixed *= cplx(0, -2);
  d += mixed;
  CHECK(max_diff(d, t) <= 1e-12);
  GridField s = riesz_sq(1, f);
  s += riesz_sq(2, f);
  CHECK(max_diff(s, f) <= 1e-12);
}

// Smooth field: the unpaired Nyquist modes of a white-noise field would leak
// an imaginary part through the odd symbol xi1 xi2.
TEST_CASE("real symbols keep real fields real") {
  const auto f = GridField::from_function(
      256, 20.0, [](double x, double y) { return cplx(std::exp(-(x * x + 2 * y * y)) * (1 + x - 0.5 * y)); });
  for (const auto& g : {riesz_sq(1, f), riesz_sq(2, f), riesz_mixed(f)}) {
    double im = 0;
    for (auto v : g.data()) im = std::max(im, std::abs(v.imag()));
    CHECK(im <= 1e-14);
  }
}

TEST_CASE("AB maps dbar u to du") {
  const auto u = bump(512, 20.0, 0.3, -0.2);
  const auto lhs = ab_transform(dzbar(u));
  const auto rhs = dz(u);
  CHECK(max_diff(lhs, rhs) <= 1e-6 * rhs.max_abs());
}

TEST_CASE("heat extension") {
  const auto f = random_field(64, 1.0, 4);
  CHECK(max_diff(heat_extension(f, 0.0), f) <= 1e-13);
  GridField c(64, 1.0, std::vector<cplx>(64 * 64, cplx(2.5, -1)));
  CHECK(max_diff(heat_extension(c, 0.37), c) <= 1e-13);

  // Gaussian of variance s2 per axis; the kernel adds t/2.
  const double s2 = 0.3, t = 0.5, L = 20.0;
  const auto g = GridField::from_function(256, L, [=](double x, double y) {
    return cplx(std::exp(-(x * x + y * y) / (2 * s2)) / (2 * M_PI * s2));
  });
  const double v = s2 + t * kHeatVariancePerT;
  const auto expect = GridField::from_function(256, L, [=](double x, double y) {
    return cplx(std::exp(-(x * x + y * y) / (2 * v)) / (2 * M_PI * v));
  });
  CHECK(max_diff(heat_extension(g, t), expect) <= 1e-8);
}

TEST_CASE("Riesz heat identity") {
  const auto phi = bump(256, 20.0);
  const auto id = identity_1_13_check(phi, phi, 10.0, 33);
  CHECK(id.gap <= 1e-3);
  const auto psi = bump(256, 20.0, 0.5, 0.0, 1.5);
  const auto a = identity_1_13_check(phi, psi, 10.0, 33);
  const auto b = identity_1_13_check(psi, phi, 10.0, 33);
  CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-12));
  CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-12));

  // Odd against even in x: both sides vanish.
  const auto p1 = GridField::from_function(128, 20.0, [](double x, double y) { return cplx(x * std::exp(-(x * x + y * y))); });
  const auto p2 = bump(128, 20.0);
  const auto z = identity_1_13_check(p1, p2, 10.0, 17);
  CHECK(std::abs(z.lhs) <= 1e-12);
  CHECK(std::abs(z.rhs) <= 1e-12);
}

TEST_CASE("planar A_p characteristics") {
  const auto one = weights::planar_weight("const", 2, 64);
  CHECK(ap_class(one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ap_heat(one) == doctest::Approx(1.0).epsilon(1e-12));

  double prev = 1.0;
  for (double a : {0.1, 0.3, 0.5}) {
    const double v = ap_class(weights::planar_weight("power:" + std::to_string(a), 2, 64));
    CHECK(v >= prev);
    prev = v;
  }
  auto w = weights::planar_weight("power:0.3", 3, 64);
  const double base = ap_class(w);
  w.w *= 5.0;
  if (w.dual) *w.dual *= std::pow(5.0, -1.0 / (3 - 1));
  CHECK(ap_class(w) == doctest::Approx(base).epsilon(1e-12));

  // Heat vs class over a small family; finer sampling never lowers the sup.
  for (const char* s : {"power:0.2", "power:-0.4", "twovalue:1,4"}) {
    const auto pw = weights::planar_weight(s, 2, 64);
    const double h = ap_heat(pw), c = ap_class(pw);
    CHECK(h >= 1.0);
    CHECK(h / c > 0.2);
    CHECK(h / c < 5.0);
    CHECK(ap_heat(pw, {1, {}}) >= ap_heat(pw, {4, {}}) - 1e-12);
  }
}

TEST_CASE("norm ratio ascent") {
  const auto f = random_field(32, 1.0, 5, true);
  CHECK(norm_ratio(r11_minus_r22_symbol(), f, 4) ==
        doctest::Approx(norm_ratio(negated(r11_minus_r22_symbol()), f, 4)).epsilon(1e-13));

  const auto r2 = norm_ratio_ascent(ab_symbol(), 2.0, 32, 20, 1);
  CHECK(r2.ratio <= 1.0 + 1e-10);
  CHECK(r2.ratio >= 0.999);

  const auto r = norm_ratio_ascent(r11_minus_r22_symbol(), 4.0, 64, 30, 1);
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] >= r.history[i - 1]);
  CHECK(norm_ratio(r11_minus_r22_symbol(), r.witness, 4) == doctest::Approx(r.ratio).epsilon(1e-12));
  CHECK(r.ratio > 1.0);
}

TEST_CASE("field files round trip") {
  const auto f = random_field(16, 3.0, 6);
  const std::string path = "test_planar_field.bin";
  write_field(path, f);
  const auto g = read_field(path);
  CHECK(g.n() == 16);
  CHECK(g.L() == 3.0);
  CHECK(max_diff(f, g) == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS(read_field("does-not-exist.bin"));
}
