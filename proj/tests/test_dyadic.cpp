#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "bflab/dyadic.hpp"
#include "bflab/rng.hpp"
#include "bflab/weight_spec.hpp"

using namespace bflab;
using namespace bflab::dyadic;

namespace {

DyadicFunction random_fn(int depth, std::uint64_t seed, double lo = -1, double hi = 1) {
  CounterRng r(seed, 7);
  std::vector<double> v(std::size_t{1} << depth);
  for (auto& x : v) x = r.uniform(lo, hi);
  return DyadicFunction(depth, v);
}

DyadicWeight two_value(double a, double b, int depth) {
  std::vector<double> v(std::size_t{1} << depth);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i < v.size() / 2 ? a : b;
  return DyadicWeight(depth, v);
}

}  // namespace

TEST_CASE("haar coefficients of constants vanish") {
  DyadicFunction f(5, std::vector<double>(32, 3.5));
  for (double c : haar_coefficients(f)) CHECK(c == doctest::Approx(0.0));
}

// h_I is positive on the right half.
TEST_CASE("haar function of [0,1] has a single coefficient") {
  std::vector<double> v{-1, -1, -1, -1, 1, 1, 1, 1};
  const auto c = haar_coefficients(DyadicFunction(3, v));
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::abs(c[i]) < 1e-15);
}

TEST_CASE("Parseval on a random function") {
  const auto f = random_fn(8, 1);
  const auto c = haar_coefficients(f);
  double s = 0;
  for (double x : c) s += x * x;
  double direct = 0;
  for (double x : f.values()) direct += x * x / f.size();
  const double mean = f.integral();
  CHECK(std::abs(s + mean * mean - direct) <= 1e-12);
  const auto g = haar_synthesis(c, 8);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(g[i] + mean - f[i]) <= 1e-12);
}

TEST_CASE("martingale transform identities") {
  const auto f = random_fn(6, 2);
  const std::size_t n = (std::size_t{1} << 6) - 1;
  const auto plus = martingale_transform(f, std::vector<int>(n, 1));
  const auto minus = martingale_transform(f, std::vector<int>(n, -1));
  const auto twice = martingale_transform(minus, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(std::abs(plus[i] - (f[i] - f.integral())) <= 1e-13);
    CHECK(std::abs(twice[i] - (f[i] - f.integral())) <= 1e-13);
  }
  std::vector<int> missing(n, 1);
  missing[3] = 0;
  CHECK_THROWS_AS(martingale_transform(f, missing), DomainError);
}

TEST_CASE("martingale transform stays below p*-1 at p = 4") {
  CounterRng r(3, 0);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_fn(8, 100 + t);
    std::vector<int> s((std::size_t{1} << 8) - 1);
    for (auto& x : s) x = r.uniform() < 0.5 ? -1 : 1;
    CHECK(martingale_transform(f, s).lp_norm(4) <= 3.0 * f.lp_norm(4));
  }
}

TEST_CASE("A2 characteristic") {
  CHECK(a2_dyadic(DyadicWeight(4, std::vector<double>(16, 1.0))) == doctest::Approx(1.0));
  CHECK(a2_dyadic(two_value(2, 1, 1)) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
  CHECK(a2_dyadic(two_value(2, 1, 6)) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
  CHECK_THROWS_AS(a2_dyadic(two_value(1, 0, 3)), DomainError);
  double prev = 0;
  for (int d = 4; d <= 12; ++d) {
    const double q = a2_dyadic(weights::dyadic_weight("power:0.5", d));
    CHECK(std::isfinite(q));
    CHECK(q >= prev - 1e-12);
    prev = q;
  }
}

TEST_CASE("weighted Haar functions") {
  const auto one = weighted_haar(DyadicWeight(3, std::vector<double>(8, 1.0)), {0, 0});
  CHECK(one.alpha == doctest::Approx(1.0));
  CHECK(std::abs(one.beta) < 1e-15);

  // 4 on the left half, 1 on the right.
  const auto w = two_value(4, 1, 3);
  const auto h = weighted_haar(w, {0, 0});
  CHECK(std::abs(std::abs(h.beta) - 3.0 / 5.0) < 1e-14);
  for (std::size_t i = 0; i < 8; ++i) {
    const double haar = i < 4 ? -1.0 : 1.0;
    CHECK(std::abs(h.alpha * h.hw[i] + h.beta - haar) < 1e-14);
  }

  const auto rw = random_fn(5, 4, 0.5, 3.0);
  std::vector<DyadicFunction> hs;
  for (int lv = 0; lv < 5; ++lv)
    for (std::int64_t k = 0; k < (std::int64_t{1} << lv); ++k) hs.push_back(weighted_haar(rw, {lv, k}).hw);
  double worst = 0;
  for (std::size_t a = 0; a < hs.size(); ++a)
    for (std::size_t b = a; b < hs.size(); ++b) {
      double g = 0;
      for (std::size_t i = 0; i < rw.size(); ++i) g += hs[a][i] * hs[b][i] * rw[i] / rw.size();
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Carleson intensity and embedding") {
  const int D = 6;
  CarlesonSequence seq(D);
  for (int lv = 0; lv <= D; ++lv)
    for (std::int64_t k = 0; k < (std::int64_t{1} << lv); ++k) seq[{lv, k}] = std::ldexp(1.0, -lv);
  CHECK(carleson_intensity(seq) == doctest::Approx(D + 1.0));

  const auto ones = DyadicFunction(D, std::vector<double>(64, 1.0));
  const auto e = carleson_embedding_check(seq, ones, ones);
  CHECK(e.lhs1 == doctest::Approx(D + 1.0));
  CHECK(e.rhs1 == doctest::Approx(2.0 * (D + 1.0)));
  CHECK(e.ok1);
  CHECK(e.ok2);

  CHECK(carleson_intensity(caral_sequence(ones, 0.25)) == doctest::Approx(0.0));
  const double b = carleson_intensity(caral_sequence(two_value(2, 1, 8), 0.25));
  CHECK(b > 0);
  CHECK(std::isfinite(b));

  // Random Carleson-normalized sequences against the half indicator.
  std::vector<double> ind(64);
  for (std::size_t i = 0; i < 32; ++i) ind[i] = 1.0;
  CounterRng r(5, 0);
  for (int t = 0; t < 10; ++t) {
    CarlesonSequence s(D);
    for (int lv = 0; lv <= D; ++lv)
      for (std::int64_t k = 0; k < (std::int64_t{1} << lv); ++k) s[{lv, k}] = r.uniform() * std::ldexp(1.0, -lv);
    CHECK(carleson_embedding_check(s, DyadicFunction(D, ind), ones).ok1);
  }
}

TEST_CASE("Buckley sum and A-infinity") {
  CHECK(buckley_sum(DyadicWeight(4, std::vector<double>(16, 1.0)), {0, 0}) == doctest::Approx(0.0));
  CHECK(buckley_sum(two_value(2, 1, 4), {0, 0}) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(a_infinity_constant(DyadicWeight(3, std::vector<double>(8, 2.5))) == doctest::Approx(1.0));
  CHECK(a_infinity_constant(two_value(2, 1, 4)) == doctest::Approx(1.5 / std::sqrt(2.0)).epsilon(1e-14));
  std::vector<double> sums;
  for (int d = 8; d <= 14; ++d) sums.push_back(buckley_sum(weights::dyadic_weight("power:0.5", d), {0, 0}));
  for (std::size_t i = 1; i < sums.size(); ++i) CHECK(sums[i] >= sums[i - 1] - 1e-12);
  CHECK(std::abs(sums.back() - sums[sums.size() - 2]) <= 1e-2 * sums.back());
}

TEST_CASE("weighted martingale transform ratio") {
  const auto ones = DyadicWeight(6, std::vector<double>(64, 1.0));
  CHECK(weighted_mt_ratio(ones, 50, 2, 1).ratio <= 1.0 + 1e-12);
  const auto w = two_value(2, 1, 8);
  const auto m = weighted_mt_ratio(w, 2000, 2, 1);
  CHECK(m.ratio <= 2.0 * m.q);
  std::vector<double> scaled(w.values());
  for (auto& x : scaled) x *= 7.0;
  CHECK(weighted_mt_ratio(DyadicWeight(8, scaled), 2000, 2, 1).ratio == doctest::Approx(m.ratio).epsilon(1e-12));
}

TEST_CASE("weight specs") {
  CHECK(weights::dyadic_weight("const", 3).size() == 8);
  CHECK_THROWS_AS(weights::dyadic_weight("bogus:1", 3), std::exception);
  CHECK_THROWS_AS(weights::dyadic_weight("file:/nonexistent/w.txt", 3), std::exception);
}
