#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "bflab/kernels.hpp"
#include "bflab/rng.hpp"

using namespace bflab;
namespace K = bflab::kernels;

namespace {

std::vector<double> randv(std::size_t n, std::uint64_t seed, double a = -1, double b = 1) {
  CounterRng r(seed, 0);
  std::vector<double> v(n);
  for (auto& x : v) x = r.uniform(a, b);
  return v;
}

std::vector<cplx> randc(std::size_t n, std::uint64_t seed) {
  auto re = randv(n, seed), im = randv(n, seed + 100);
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = {re[i], im[i]};
  return z;
}

bool have_avx2() { return K::force_isa(K::Isa::avx2) && (K::force_isa(K::Isa::scalar), true); }

}  // namespace

// Odd lengths exercise the scalar tails of the vector loops.
const std::size_t kSizes[] = {0, 1, 3, 4, 7, 64, 1001};

TEST_CASE("dispatch reports a usable variant") {
  const auto isa = K::active_isa();
  CHECK((isa == K::Isa::scalar || isa == K::Isa::avx2));
  CHECK(K::force_isa(K::Isa::scalar));
  CHECK(K::active_isa() == K::Isa::scalar);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!have_avx2()) {
    MESSAGE("no AVX2 on this machine");
    return;
  }
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    auto z1 = randc(n, 1), z2 = z1;
    auto m = randv(n, 2);
    K::scalar::cmul_real(z1.data(), m.data(), n);
    K::avx2::cmul_real(z2.data(), m.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z1[i] - z2[i]) <= 1e-15);

    auto w1 = randc(n, 3), w2 = w1, mc = randc(n, 4);
    K::scalar::cmul(w1.data(), mc.data(), n);
    K::avx2::cmul(w2.data(), mc.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(w1[i] - w2[i]) <= 1e-15);

    const double s1 = K::scalar::norm2(w1.data(), n), s2 = K::avx2::norm2(w1.data(), n);
    CHECK(std::abs(s1 - s2) <= 1e-13 * (1 + s1));

    auto x = randv(n, 5), y = randv(n, 6);
    const double d1 = K::scalar::dot(x.data(), y.data(), n), d2 = K::avx2::dot(x.data(), y.data(), n);
    CHECK(std::abs(d1 - d2) <= 1e-13 * (1 + std::abs(d1)) + 1e-13 * n);

    auto y1 = y, y2 = y;
    K::scalar::axpy(0.37, x.data(), y1.data(), n);
    K::avx2::axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

    auto in = randv(2 * n, 7);
    std::vector<double> o1(n), o2(n);
    K::scalar::pair_mean(in.data(), o1.data(), n);
    K::avx2::pair_mean(in.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == o2[i]);

    auto e = randv(n, 8, -700, 700);
    std::vector<double> e1(n), e2(n);
    K::scalar::vexp(e.data(), e1.data(), n);
    K::avx2::vexp(e.data(), e2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(e1[i] - e2[i]) <= 1e-14 * e1[i]);
  }
}

TEST_CASE("vexp agrees with std::exp") {
  auto e = randv(500, 9, -50, 50);
  std::vector<double> out(500);
  K::vexp(e.data(), out.data(), 500);
  for (std::size_t i = 0; i < 500; ++i) CHECK(std::abs(out[i] - std::exp(e[i])) <= 1e-14 * std::exp(e[i]));
}

TEST_CASE("mixture_eval: avx2 vs scalar vs direct formula") {
  std::vector<double> mx{0.0, 0.5, -1.0}, my{0.0, -0.2, 0.3}, var{0.25, 0.6, 1.3}, cre{1.0, -0.4, 0.2},
      cim{0.0, 0.7, -0.1};
  K::Mixture mix{mx.data(), my.data(), var.data(), cre.data(), cim.data(), 3};
  const std::size_t n = 37;
  auto x = randv(n, 10, -3, 3), y = randv(n, 11, -3, 3);
  std::vector<double> a(6 * n), b(6 * n);
  auto out = [n](std::vector<double>& s) {
    return K::MixtureOut{s.data(), s.data() + n, s.data() + 2 * n, s.data() + 3 * n, s.data() + 4 * n,
                         s.data() + 5 * n};
  };
  K::scalar::mixture_eval(mix, x.data(), y.data(), n, out(a));
  for (std::size_t i = 0; i < n; ++i) {
    cplx v = 0, gx = 0;
    for (int k = 0; k < 3; ++k) {
      const double dx = x[i] - mx[k], dy = y[i] - my[k];
      const cplx term = cplx(cre[k], cim[k]) * std::exp(-(dx * dx + dy * dy) / (2 * var[k]));
      v += term;
      gx += -dx / var[k] * term;
    }
    CHECK(std::abs(cplx(a[i], a[n + i]) - v) <= 1e-14);
    CHECK(std::abs(cplx(a[2 * n + i], a[3 * n + i]) - gx) <= 1e-13);
  }
  if (have_avx2()) {
    K::avx2::mixture_eval(mix, x.data(), y.data(), n, out(b));
    for (std::size_t i = 0; i < 6 * n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14);
  }
}
