#include "bflab/quadrature.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>

#include "bflab/common.hpp"

namespace bflab::quad {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix.
Rule golub_welsch(int n, const std::function<double(int)>& offdiag, double mu0) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = J(i + 1, i) = offdiag(i + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v * v;
  }
  return r;
}

// Newton refinement of Legendre roots, which Golub-Welsch gives to ~1e-15 already;
// weights recomputed from P_n' for full accuracy.
void polish_legendre(Rule& r, int n) {
  for (int i = 0; i < n; ++i) {
    double x = r.x[i];
    double dp = 0.0;
    for (int it = 0; it < 3; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

std::mutex g_mu;

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(g_mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r = golub_welsch(
      n, [](int k) { return k / std::sqrt(4.0 * k * k - 1.0); }, 2.0);
  if (n > 1) polish_legendre(r, n);
  return cache.emplace(n, std::move(r)).first->second;
}

const Rule& gauss_hermite(int n) {
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(g_mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r = golub_welsch(
      n, [](int k) { return std::sqrt(k / 2.0); }, std::sqrt(kPi));
  return cache.emplace(n, std::move(r)).first->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels,
                    int order) {
  const Rule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double c = a + (j + 0.5) * h;
    double ps = 0.0;
    for (int i = 0; i < order; ++i) ps += r.w[i] * f(c + 0.5 * h * r.x[i]);
    s += 0.5 * h * ps;
  }
  return s;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, double* err) {
  double e = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol, &e);
  if (err) *err = e;
  return v;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  double* fmin) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = fc < fd ? c : d;
  if (fmin) *fmin = std::min(fc, fd);
  return x;
}

}  // namespace bflab::quad
