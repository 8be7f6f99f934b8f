#pragma once

#include <functional>
#include <vector>

namespace bflab::quad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes on [-1, 1].
const Rule& gauss_legendre(int n);
// Gauss-Hermite nodes for weight exp(-x^2), via Golub-Welsch.
const Rule& gauss_hermite(int n);

// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels = 8,
                    int order = 20);

// Adaptive Gauss-Kronrod on [a, b]; returns the estimate and writes the error bound.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-13, double* err = nullptr);

// Golden-section minimization of a unimodal f on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  double* fmin = nullptr);

}  // namespace bflab::quad
