#pragma once

#include <vector>

#include "bflab/common.hpp"
#include "bflab/planar.hpp"

namespace bflab::qc {

enum class MapVariant { regular, singular, inverse };

// regular:  z |z|^{1/K - 1}
// singular: |z|^{1 - 1/K} / z
// inverse:  z |z|^{K - 1} (inverse of the regular map)
struct RadialMap {
  double K = 1.0;
  MapVariant variant = MapVariant::regular;

  double k() const { return (K - 1.0) / (K + 1.0); }
  cplx operator()(cplx z) const;
  cplx f_z(cplx z) const;
  cplx f_zbar(cplx z) const;
  double jacobian(double r) const;
};

RadialMap make_map(double K, MapVariant v);

// |f_zbar / f_z| from centered difference quotients.
double beltrami_ratio_fd(const RadialMap& f, cplx z, double h = 1e-5);

struct DistortionFit {
  double slope = 0.0;
  double residual = 0.0;        // max deviation from the fitted line
  std::vector<double> ratios;   // |f(B_r)| / |B_r|^{1/K}
};
DistortionFit distortion_exponent(const RadialMap& f, const std::vector<double>& radii);

// int_{eps<|z|<1} (|f_z| + |f_zbar|)^q dm by radial quadrature.
double sobolev_annulus(const RadialMap& f, double q, double eps);
double sobolev_annulus_exact(const RadialMap& f, double q, double eps);

struct SobolevReport {
  double rate = 0.0;           // fitted beta in I(shell j) ~ 2^{-beta j}
  bool converges = false;
  double predicted_rate = 0.0; // closed-form (1+k - q)(1 + 1/K)
  std::vector<double> partial; // I(2^{-j}) for j = 1..levels
};
SobolevReport sobolev_threshold(const RadialMap& f, double q, double eps_min);
// Bisection in q for the convergence switch.
double sobolev_threshold_q(const RadialMap& f, double tol = 1e-6);

// w = J^{1 - p/2} with cell averages on an n x n grid of side L; the dual
// holds cell averages of 1/w for use as an A_2 weight.
planar::PlanarWeight jacobian_weight(const RadialMap& f, double p, int n, double L = 2.0);

}  // namespace bflab::qc
