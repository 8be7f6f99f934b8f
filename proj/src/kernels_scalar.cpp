#include <cmath>

#include "bflab/kernels.hpp"

namespace bflab::kernels::scalar {

void cmul_real(cplx* z, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] *= m[i];
}

void cmul(cplx* z, const cplx* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = z[i].real(), b = z[i].imag();
    const double c = m[i].real(), d = m[i].imag();
    z[i] = cplx(a * c - b * d, a * d + b * c);
  }
}

double norm2(const cplx* z, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void pair_mean(const double* in, double* out, std::size_t n_out) {
  for (std::size_t i = 0; i < n_out; ++i) out[i] = 0.5 * (in[2 * i] + in[2 * i + 1]);
}

void vexp(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void mixture_eval(const Mixture& mix, const double* x, const double* y, std::size_t n,
                  const MixtureOut& out) {
  for (std::size_t i = 0; i < n; ++i) {
    double vr = 0, vi = 0, gxr = 0, gxi = 0, gyr = 0, gyi = 0;
    for (std::size_t k = 0; k < mix.k; ++k) {
      const double dx = x[i] - mix.mx[k], dy = y[i] - mix.my[k];
      const double e = std::exp(-(dx * dx + dy * dy) / (2.0 * mix.var[k]));
      const double er = e * mix.cre[k], ei = e * mix.cim[k];
      const double s = -1.0 / mix.var[k];
      vr += er;
      vi += ei;
      gxr += s * dx * er;
      gxi += s * dx * ei;
      gyr += s * dy * er;
      gyi += s * dy * ei;
    }
    out.val_re[i] = vr;
    out.val_im[i] = vi;
    out.gx_re[i] = gxr;
    out.gx_im[i] = gxi;
    out.gy_re[i] = gyr;
    out.gy_im[i] = gyi;
  }
}

}  // namespace bflab::kernels::scalar
