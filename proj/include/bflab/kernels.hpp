#pragma once

// Data-parallel inner loops. Each entry point has a scalar reference version
// and, on x86-64, an AVX2/FMA version chosen once at startup.

#include <cstddef>

#include "bflab/common.hpp"

namespace bflab::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
// Forces a specific variant; returns false if the CPU lacks it.
bool force_isa(Isa isa);

// z[i] *= m[i]
void cmul_real(cplx* z, const double* m, std::size_t n);
// z[i] *= m[i]
void cmul(cplx* z, const cplx* m, std::size_t n);
// sum |z[i]|^2
double norm2(const cplx* z, std::size_t n);
// sum x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);
// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);
// out[i] = (in[2i] + in[2i+1]) / 2
void pair_mean(const double* in, double* out, std::size_t n_out);
// out[i] = exp(x[i])
void vexp(const double* x, double* out, std::size_t n);

// Gaussian mixture sum_k c_k exp(-|x-m_k|^2 / (2 v_k)) with complex weights,
// evaluated with its gradient at n points. gx/gy/val hold real and imaginary
// parts interleaved as separate arrays.
struct Mixture {
  const double* mx;
  const double* my;
  const double* var;
  const double* cre;
  const double* cim;
  std::size_t k;
};
struct MixtureOut {
  double* val_re;
  double* val_im;
  double* gx_re;
  double* gx_im;
  double* gy_re;
  double* gy_im;
};
void mixture_eval(const Mixture& mix, const double* x, const double* y, std::size_t n,
                  const MixtureOut& out);

namespace scalar {
void cmul_real(cplx* z, const double* m, std::size_t n);
void cmul(cplx* z, const cplx* m, std::size_t n);
double norm2(const cplx* z, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void pair_mean(const double* in, double* out, std::size_t n_out);
void vexp(const double* x, double* out, std::size_t n);
void mixture_eval(const Mixture& mix, const double* x, const double* y, std::size_t n,
                  const MixtureOut& out);
}  // namespace scalar

namespace avx2 {
void cmul_real(cplx* z, const double* m, std::size_t n);
void cmul(cplx* z, const cplx* m, std::size_t n);
double norm2(const cplx* z, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void pair_mean(const double* in, double* out, std::size_t n_out);
void vexp(const double* x, double* out, std::size_t n);
void mixture_eval(const Mixture& mix, const double* x, const double* y, std::size_t n,
                  const MixtureOut& out);
}  // namespace avx2

}  // namespace bflab::kernels
