#include <immintrin.h>

#include <cmath>

#include "bflab/kernels.hpp"

namespace bflab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// 2^n for integer-valued n in [-1074, 1023], split in two factors so that
// each stays a normal double.
inline __m256d pow2n(__m256d n) {
  const __m256d half = _mm256_floor_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)));
  const __m256d rest = _mm256_sub_pd(n, half);
  const __m128i h = _mm256_cvtpd_epi32(half);
  const __m128i r = _mm256_cvtpd_epi32(rest);
  const __m256i bias = _mm256_set1_epi64x(1023);
  __m256i eh = _mm256_add_epi64(_mm256_cvtepi32_epi64(h), bias);
  __m256i er = _mm256_add_epi64(_mm256_cvtepi32_epi64(r), bias);
  eh = _mm256_slli_epi64(eh, 52);
  er = _mm256_slli_epi64(er, 52);
  return _mm256_mul_pd(_mm256_castsi256_pd(eh), _mm256_castsi256_pd(er));
}

inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.78);
  const __m256d lo = _mm256_set1_pd(-745.0);
  const __m256d over = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
  const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(0.693145751953125), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212e-6), r);

  // Taylor polynomial to degree 13 on |r| <= ln2/2.
  static const double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
                             1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
                             1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
                             1.0 / 24.0,         1.0 / 6.0,         0.5,
                             1.0,                1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));

  __m256d y = _mm256_mul_pd(p, pow2n(n));
  y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), over);
  y = _mm256_blendv_pd(y, _mm256_setzero_pd(), under);
  return y;
}

}  // namespace

void cmul_real(cplx* z, const double* m, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // m0 m0 m1 m1
    const __m128d mm = _mm_loadu_pd(m + i);
    const __m256d dup = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mm), 0x50);
    __m256d v = _mm256_loadu_pd(zd + 2 * i);
    _mm256_storeu_pd(zd + 2 * i, _mm256_mul_pd(v, dup));
  }
  for (; i < n; ++i) z[i] *= m[i];
}

void cmul(cplx* z, const cplx* m, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  const double* md = reinterpret_cast<const double*>(m);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(zd + 2 * i);
    const __m256d b = _mm256_loadu_pd(md + 2 * i);
    const __m256d br = _mm256_movedup_pd(b);         // c c
    const __m256d bi = _mm256_permute_pd(b, 0xF);    // d d
    const __m256d as = _mm256_permute_pd(a, 0x5);    // b a
    const __m256d t = _mm256_mul_pd(as, bi);         // bd ad
    _mm256_storeu_pd(zd + 2 * i, _mm256_fmaddsub_pd(a, br, t));
  }
  for (; i < n; ++i) {
    const double a = z[i].real(), b = z[i].imag();
    const double c = m[i].real(), d = m[i].imag();
    z[i] = cplx(a * c - b * d, a * d + b * c);
  }
}

double norm2(const cplx* z, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d a = _mm256_loadu_pd(zd + i);
    const __m256d b = _mm256_loadu_pd(zd + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) s += zd[i] * zd[i];
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void pair_mean(const double* in, double* out, std::size_t n_out) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n_out; i += 4) {
    const __m256d a = _mm256_loadu_pd(in + 2 * i);
    const __m256d b = _mm256_loadu_pd(in + 2 * i + 4);
    // hadd gives (a0+a1, b0+b1, a2+a3, b2+b3)
    const __m256d h = _mm256_hadd_pd(a, b);
    const __m256d s = _mm256_permute4x64_pd(h, 0xD8);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(s, half));
  }
  for (; i < n_out; ++i) out[i] = 0.5 * (in[2 * i] + in[2 * i + 1]);
}

void vexp(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void mixture_eval(const Mixture& mix, const double* x, const double* y, std::size_t n,
                  const MixtureOut& out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i), yv = _mm256_loadu_pd(y + i);
    __m256d vr = _mm256_setzero_pd(), vi = _mm256_setzero_pd();
    __m256d gxr = _mm256_setzero_pd(), gxi = _mm256_setzero_pd();
    __m256d gyr = _mm256_setzero_pd(), gyi = _mm256_setzero_pd();
    for (std::size_t k = 0; k < mix.k; ++k) {
      const __m256d dx = _mm256_sub_pd(xv, _mm256_set1_pd(mix.mx[k]));
      const __m256d dy = _mm256_sub_pd(yv, _mm256_set1_pd(mix.my[k]));
      const __m256d r2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
      const __m256d e = exp_pd(_mm256_div_pd(r2, _mm256_set1_pd(-2.0 * mix.var[k])));
      const __m256d er = _mm256_mul_pd(e, _mm256_set1_pd(mix.cre[k]));
      const __m256d ei = _mm256_mul_pd(e, _mm256_set1_pd(mix.cim[k]));
      const __m256d s = _mm256_set1_pd(-1.0 / mix.var[k]);
      const __m256d sdx = _mm256_mul_pd(s, dx), sdy = _mm256_mul_pd(s, dy);
      vr = _mm256_add_pd(vr, er);
      vi = _mm256_add_pd(vi, ei);
      gxr = _mm256_fmadd_pd(sdx, er, gxr);
      gxi = _mm256_fmadd_pd(sdx, ei, gxi);
      gyr = _mm256_fmadd_pd(sdy, er, gyr);
      gyi = _mm256_fmadd_pd(sdy, ei, gyi);
    }
    _mm256_storeu_pd(out.val_re + i, vr);
    _mm256_storeu_pd(out.val_im + i, vi);
    _mm256_storeu_pd(out.gx_re + i, gxr);
    _mm256_storeu_pd(out.gx_im + i, gxi);
    _mm256_storeu_pd(out.gy_re + i, gyr);
    _mm256_storeu_pd(out.gy_im + i, gyi);
  }
  if (i < n) {
    const MixtureOut tail{out.val_re + i, out.val_im + i, out.gx_re + i,
                          out.gx_im + i,  out.gy_re + i,  out.gy_im + i};
    scalar::mixture_eval(mix, x + i, y + i, n - i, tail);
  }
}

}  // namespace bflab::kernels::avx2
