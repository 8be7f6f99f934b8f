#include "bflab/kernels.hpp"

#include <atomic>

namespace bflab::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(BFLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool force_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

#ifdef BFLAB_HAVE_AVX2
#define BFLAB_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define BFLAB_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void cmul_real(cplx* z, const double* m, std::size_t n) { BFLAB_DISPATCH(cmul_real, z, m, n); }
void cmul(cplx* z, const cplx* m, std::size_t n) { BFLAB_DISPATCH(cmul, z, m, n); }
double norm2(const cplx* z, std::size_t n) { return BFLAB_DISPATCH(norm2, z, n); }
double dot(const double* x, const double* y, std::size_t n) { return BFLAB_DISPATCH(dot, x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { BFLAB_DISPATCH(axpy, a, x, y, n); }
void pair_mean(const double* in, double* out, std::size_t n_out) {
  BFLAB_DISPATCH(pair_mean, in, out, n_out);
}
void vexp(const double* x, double* out, std::size_t n) { BFLAB_DISPATCH(vexp, x, out, n); }
void mixture_eval(const Mixture& mix, const double* x, const double* y, std::size_t n,
                  const MixtureOut& out) {
  BFLAB_DISPATCH(mixture_eval, mix, x, y, n, out);
}

}  // namespace bflab::kernels
