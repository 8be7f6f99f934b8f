#include "bflab/planar.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>

#include "bflab/kernels.hpp"
#include "bflab/quadrature.hpp"
#include "bflab/rng.hpp"

namespace bflab::planar {

GridField::GridField(int n, double L) : n_(n), L_(L), v_(static_cast<std::size_t>(n) * n) {
  if (n < 2 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of 2");
  if (!(L > 0.0)) throw DomainError("box side must be positive");
}

GridField::GridField(int n, double L, std::vector<cplx> values) : GridField(n, L) {
  if (values.size() != v_.size()) throw DomainError("field has the wrong number of samples");
  v_ = std::move(values);
}

GridField GridField::from_function(int n, double L, const std::function<cplx(double, double)>& f) {
  GridField g(n, L);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = f(g.x(i), g.x(j));
  return g;
}

cplx GridField::mean() const {
  cplx s = 0.0;
  for (const auto& v : v_) s += v;
  return s / static_cast<double>(v_.size());
}

double GridField::l2_norm() const { return std::sqrt(h() * h() * kernels::norm2(v_.data(), v_.size())); }

double GridField::lp_norm(double p) const {
  double s = 0.0;
  for (const auto& v : v_) s += std::pow(std::abs(v), p);
  return std::pow(h() * h() * s, 1.0 / p);
}

cplx GridField::inner(const GridField& g) const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) s += v_[i] * std::conj(g.v_[i]);
  return s * h() * h();
}

double GridField::max_abs() const {
  double m = 0.0;
  for (const auto& v : v_) m = std::max(m, std::abs(v));
  return m;
}

double GridField::boundary_max() const {
  double m = 0.0;
  for (int k = 0; k < n_; ++k) {
    m = std::max({m, std::abs((*this)(k, 0)), std::abs((*this)(0, k)), std::abs((*this)(k, n_ - 1)),
                  std::abs((*this)(n_ - 1, k))});
  }
  return m;
}

GridField& GridField::operator+=(const GridField& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

GridField& GridField::operator*=(cplx c) {
  for (auto& v : v_) v *= c;
  return *this;
}

GridField GridField::operator-(const GridField& o) const {
  GridField r = *this;
  for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] -= o.v_[i];
  return r;
}

namespace {

struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex g_plan_mu;

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(g_plan_mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const std::size_t sz = static_cast<std::size_t>(n) * n;
  fftw_complex* buf = fftw_alloc_complex(sz);
  Plans p;
  p.fwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!p.fwd || !p.bwd) throw NumericError("FFTW planning failed");
  return cache.emplace(n, p).first->second;
}

void exec(fftw_plan plan, std::vector<cplx>& v) {
  auto* d = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(plan, d, d);
}

void transform_inplace(std::vector<cplx>& v, int n, bool forward) {
  const Plans& p = plans_for(n);
  exec(forward ? p.fwd : p.bwd, v);
  if (!forward) {
    const double s = 1.0 / (static_cast<double>(n) * n);
    for (auto& z : v) z *= s;
  }
}

// Symbol sampled on the FFT grid.
std::vector<cplx> symbol_grid(const SpectralMultiplier& m, int n, double L) {
  std::vector<cplx> s(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    const double k2 = freq(j, n, L);
    for (int i = 0; i < n; ++i) {
      const double k1 = freq(i, n, L);
      s[static_cast<std::size_t>(j) * n + i] = (i == 0 && j == 0) ? m.zero_value : m.symbol(k1, k2);
    }
  }
  return s;
}

std::vector<double> real_part(const std::vector<cplx>& s) {
  std::vector<double> r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = s[i].real();
  return r;
}

GridField apply_symbol(const std::vector<cplx>& sym, const GridField& f) {
  std::vector<cplx> v = f.data();
  transform_inplace(v, f.n(), true);
  kernels::cmul(v.data(), sym.data(), v.size());
  transform_inplace(v, f.n(), false);
  return GridField(f.n(), f.L(), std::move(v));
}

GridField apply_real_symbol(const std::vector<double>& sym, const GridField& f) {
  std::vector<cplx> v = f.data();
  transform_inplace(v, f.n(), true);
  kernels::cmul_real(v.data(), sym.data(), v.size());
  transform_inplace(v, f.n(), false);
  return GridField(f.n(), f.L(), std::move(v));
}

// Derivative symbols vanish on the Nyquist line so real data stay real.
double dfreq(int k, int n, double L) { return 2 * k == n ? 0.0 : freq(k, n, L); }

}  // namespace

std::vector<cplx> fft(const GridField& f) {
  std::vector<cplx> v = f.data();
  transform_inplace(v, f.n(), true);
  return v;
}

GridField ifft(const std::vector<cplx>& spec, int n, double L) {
  std::vector<cplx> v = spec;
  transform_inplace(v, n, false);
  return GridField(n, L, std::move(v));
}

double freq(int k, int n, double L) {
  const int kk = k < n / 2 ? k : k - n;
  return 2.0 * kPi * kk / L;
}

SpectralMultiplier ab_symbol() {
  return {"ab",
          [](double a, double b) {
            const cplx z(a, -b);
            return z * z / (a * a + b * b);
          },
          0.0, false, 1.0};
}

SpectralMultiplier ab_conj_symbol() {
  return {"ab-conj",
          [](double a, double b) {
            const cplx z(a, b);
            return z * z / (a * a + b * b);
          },
          0.0, false, 1.0};
}

SpectralMultiplier riesz_sq_symbol(int i) {
  if (i != 1 && i != 2) throw DomainError("Riesz index must be 1 or 2");
  return {i == 1 ? "r11" : "r22",
          [i](double a, double b) { return cplx((i == 1 ? a * a : b * b) / (a * a + b * b), 0.0); },
          0.0, true, 1.0};
}

SpectralMultiplier riesz_mixed_symbol() {
  return {"r12", [](double a, double b) { return cplx(a * b / (a * a + b * b), 0.0); }, 0.0, true, 0.5};
}

SpectralMultiplier r11_minus_r22_symbol() {
  return {"r11-r22", [](double a, double b) { return cplx((a * a - b * b) / (a * a + b * b), 0.0); },
          0.0, true, 1.0};
}

SpectralMultiplier identity_symbol() {
  return {"identity", [](double, double) { return cplx(1.0, 0.0); }, 1.0, true, 1.0};
}

SpectralMultiplier negated(const SpectralMultiplier& m) {
  SpectralMultiplier r = m;
  r.name = "-" + m.name;
  auto s = m.symbol;
  r.symbol = [s](double a, double b) { return -s(a, b); };
  r.zero_value = -m.zero_value;
  return r;
}

GridField apply_multiplier(const SpectralMultiplier& m, const GridField& f) {
  const auto sym = symbol_grid(m, f.n(), f.L());
  if (m.real_symbol) return apply_real_symbol(real_part(sym), f);
  return apply_symbol(sym, f);
}

GridField ab_transform(const GridField& f) { return apply_multiplier(ab_symbol(), f); }
GridField riesz_sq(int i, const GridField& f) { return apply_multiplier(riesz_sq_symbol(i), f); }
GridField riesz_mixed(const GridField& f) { return apply_multiplier(riesz_mixed_symbol(), f); }

GridField dz(const GridField& f) {
  const int n = f.n();
  std::vector<cplx> s(f.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      s[static_cast<std::size_t>(j) * n + i] =
          0.5 * cplx(dfreq(j, n, f.L()), dfreq(i, n, f.L()));  // (i xi1 + xi2) / 2
  return apply_symbol(s, f);
}

GridField dzbar(const GridField& f) {
  const int n = f.n();
  std::vector<cplx> s(f.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      s[static_cast<std::size_t>(j) * n + i] =
          0.5 * cplx(-dfreq(j, n, f.L()), dfreq(i, n, f.L()));  // (i xi1 - xi2) / 2
  return apply_symbol(s, f);
}

GridField dx1(const GridField& f) {
  const int n = f.n();
  std::vector<cplx> s(f.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(j) * n + i] = cplx(0.0, dfreq(i, n, f.L()));
  return apply_symbol(s, f);
}

GridField heat_extension(const GridField& f, double t) {
  if (t < 0.0) throw DomainError("heat extension needs t >= 0");
  if (t == 0.0) return f;
  const int n = f.n();
  std::vector<double> s(f.size());
  for (int j = 0; j < n; ++j) {
    const double b = freq(j, n, f.L());
    for (int i = 0; i < n; ++i) {
      const double a = freq(i, n, f.L());
      s[static_cast<std::size_t>(j) * n + i] = std::exp(-0.25 * t * (a * a + b * b));
    }
  }
  return apply_real_symbol(s, f);
}

Identity113 identity_1_13_check(const GridField& phi, const GridField& psi, double tmax, int nt) {
  if (phi.n() != psi.n() || phi.L() != psi.L()) throw DomainError("identity check needs matching grids");
  if (!(tmax > 0.0)) throw DomainError("identity check needs tmax > 0");
  for (const GridField* f : {&phi, &psi}) {
    if (f->boundary_max() > 1e-12 * std::max(1.0, f->max_abs()))
      throw DomainError("test function does not decay below 1e-12 at the box boundary");
  }
  const int n = phi.n();
  const double L = phi.L();
  const double h = phi.h();
  Identity113 out;
  out.lhs = riesz_sq(1, phi).inner(psi).real();

  const auto a = fft(phi), b = fft(psi);
  std::vector<double> xi1sq(a.size()), xisq(a.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double k1 = dfreq(i, n, L), k2 = freq(j, n, L), kk1 = freq(i, n, L);
      xi1sq[static_cast<std::size_t>(j) * n + i] = k1 * k1;
      xisq[static_cast<std::size_t>(j) * n + i] = kk1 * kk1 + k2 * k2;
    }

  // G(t) = int d1 phi(t) d1 psi(t) dx, computed in physical space.
  auto G = [&](double t) {
    std::vector<cplx> u(a.size()), v(b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      const int i = static_cast<int>(k % n);
      const double g = std::exp(-0.25 * t * xisq[k]);
      const cplx d(0.0, dfreq(i, n, L));
      u[k] = d * g * a[k];
      v[k] = d * g * b[k];
    }
    const GridField fu = ifft(u, n, L), fv = ifft(v, n, L);
    return fu.inner(fv).real();
  };

  out.t_min = h * h;
  if (tmax <= out.t_min) throw DomainError("tmax must exceed (L/N)^2");
  if (nt < 3) nt = 3;
  if (nt % 2 == 0) ++nt;
  const double u0 = std::log(out.t_min), u1 = std::log(tmax);
  const double du = (u1 - u0) / (nt - 1);
  double simpson = 0.0;
  for (int k = 0; k < nt; ++k) {
    const double t = std::exp(u0 + k * du);
    const double wgt = (k == 0 || k == nt - 1) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    simpson += wgt * G(t) * t;
  }
  simpson *= du / 3.0;
  // [0, t_min] by 3-point Gauss-Legendre.
  const auto& gl = quad::gauss_legendre(3);
  double head = 0.0;
  for (int k = 0; k < 3; ++k) head += gl.w[k] * G(0.5 * out.t_min * (1.0 + gl.x[k]));
  head *= 0.5 * out.t_min;
  // Tail: int_tmax^inf xi1^2 e^{-t|xi|^2/2} dt = 2 xi1^2 e^{-tmax|xi|^2/2} / |xi|^2.
  double tail = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (xisq[k] == 0.0) continue;
    tail += 2.0 * xi1sq[k] / xisq[k] * std::exp(-0.5 * tmax * xisq[k]) * (a[k] * std::conj(b[k])).real();
  }
  tail *= h * h / (static_cast<double>(n) * n);
  const double total = head + simpson + tail;
  out.tail = tail;
  out.rhs = kIdentityConstant * total;
  out.gap = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.lhs), 1e-300);
  out.tail_warning = std::abs(tail) > 0.1 * std::abs(total);
  return out;
}

PlanarWeight make_weight(const GridField& w, double p) {
  if (!(p > 1.0)) throw DomainError("A_p characteristic needs p > 1");
  for (const auto& v : w.data())
    if (!(v.real() > 0.0) || v.imag() != 0.0) throw DomainError("weight must be real and positive");
  return {w, std::nullopt, p};
}

namespace {

GridField dual_of(const PlanarWeight& w) {
  if (w.dual) return *w.dual;
  GridField s = w.w;
  for (auto& v : s.data()) v = std::pow(v.real(), -1.0 / (w.p - 1.0));
  return s;
}

}  // namespace

double ap_class(const PlanarWeight& w, const DiscSpec& spec) {
  const int n = w.w.n();
  const double L = w.w.L(), h = w.w.h();
  std::vector<double> radii = spec.radii;
  if (radii.empty())
    for (double r = 2.0 * h; r <= 0.25 * L + 1e-12; r *= 2.0) radii.push_back(r);
  const GridField s = dual_of(w);
  const auto W = fft(w.w), S = fft(s);
  const int stride = std::max(1, spec.stride);
  double best = 0.0;
  for (double r : radii) {
    std::vector<cplx> ker(W.size(), 0.0);
    const int m = static_cast<int>(std::ceil(r / h));
    double count = 0.0;
    for (int dj = -m; dj <= m; ++dj)
      for (int di = -m; di <= m; ++di) {
        if ((di * di + dj * dj) * h * h > r * r) continue;
        const int i = (di + n) % n, j = (dj + n) % n;
        ker[static_cast<std::size_t>(j) * n + i] += 1.0;
        count += 1.0;
      }
    for (auto& k : ker) k /= count;
    GridField kf(n, L, std::move(ker));
    const auto K = fft(kf);
    std::vector<cplx> a = W, b = S;
    kernels::cmul(a.data(), K.data(), a.size());
    kernels::cmul(b.data(), K.data(), b.size());
    const GridField aw = ifft(a, n, L), as = ifft(b, n, L);
    for (int j = 0; j < n; j += stride)
      for (int i = 0; i < n; i += stride) {
        const double v = aw(i, j).real() * std::pow(as(i, j).real(), w.p - 1.0);
        best = std::max(best, v);
      }
  }
  return best;
}

double ap_heat(const PlanarWeight& w, const HeatSpec& spec) {
  const int n = w.w.n();
  const double L = w.w.L(), h = w.w.h();
  std::vector<double> times = spec.times;
  if (times.empty()) {
    const double t0 = h * h, t1 = 0.0625 * L * L;
    for (int k = 0; k < 16; ++k) times.push_back(t0 * std::pow(t1 / t0, k / 15.0));
  }
  const GridField s = dual_of(w);
  const int stride = std::max(1, spec.stride);
  double best = 0.0;
  for (double t : times) {
    const GridField a = heat_extension(w.w, t), b = heat_extension(s, t);
    for (int j = 0; j < n; j += stride)
      for (int i = 0; i < n; i += stride)
        best = std::max(best, a(i, j).real() * std::pow(b(i, j).real(), w.p - 1.0));
  }
  return best;
}

double norm_ratio(const SpectralMultiplier& op, const GridField& f, double p) {
  const double d = f.lp_norm(p);
  return d > 0.0 ? apply_multiplier(op, f).lp_norm(p) / d : 0.0;
}

namespace {

struct Objective {
  const SpectralMultiplier& op;
  std::vector<cplx> sym, sym_adj;
  std::vector<double> rsym;
  double p;
  bool real_field;
  double eps = 1e-12;

  GridField apply(const GridField& f, bool adjoint) const {
    if (op.real_symbol) return apply_real_symbol(rsym, f);
    return apply_symbol(adjoint ? sym_adj : sym, f);
  }

  // log ||Tf||_p - log ||f||_p and its gradient (for the real inner product).
  double value(const GridField& f, GridField* grad) const {
    const GridField g = apply(f, false);
    double sg = 0.0, sf = 0.0;
    for (const auto& v : g.data()) sg += std::pow(std::norm(v) + eps * eps, 0.5 * p);
    for (const auto& v : f.data()) sf += std::pow(std::norm(v) + eps * eps, 0.5 * p);
    if (grad) {
      GridField a = g;
      for (auto& v : a.data()) v *= std::pow(std::norm(v) + eps * eps, 0.5 * p - 1.0) / sg;
      GridField ta = apply(a, true);
      GridField out = f;
      auto& od = out.data();
      const auto& td = ta.data();
      for (std::size_t i = 0; i < od.size(); ++i) {
        const cplx fv = f.data()[i];
        od[i] = td[i] - fv * std::pow(std::norm(fv) + eps * eps, 0.5 * p - 1.0) / sf;
      }
      project(out);
      *grad = std::move(out);
    }
    return (std::log(sg) - std::log(sf)) / p;
  }

  void project(GridField& f) const {
    if (real_field)
      for (auto& v : f.data()) v = cplx(v.real(), 0.0);
    const cplx m = f.mean();
    for (auto& v : f.data()) v -= m;
  }
};

double re_dot(const GridField& a, const GridField& b) {
  const double* x = reinterpret_cast<const double*>(a.data().data());
  const double* y = reinterpret_cast<const double*>(b.data().data());
  return kernels::dot(x, y, 2 * a.size());
}

void normalize(GridField& f) {
  const double s = std::sqrt(kernels::norm2(f.data().data(), f.size()));
  if (s > 0.0) f *= 1.0 / s;
}

GridField initial_guess(int which, int n, double L, double p, std::uint64_t seed, bool real_field) {
  const double h = L / n;
  if (which == 0) {
    // cos(2 theta) r^{-2/p} with a smooth cutoff; the angular profile is an
    // eigenfunction of R1^2 - R2^2 and the radial power sits at the L^p edge.
    return GridField::from_function(n, L, [&](double x, double y) {
      const double r2 = x * x + y * y + h * h;
      const double R = 0.45 * L;
      const double cut = r2 < R * R ? std::pow(1.0 - r2 / (R * R), 2) : 0.0;
      return cplx((x * x - y * y) / r2 * std::pow(r2, -1.0 / p) * cut, 0.0);
    });
  }
  CounterRng rng(seed, static_cast<std::uint64_t>(which));
  GridField f(n, L);
  for (auto& v : f.data()) v = cplx(rng.normal(), real_field ? 0.0 : rng.normal());
  if (which == 2) return f;
  // Smoothed noise.
  std::vector<double> s(f.size());
  const double kc = 0.25 * kPi / h;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double a = freq(i, n, L), b = freq(j, n, L);
      s[static_cast<std::size_t>(j) * n + i] = std::exp(-(a * a + b * b) / (kc * kc));
    }
  GridField g = apply_real_symbol(s, f);
  if (real_field)
    for (auto& v : g.data()) v = cplx(v.real(), 0.0);
  return g;
}

const char* start_name(int which) {
  switch (which) {
    case 0: return "angular-power";
    case 1: return "smooth-noise";
    default: return "white-noise";
  }
}

}  // namespace

AscentResult norm_ratio_ascent(const SpectralMultiplier& op, double p, int n, int iters,
                               std::uint64_t seed, double L, int starts) {
  if (p < 2.0) throw DomainError("norm_ratio_ascent needs p >= 2");
  if (iters < 0) throw DomainError("iters must be >= 0");
  Objective obj{op, symbol_grid(op, n, L), {}, {}, p, op.real_symbol};
  obj.sym_adj = obj.sym;
  for (auto& v : obj.sym_adj) v = std::conj(v);
  obj.rsym = real_part(obj.sym);

  AscentResult best;
  best.ratio = -1.0;
  for (int st = 0; st < std::max(1, starts); ++st) {
    GridField f = initial_guess(st, n, L, p, seed, obj.real_field);
    obj.project(f);
    normalize(f);
    GridField g, d, g_prev;
    double J = obj.value(f, &g);
    std::vector<double> hist;
    d = g;
    double step = 1.0;
    double gg_prev = re_dot(g, g);
    bool restarted = false;
    for (int it = 0; it < iters; ++it) {
      double slope = re_dot(g, d);
      if (slope <= 0.0) {
        d = g;
        slope = re_dot(g, g);
      }
      if (slope <= 0.0) {
        hist.push_back(std::exp(J));
        continue;
      }
      // Backtracking (Armijo) along d.
      double a = step * 2.0;
      bool ok = false;
      GridField trial;
      double Jt = J;
      for (int bt = 0; bt < 50; ++bt) {
        trial = f;
        auto& td = trial.data();
        for (std::size_t i = 0; i < td.size(); ++i) td[i] += a * d.data()[i];
        obj.project(trial);
        Jt = obj.value(trial, nullptr);
        if (Jt >= J + 1e-4 * a * slope) {
          ok = true;
          break;
        }
        a *= 0.5;
      }
      if (!ok) {
        if (restarted) {
          hist.push_back(std::exp(J));
          break;
        }
        restarted = true;
        d = g;
        hist.push_back(std::exp(J));
        continue;
      }
      restarted = false;
      step = a;
      f = std::move(trial);
      normalize(f);
      step /= 1.0;
      g_prev = g;
      J = obj.value(f, &g);
      // Polak-Ribiere+ direction update.
      const double gg = re_dot(g, g);
      const double beta = std::max(0.0, (gg - re_dot(g, g_prev)) / gg_prev);
      gg_prev = gg;
      GridField nd = g;
      for (std::size_t i = 0; i < nd.size(); ++i) nd.data()[i] += beta * d.data()[i];
      d = std::move(nd);
      hist.push_back(std::exp(J));
    }
    const double r = norm_ratio(op, f, p);
    if (r > best.ratio) {
      best.ratio = r;
      best.witness = f;
      best.history = hist;
      best.start = start_name(st);
    }
  }
  // History as running maximum of the winning run.
  for (std::size_t i = 1; i < best.history.size(); ++i)
    best.history[i] = std::max(best.history[i], best.history[i - 1]);
  return best;
}

namespace {
constexpr char kMagic[8] = {'B', 'F', 'L', 'A', 'B', 'G', 'F', '1'};
}

void write_field(const std::string& path, const GridField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open field file for writing: " + path);
  const std::uint64_t n = static_cast<std::uint64_t>(f.n());
  const double L = f.L();
  os.write(kMagic, 8);
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(&L), 8);
  os.write(reinterpret_cast<const char*>(f.data().data()), static_cast<std::streamsize>(f.size() * 16));
  if (!os) throw NumericError("short write on " + path);
}

GridField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open field file: " + path);
  char magic[8];
  std::uint64_t n = 0;
  double L = 0.0;
  is.read(magic, 8);
  is.read(reinterpret_cast<char*>(&n), 8);
  is.read(reinterpret_cast<char*>(&L), 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw DomainError("not a field file: " + path);
  if (n < 2 || n > 8192) throw DomainError("field file has an unsupported size");
  std::vector<cplx> v(n * n);
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * 16));
  if (!is) throw DomainError("truncated field file: " + path);
  return GridField(static_cast<int>(n), L, std::move(v));
}

}  // namespace bflab::planar
