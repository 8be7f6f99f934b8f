#include "bflab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bflab/kernels.hpp"
#include "bflab/parallel.hpp"
#include "bflab/quadrature.hpp"
#include "bflab/rng.hpp"

namespace bflab::stoch {

MeanCI mean_ci(const std::vector<double>& samples, double nsigma) {
  MeanCI r;
  const std::size_t n = samples.size();
  if (n == 0) return r;
  double s = 0.0;
  for (double v : samples) s += v;
  r.mean = s / static_cast<double>(n);
  double ss = 0.0;
  for (double v : samples) ss += (v - r.mean) * (v - r.mean);
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  r.stderr_ = std::sqrt(var / static_cast<double>(n));
  r.lo = r.mean - nsigma * r.stderr_;
  r.hi = r.mean + nsigma * r.stderr_;
  return r;
}

// ---------------------------------------------------------------- driver

BrownianDriver BrownianDriver::uniform(int d, double T, int steps, std::uint64_t seed) {
  if (d < 1) throw DomainError("driver dimension must be >= 1");
  if (!(T >= 0.0) || steps < 1) throw DomainError("driver needs T >= 0 and steps >= 1");
  BrownianDriver b;
  b.d_ = d;
  b.seed_ = seed;
  b.times_.resize(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) b.times_[i] = T * i / steps;
  b.fine_times_ = b.times_;
  return b;
}

BrownianDriver BrownianDriver::geometric(int d, double T, int steps, double s_min,
                                         std::uint64_t seed) {
  if (d < 1) throw DomainError("driver dimension must be >= 1");
  if (!(T > 0.0) || steps < 2 || !(s_min > 0.0) || s_min >= T)
    throw DomainError("geometric driver needs T > s_min > 0 and steps >= 2");
  BrownianDriver b;
  b.d_ = d;
  b.seed_ = seed;
  b.times_.resize(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j < steps; ++j) b.times_[j] = T - T * std::pow(s_min / T, static_cast<double>(j) / (steps - 1));
  b.times_[0] = 0.0;
  b.times_[steps] = T;
  b.fine_times_ = b.times_;
  return b;
}

std::vector<double> BrownianDriver::increments(std::uint64_t index) const {
  CounterRng rng(seed_, index);
  const int fine = static_cast<int>(fine_times_.size()) - 1;
  const int coarse = steps();
  std::vector<double> inc(static_cast<std::size_t>(coarse) * d_, 0.0);
  for (int i = 0; i < fine; ++i) {
    const double sd = std::sqrt(fine_times_[i + 1] - fine_times_[i]);
    const int c = i / agg_;
    for (int k = 0; k < d_; ++k) inc[static_cast<std::size_t>(c) * d_ + k] += sd * rng.normal();
  }
  return inc;
}

BrownianDriver BrownianDriver::coarsened(int factor) const {
  if (factor < 1 || steps() % factor != 0) throw DomainError("coarsening factor must divide the step count");
  const int fine = static_cast<int>(fine_times_.size()) - 1;
  if (fine % (agg_ * factor) != 0) throw DomainError("coarsening factor must divide the step count");
  BrownianDriver b = *this;
  b.agg_ = agg_ * factor;
  b.times_.clear();
  for (int i = 0; i <= fine; i += b.agg_) b.times_.push_back(fine_times_[i]);
  return b;
}

double PastView::time(int j) const {
  if (j < 0 || j > now_) throw DomainError("adaptedness violation: future time requested");
  return times_[j];
}

double PastView::w(int j) const {
  if (j < 0 || j > now_) throw DomainError("adaptedness violation: future increment requested");
  return w_[j];
}

// ---------------------------------------------------------------- Riemann sums

RiemannGap riemann_gap_demo(double a, double b, int steps, int paths, std::uint64_t seed) {
  if (!(a >= 0.0)) throw DomainError("riemann_gap_demo needs a >= 0");
  if (b < a) throw DomainError("riemann_gap_demo needs a <= b");
  if (steps < 1 || paths < 2) throw DomainError("riemann_gap_demo needs steps >= 1 and paths >= 2");
  RiemannGap out;
  out.seed = seed;
  out.bound = b * (b - a);
  const double dt = (b - a) / steps;
  for (int i = 0; i < steps; ++i) out.sigma1_sq_exact += (a + i * dt) * dt;
  std::vector<double> s1(paths), s2(paths), g(paths), q(paths);
  if (b == a) {
    out.sigma1 = mean_ci(s1);
    out.sigma2 = mean_ci(s2);
    out.gap = mean_ci(g);
    out.sigma1_sq = mean_ci(q);
    out.sigma1_sq_exact = 0.0;
    return out;
  }
  const std::size_t block = 1024;
  const std::size_t nblocks = (static_cast<std::size_t>(paths) + block - 1) / block;
  parallel_for(nblocks, [&](std::size_t blk) {
    const std::size_t lo = blk * block, hi = std::min<std::size_t>(paths, lo + block);
    for (std::size_t p = lo; p < hi; ++p) {
      CounterRng rng(seed, p);
      double w = std::sqrt(a) * rng.normal();
      const double sd = std::sqrt(dt);
      double a1 = 0.0, a2 = 0.0;
      for (int i = 0; i < steps; ++i) {
        const double dw = sd * rng.normal();
        a1 += w * dw;
        w += dw;
        a2 += w * dw;
      }
      s1[p] = a1;
      s2[p] = a2;
      g[p] = a2 - a1;
      q[p] = a1 * a1;
    }
  });
  out.sigma1 = mean_ci(s1);
  out.sigma2 = mean_ci(s2);
  out.gap = mean_ci(g);
  out.sigma1_sq = mean_ci(q);
  return out;
}

// ---------------------------------------------------------------- Ito integral

ItoResult ito_integral(const std::vector<AdaptedProcess>& fs, const BrownianDriver& driver, int paths) {
  if (paths < 1) throw DomainError("ito_integral needs paths >= 1");
  const std::size_t K = fs.size();
  ItoResult r;
  r.values.assign(K, std::vector<double>(paths, 0.0));
  r.energy.assign(K * K, std::vector<double>(paths, 0.0));
  const auto& times = driver.times();
  const int steps = driver.steps();
  const int d = driver.dimension();
  for (int p = 0; p < paths; ++p) {
    const auto inc = driver.increments(static_cast<std::uint64_t>(p));
    std::vector<double> w(steps + 1, 0.0);
    for (int i = 0; i < steps; ++i) w[i + 1] = w[i] + inc[static_cast<std::size_t>(i) * d];
    std::vector<double> fv(K);
    for (int i = 0; i < steps; ++i) {
      // The view hides w beyond step i.
      const PastView view(w, times, i);
      const double dt = times[i + 1] - times[i];
      const double dw = w[i + 1] - w[i];
      for (std::size_t k = 0; k < K; ++k) fv[k] = fs[k](view);
      for (std::size_t k = 0; k < K; ++k) {
        r.values[k][p] += fv[k] * dw;
        for (std::size_t l = 0; l < K; ++l) r.energy[k * K + l][p] += fv[k] * fv[l] * dt;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- heat surfaces

HeatSurface HeatSurface::affine(cplx c0, cplx cx, cplx cy) {
  HeatSurface h;
  h.kind_ = Kind::affine;
  h.c0_ = c0;
  h.cx_ = cx;
  h.cy_ = cy;
  return h;
}

HeatSurface HeatSurface::mixture(std::vector<Bump> bumps) {
  for (const auto& b : bumps)
    if (!(b.var > 0.0)) throw DomainError("mixture bump needs positive variance");
  HeatSurface h;
  h.kind_ = Kind::mixture;
  h.bumps_ = std::move(bumps);
  return h;
}

HeatSurface HeatSurface::generic(std::function<cplx(double, double)> f, int nodes) {
  if (nodes < 2) throw DomainError("generic heat surface needs >= 2 nodes");
  HeatSurface h;
  h.kind_ = Kind::generic;
  h.fn_ = std::move(f);
  h.nodes_ = nodes;
  return h;
}

cplx HeatSurface::value(double s, double x, double y) const {
  if (s < 0.0) throw DomainError("heat time must be >= 0");
  switch (kind_) {
    case Kind::affine:
      return c0_ + cx_ * x + cy_ * y;
    case Kind::mixture: {
      cplx v = 0.0;
      for (const auto& b : bumps_) {
        const double vs = b.var + s;
        const double dx = x - b.mx, dy = y - b.my;
        v += b.c * (b.var / vs) * std::exp(-(dx * dx + dy * dy) / (2.0 * vs));
      }
      return v;
    }
    case Kind::generic:
      break;
  }
  if (s == 0.0) return fn_(x, y);
  const auto& gh = quad::gauss_hermite(nodes_);
  const double r = std::sqrt(2.0 * s);
  cplx v = 0.0;
  for (int i = 0; i < nodes_; ++i)
    for (int j = 0; j < nodes_; ++j) v += gh.w[i] * gh.w[j] * fn_(x + r * gh.x[i], y + r * gh.x[j]);
  return v / kPi;
}

std::pair<cplx, cplx> HeatSurface::gradient(double s, double x, double y) const {
  if (s < 0.0) throw DomainError("heat time must be >= 0");
  switch (kind_) {
    case Kind::affine:
      return {cx_, cy_};
    case Kind::mixture: {
      cplx gx = 0.0, gy = 0.0;
      for (const auto& b : bumps_) {
        const double vs = b.var + s;
        const double dx = x - b.mx, dy = y - b.my;
        const cplx e = b.c * (b.var / vs) * std::exp(-(dx * dx + dy * dy) / (2.0 * vs));
        gx -= e * dx / vs;
        gy -= e * dy / vs;
      }
      return {gx, gy};
    }
    case Kind::generic:
      break;
  }
  if (s == 0.0) {
    const double h = 1e-6;
    return {(fn_(x + h, y) - fn_(x - h, y)) / (2.0 * h), (fn_(x, y + h) - fn_(x, y - h)) / (2.0 * h)};
  }
  // grad u = E[f(x + Z) Z] / s with Z ~ N(0, s I).
  const auto& gh = quad::gauss_hermite(nodes_);
  const double r = std::sqrt(2.0 * s);
  cplx gx = 0.0, gy = 0.0;
  for (int i = 0; i < nodes_; ++i)
    for (int j = 0; j < nodes_; ++j) {
      const cplx v = gh.w[i] * gh.w[j] * fn_(x + r * gh.x[i], y + r * gh.x[j]);
      gx += v * (r * gh.x[i]);
      gy += v * (r * gh.x[j]);
    }
  return {gx / (kPi * s), gy / (kPi * s)};
}

void HeatSurface::gradient_batch(double s, const double* x, const double* y, std::size_t n, cplx* ux,
                                 cplx* uy, cplx* val) const {
  if (kind_ != Kind::mixture) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto g = gradient(s, x[i], y[i]);
      ux[i] = g.first;
      uy[i] = g.second;
      if (val) val[i] = value(s, x[i], y[i]);
    }
    return;
  }
  const std::size_t k = bumps_.size();
  std::vector<double> mx(k), my(k), var(k), cre(k), cim(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& b = bumps_[j];
    mx[j] = b.mx;
    my[j] = b.my;
    var[j] = b.var + s;
    const cplx c = b.c * (b.var / var[j]);
    cre[j] = c.real();
    cim[j] = c.imag();
  }
  std::vector<double> buf(6 * n);
  kernels::MixtureOut out{buf.data(), buf.data() + n, buf.data() + 2 * n,
                          buf.data() + 3 * n, buf.data() + 4 * n, buf.data() + 5 * n};
  kernels::mixture_eval({mx.data(), my.data(), var.data(), cre.data(), cim.data(), k}, x, y, n, out);
  for (std::size_t i = 0; i < n; ++i) {
    ux[i] = cplx(out.gx_re[i], out.gx_im[i]);
    uy[i] = cplx(out.gy_re[i], out.gy_im[i]);
    if (val) val[i] = cplx(out.val_re[i], out.val_im[i]);
  }
}

HeatSurface HeatSurface::operator+(const HeatSurface& o) const {
  if (kind_ == Kind::mixture && o.kind_ == Kind::mixture) {
    auto b = bumps_;
    b.insert(b.end(), o.bumps_.begin(), o.bumps_.end());
    return mixture(std::move(b));
  }
  if (kind_ == Kind::affine && o.kind_ == Kind::affine) return affine(c0_ + o.c0_, cx_ + o.cx_, cy_ + o.cy_);
  const HeatSurface a = *this, b = o;
  return generic([a, b](double x, double y) { return a.f(x, y) + b.f(x, y); }, std::max(nodes_, o.nodes_));
}

HeatSurface HeatSurface::scaled(cplx c) const {
  HeatSurface h = *this;
  h.c0_ *= c;
  h.cx_ *= c;
  h.cy_ *= c;
  for (auto& b : h.bumps_) b.c *= c;
  if (kind_ == Kind::generic) {
    auto fn = fn_;
    h.fn_ = [fn, c](double x, double y) { return c * fn(x, y); };
  }
  return h;
}

// ---------------------------------------------------------------- martingales

namespace {

enum class Transform { identity, ab, plain };

// Row coefficients (R1, R2) of dM = R1 dW1 + R2 dW2 given grad u.
inline void transform_rows(Transform t, cplx ux, cplx uy, cplx& r1, cplx& r2) {
  const cplx I(0.0, 1.0);
  switch (t) {
    case Transform::identity:
      r1 = ux;
      r2 = uy;
      break;
    case Transform::ab:  // A = [[1, i], [i, -1]]
      r1 = ux + I * uy;
      r2 = I * ux - uy;
      break;
    case Transform::plain:  // 2 diag(1, -1), subordinate to 2X but not conformal
      r1 = 2.0 * ux;
      r2 = -2.0 * uy;
      break;
  }
}

MartingalePath run_path(const HeatSurface& f, const BrownianDriver& driver, std::uint64_t path, Transform t) {
  if (driver.dimension() != 2) throw DomainError("planar martingales need a 2-dimensional driver");
  const auto& times = driver.times();
  const int steps = driver.steps();
  const double T = driver.horizon();
  const auto inc = driver.increments(path);
  MartingalePath m;
  m.times = times;
  m.values.resize(steps + 1);
  m.rows.resize(steps);
  m.wx.assign(steps + 1, 0.0);
  m.wy.assign(steps + 1, 0.0);
  m.values[0] = t == Transform::identity ? f.value(T, 0.0, 0.0) : cplx(0.0);
  for (int i = 0; i < steps; ++i) {
    const auto g = f.gradient(T - times[i], m.wx[i], m.wy[i]);
    cplx r1, r2;
    transform_rows(t, g.first, g.second, r1, r2);
    const double d1 = inc[2 * static_cast<std::size_t>(i)], d2 = inc[2 * static_cast<std::size_t>(i) + 1];
    m.values[i + 1] = m.values[i] + r1 * d1 + r2 * d2;
    m.rows[i] = Rows{{r1.real(), r2.real()}, {r1.imag(), r2.imag()}};
    m.wx[i + 1] = m.wx[i] + d1;
    m.wy[i + 1] = m.wy[i] + d2;
  }
  return m;
}

}  // namespace

MartingalePath heat_martingale(const HeatSurface& f, const BrownianDriver& driver, std::uint64_t path) {
  return run_path(f, driver, path, Transform::identity);
}

MartingalePath ab_star(const HeatSurface& f, const BrownianDriver& driver, std::uint64_t path) {
  return run_path(f, driver, path, Transform::ab);
}

ConformalityCheck conformality(const MartingalePath& x, const MartingalePath& y) {
  if (x.rows.size() != y.rows.size()) throw DomainError("paths have different lengths");
  ConformalityCheck c;
  c.max_subordination = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.rows.size(); ++i) {
    const Rows& K = y.rows[i];
    const Rows& H = x.rows[i];
    const double dot = K.r1[0] * K.r2[0] + K.r1[1] * K.r2[1];
    const double n1 = std::hypot(K.r1[0], K.r1[1]), n2 = std::hypot(K.r2[0], K.r2[1]);
    const double hk = n1 * n1 + n2 * n2;
    const double hh = H.r1[0] * H.r1[0] + H.r1[1] * H.r1[1] + H.r2[0] * H.r2[0] + H.r2[1] * H.r2[1];
    c.max_dot = std::max(c.max_dot, std::abs(dot));
    c.max_len_gap = std::max(c.max_len_gap, std::abs(n1 - n2));
    c.max_subordination = std::max(c.max_subordination, hk - 4.0 * hh);
  }
  return c;
}

TerminalGap terminal_gap_sweep(const HeatSurface& f, double T, int finest_steps, int levels, int paths,
                               std::uint64_t seed) {
  if (levels < 2) throw DomainError("terminal gap sweep needs >= 2 levels");
  if (finest_steps % (1 << (levels - 1)) != 0) throw DomainError("finest step count must be divisible by 2^(levels-1)");
  const BrownianDriver fine = BrownianDriver::uniform(2, T, finest_steps, seed);
  TerminalGap g;
  for (int lv = 0; lv < levels; ++lv) {
    const BrownianDriver d = fine.coarsened(1 << lv);
    std::vector<double> sq(paths);
    parallel_for(static_cast<std::size_t>(paths), [&](std::size_t p) {
      const auto m = heat_martingale(f, d, p);
      sq[p] = std::norm(m.values.back() - f.f(m.wx.back(), m.wy.back()));
    });
    double s = 0.0;
    for (double v : sq) s += v;
    g.dt.push_back(T / d.steps());
    g.rms.push_back(std::sqrt(s / paths));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = levels;
  for (int i = 0; i < levels; ++i) {
    const double lx = std::log(g.dt[i]), ly = std::log(g.rms[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  g.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return g;
}

// ---------------------------------------------------------------- AB by conditioning

AbConditioning ab_by_conditioning(const HeatSurface& f, const AbConditioningOptions& opt) {
  if (!(opt.T > 0.0) || opt.paths < 1 || opt.bins < 1 || !(opt.half_width > 0.0))
    throw DomainError("ab_by_conditioning needs T > 0, paths >= 1, bins >= 1, half_width > 0");
  const BrownianDriver drv = BrownianDriver::geometric(2, opt.T, opt.steps, opt.s_min, opt.seed);
  const auto& times = drv.times();
  const int steps = drv.steps();
  const int nb = opt.bins;
  const std::size_t nbins = static_cast<std::size_t>(nb) * nb;
  const double width = 2.0 * opt.half_width / nb;

  constexpr std::size_t kBlock = 512;
  constexpr std::size_t kGroup = 32;
  const std::size_t nblocks = (static_cast<std::size_t>(opt.paths) + kBlock - 1) / kBlock;

  // Per bin: sum Re Y, sum Im Y, sum (Re Y)^2, sum (Im Y)^2, count.
  struct Acc {
    std::vector<double> sr, si, qr, qi;
    std::vector<std::int64_t> n;
    void reset(std::size_t m) {
      sr.assign(m, 0.0);
      si.assign(m, 0.0);
      qr.assign(m, 0.0);
      qi.assign(m, 0.0);
      n.assign(m, 0);
    }
  };
  Acc total;
  total.reset(nbins);
  std::vector<Acc> part(kGroup);

  for (std::size_t g0 = 0; g0 < nblocks; g0 += kGroup) {
    const std::size_t gn = std::min(kGroup, nblocks - g0);
    parallel_for(gn, [&](std::size_t gi) {
      Acc& acc = part[gi];
      acc.reset(nbins);
      const std::size_t lo = (g0 + gi) * kBlock;
      const std::size_t hi = std::min<std::size_t>(opt.paths, lo + kBlock);
      const std::size_t m = hi - lo;
      std::vector<CounterRng> rng;
      rng.reserve(m);
      for (std::size_t p = lo; p < hi; ++p) rng.emplace_back(opt.seed, p);
      std::vector<double> x(m, 0.0), y(m, 0.0);
      std::vector<cplx> Y(m, 0.0), ux(m), uy(m);
      const cplx I(0.0, 1.0);
      for (int i = 0; i < steps; ++i) {
        const double s = opt.T - times[i];
        const double sd = std::sqrt(times[i + 1] - times[i]);
        f.gradient_batch(s, x.data(), y.data(), m, ux.data(), uy.data());
        for (std::size_t k = 0; k < m; ++k) {
          double z0, z1;
          rng[k].normal_pair(z0, z1);
          const double d1 = sd * z0, d2 = sd * z1;
          // dY = (u_x + i u_y)(dW1 + i dW2)
          Y[k] += (ux[k] + I * uy[k]) * cplx(d1, d2);
          x[k] += d1;
          y[k] += d2;
        }
      }
      for (std::size_t k = 0; k < m; ++k) {
        const double bx = (x[k] + opt.half_width) / width, by = (y[k] + opt.half_width) / width;
        if (!(bx >= 0.0 && by >= 0.0 && bx < nb && by < nb)) continue;
        const std::size_t b = static_cast<std::size_t>(by) * nb + static_cast<std::size_t>(bx);
        acc.sr[b] += Y[k].real();
        acc.si[b] += Y[k].imag();
        acc.qr[b] += Y[k].real() * Y[k].real();
        acc.qi[b] += Y[k].imag() * Y[k].imag();
        acc.n[b] += 1;
      }
    });
    for (std::size_t gi = 0; gi < gn; ++gi)
      for (std::size_t b = 0; b < nbins; ++b) {
        total.sr[b] += part[gi].sr[b];
        total.si[b] += part[gi].si[b];
        total.qr[b] += part[gi].qr[b];
        total.qi[b] += part[gi].qi[b];
        total.n[b] += part[gi].n[b];
      }
  }

  AbConditioning out;
  out.bins = nb;
  out.half_width = opt.half_width;
  out.estimate.assign(nbins, 0.0);
  out.sd_re.assign(nbins, 0.0);
  out.sd_im.assign(nbins, 0.0);
  out.count = total.n;
  out.populated.assign(nbins, false);
  const double P = static_cast<double>(opt.paths);
  const double c = 2.0 * kPi * opt.T / (P * width * width);
  for (std::size_t b = 0; b < nbins; ++b) {
    if (total.n[b] < opt.min_count) continue;
    out.populated[b] = true;
    out.estimate[b] = c * cplx(total.sr[b], total.si[b]);
    // Variance of the sum of Y 1_bin over P independent paths.
    const double vr = std::max(0.0, total.qr[b] - total.sr[b] * total.sr[b] / P);
    const double vi = std::max(0.0, total.qi[b] - total.si[b] * total.si[b] / P);
    out.sd_re[b] = c * std::sqrt(vr);
    out.sd_im[b] = c * std::sqrt(vi);
  }
  return out;
}

std::vector<cplx> ab_conditioning_oracle(const HeatSurface& f, int bins, double half_width, int n, double L) {
  const double h = L / n;
  const double width = 2.0 * half_width / bins;
  const double per = width / h;
  const double off = (0.5 * L - half_width) / h;
  const int m = static_cast<int>(std::lround(per));
  const int o = static_cast<int>(std::lround(off));
  if (m < 1 || std::abs(per - m) > 1e-9 || std::abs(off - o) > 1e-9 || o < 0)
    throw DomainError("oracle grid does not align with the bins");
  const auto field = planar::GridField::from_function(n, L, [&](double x, double y) { return f.f(x, y); });
  const auto t = planar::apply_multiplier(planar::ab_conj_symbol(), field);
  std::vector<cplx> out(static_cast<std::size_t>(bins) * bins);
  for (int bj = 0; bj < bins; ++bj)
    for (int bi = 0; bi < bins; ++bi) {
      // Trapezoidal average over the (m+1)^2 grid points of the bin.
      cplx s = 0.0;
      double wsum = 0.0;
      for (int dj = 0; dj <= m; ++dj)
        for (int di = 0; di <= m; ++di) {
          const double w = (di == 0 || di == m ? 0.5 : 1.0) * (dj == 0 || dj == m ? 0.5 : 1.0);
          s += w * t((o + bi * m + di) % n, (o + bj * m + dj) % n);
          wsum += w;
        }
      out[static_cast<std::size_t>(bj) * bins + bi] = s / wsum;
    }
  return out;
}

OracleAgreement compare_with_oracle(const AbConditioning& est, const std::vector<cplx>& oracle, double nsigma,
                                    double disc_tol) {
  if (oracle.size() != est.estimate.size()) throw DomainError("oracle and estimate sizes differ");
  OracleAgreement a;
  for (std::size_t b = 0; b < oracle.size(); ++b) {
    if (!est.populated[b]) continue;
    ++a.populated;
    const double dr = std::abs(est.estimate[b].real() - oracle[b].real());
    const double di = std::abs(est.estimate[b].imag() - oracle[b].imag());
    const bool ok = dr <= nsigma * est.sd_re[b] + disc_tol && di <= nsigma * est.sd_im[b] + disc_tol;
    if (ok) ++a.within;
    const double zr = est.sd_re[b] > 0 ? dr / est.sd_re[b] : (dr > 0 ? INFINITY : 0.0);
    const double zi = est.sd_im[b] > 0 ? di / est.sd_im[b] : (di > 0 ? INFINITY : 0.0);
    a.max_z = std::max({a.max_z, zr, zi});
  }
  a.fraction = a.populated ? static_cast<double>(a.within) / a.populated : 0.0;
  return a;
}

// ---------------------------------------------------------------- constants

namespace {

HeatSurface random_mixture(std::uint64_t seed, int which) {
  CounterRng rng(seed, 0x5EED0000ULL + static_cast<std::uint64_t>(which));
  const int k = 1 + static_cast<int>(rng.next_u64() % 3);
  std::vector<HeatSurface::Bump> b;
  for (int j = 0; j < k; ++j) {
    HeatSurface::Bump bp;
    bp.mx = rng.uniform(-1.0, 1.0);
    bp.my = rng.uniform(-1.0, 1.0);
    bp.var = rng.uniform(0.05, 0.5);
    bp.c = cplx(rng.normal(), rng.normal());
    b.push_back(bp);
  }
  return HeatSurface::mixture(std::move(b));
}

struct RatioCI {
  double r, lo, hi;
};

RatioCI ratio_ci(const MeanCI& num, const MeanCI& den, double p) {
  const double tiny = 1e-300;
  RatioCI r;
  r.r = std::pow(num.mean / std::max(den.mean, tiny), 1.0 / p);
  r.lo = std::pow(std::max(num.lo, 0.0) / std::max(den.hi, tiny), 1.0 / p);
  r.hi = std::pow(std::max(num.hi, 0.0) / std::max(den.lo, tiny), 1.0 / p);
  return r;
}

}  // namespace

SubordinationRatios subordination_constants_mc(double p, int trials, std::uint64_t seed, double T, int steps,
                                               int functions) {
  if (!(p > 1.0)) throw DomainError("subordination_constants_mc needs p > 1");
  if (trials < 2 || functions < 1) throw DomainError("need trials >= 2 and functions >= 1");
  SubordinationRatios out;
  out.p = p;
  out.seed = seed;
  out.functions = functions;
  out.bound_plain = pstar(p) - 1.0;
  out.bound_conformal = std::sqrt(p * (p - 1.0) / 2.0);
  out.ratio_plain = out.ratio_conformal = -1.0;
  for (int fi = 0; fi < functions; ++fi) {
    const HeatSurface f = random_mixture(seed, fi);
    const BrownianDriver d = BrownianDriver::uniform(2, T, steps, seed + 0x9E37ULL * (fi + 1));
    std::vector<double> ex(trials), ey(trials), ep(trials);
    const cplx x0 = f.value(T, 0.0, 0.0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
      const auto inc = d.increments(k);
      const auto& times = d.times();
      double wx = 0.0, wy = 0.0;
      cplx X = x0, Y = 0.0, Yp = 0.0;
      for (int i = 0; i < steps; ++i) {
        const auto g = f.gradient(T - times[i], wx, wy);
        const double d1 = inc[2 * static_cast<std::size_t>(i)], d2 = inc[2 * static_cast<std::size_t>(i) + 1];
        cplx r1, r2;
        X += g.first * d1 + g.second * d2;
        transform_rows(Transform::ab, g.first, g.second, r1, r2);
        Y += r1 * d1 + r2 * d2;
        transform_rows(Transform::plain, g.first, g.second, r1, r2);
        Yp += r1 * d1 + r2 * d2;
        wx += d1;
        wy += d2;
      }
      ex[k] = std::pow(std::abs(2.0 * X), p);
      ey[k] = std::pow(std::abs(Y), p);
      ep[k] = std::pow(std::abs(Yp), p);
    });
    const MeanCI mx = mean_ci(ex), my = mean_ci(ey), mp = mean_ci(ep);
    const RatioCI rc = ratio_ci(my, mx, p), rp = ratio_ci(mp, mx, p);
    if (rc.r > out.ratio_conformal) {
      out.ratio_conformal = rc.r;
      out.ratio_conformal_lo = rc.lo;
      out.ratio_conformal_hi = rc.hi;
    }
    if (rp.r > out.ratio_plain) {
      out.ratio_plain = rp.r;
      out.ratio_plain_lo = rp.lo;
      out.ratio_plain_hi = rp.hi;
    }
  }
  return out;
}

}  // namespace bflab::stoch
