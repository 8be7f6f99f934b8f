#pragma once

// Monte-Carlo Ito calculus for planar Brownian motion. Heat convention here is
// d/dt - Delta/2: W_t has variance t per axis and u^f(t, x) = E f(x + W_t).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bflab/common.hpp"
#include "bflab/planar.hpp"

namespace bflab::stoch {

// planar_ops heat time t corresponds to stochastic time t / 2.
inline constexpr double kPlanarToStochTime = 0.5;

struct MeanCI {
  double mean = 0.0;
  double stderr_ = 0.0;
  double lo = 0.0;  // mean - 3 stderr
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
};
MeanCI mean_ci(const std::vector<double>& samples, double nsigma = 3.0);

class BrownianDriver {
 public:
  // Uniform grid t_i = i T / steps.
  static BrownianDriver uniform(int d, double T, int steps, std::uint64_t seed);
  // Grid with T - t_i geometric from T down to s_min, then a final step to T.
  static BrownianDriver geometric(int d, double T, int steps, double s_min, std::uint64_t seed);

  int dimension() const { return d_; }
  double horizon() const { return times_.back(); }
  int steps() const { return static_cast<int>(times_.size()) - 1; }
  const std::vector<double>& times() const { return times_; }
  std::uint64_t seed() const { return seed_; }

  // Increments of path `index`, laid out step-major: inc[i * d + k].
  std::vector<double> increments(std::uint64_t index) const;
  // Same Brownian paths observed on every factor-th grid point. Uniform grids only.
  BrownianDriver coarsened(int factor) const;

 private:
  int d_ = 1;
  std::vector<double> times_;       // observed grid
  std::vector<double> fine_times_;  // grid the normals are drawn on
  int agg_ = 1;
  std::uint64_t seed_ = 0;
};

// Read access to a 1-D path up to the current step. Asking for a later value
// is an adaptedness violation.
class PastView {
 public:
  PastView(const std::vector<double>& w, const std::vector<double>& times, int now)
      : w_(w), times_(times), now_(now) {}
  int step() const { return now_; }
  double time() const { return times_[now_]; }
  double time(int j) const;
  double w(int j) const;
  double w() const { return w_[now_]; }

 private:
  const std::vector<double>& w_;
  const std::vector<double>& times_;
  int now_;
};

struct RiemannGap {
  MeanCI sigma1, sigma2, gap, sigma1_sq;
  double sigma1_sq_exact = 0.0;  // sum t_{i-1} dt
  double bound = 0.0;            // b (b - a)
  std::uint64_t seed = 0;
};
RiemannGap riemann_gap_demo(double a, double b, int steps, int paths, std::uint64_t seed);

using AdaptedProcess = std::function<double(const PastView&)>;

struct ItoResult {
  // values[k][path] = sum f_k(t_i) dw_i.
  std::vector<std::vector<double>> values;
  // energy[k * K + l][path] = sum f_k f_l dt.
  std::vector<std::vector<double>> energy;
};
// Uses the driver's first coordinate; path starts at w(0) = 0 on the driver grid.
ItoResult ito_integral(const std::vector<AdaptedProcess>& fs, const BrownianDriver& driver,
                       int paths);

// Complex function of the plane with its heat extension and gradient.
class HeatSurface {
 public:
  struct Bump {
    double mx, my, var;
    cplx c;
  };
  // c0 + cx x + cy y.
  static HeatSurface affine(cplx c0, cplx cx, cplx cy);
  // sum c_k exp(-|x - m_k|^2 / (2 var_k)); extension in closed form.
  static HeatSurface mixture(std::vector<Bump> bumps);
  // Generic f, extension by tensor Gauss-Hermite with `nodes` per axis.
  static HeatSurface generic(std::function<cplx(double, double)> f, int nodes = 32);

  cplx f(double x, double y) const { return value(0.0, x, y); }
  cplx value(double s, double x, double y) const;
  // (u_x, u_y) at heat time s.
  std::pair<cplx, cplx> gradient(double s, double x, double y) const;
  // Batched version for mixtures and affine functions; generic falls back to a loop.
  void gradient_batch(double s, const double* x, const double* y, std::size_t n, cplx* ux,
                      cplx* uy, cplx* val = nullptr) const;

  bool is_mixture() const { return kind_ == Kind::mixture; }
  const std::vector<Bump>& bumps() const { return bumps_; }
  HeatSurface operator+(const HeatSurface& o) const;
  HeatSurface scaled(cplx a) const;

 private:
  enum class Kind { affine, mixture, generic };
  Kind kind_ = Kind::affine;
  cplx c0_ = 0.0, cx_ = 0.0, cy_ = 0.0;
  std::vector<Bump> bumps_;
  std::function<cplx(double, double)> fn_;
  int nodes_ = 32;
};

// Rows of dM = R1 dW1 + R2 dW2 for a complex M viewed as a vector in R^2:
// row1 = (Re R1, Re R2), row2 = (Im R1, Im R2).
struct Rows {
  double r1[2];
  double r2[2];
};

struct MartingalePath {
  std::vector<double> times;
  std::vector<cplx> values;
  std::vector<Rows> rows;  // one per step
  std::vector<double> wx, wy;
};

MartingalePath heat_martingale(const HeatSurface& f, const BrownianDriver& driver,
                               std::uint64_t path);
// Y = sum dW . A grad u with A = [[1, i], [i, -1]].
MartingalePath ab_star(const HeatSurface& f, const BrownianDriver& driver, std::uint64_t path);

struct ConformalityCheck {
  double max_dot = 0.0;          // |K1 . K2|
  double max_len_gap = 0.0;      // | |K1| - |K2| |
  double max_subordination = 0.0;  // |K1|^2 + |K2|^2 - 4 (|H1|^2 + |H2|^2), positive is a violation
};
ConformalityCheck conformality(const MartingalePath& x, const MartingalePath& y);

struct TerminalGap {
  std::vector<double> dt;
  std::vector<double> rms;
  double order = 0.0;  // least-squares log-log slope
};
// Levels share Brownian paths: level j uses every 2^j-th point of the finest grid.
TerminalGap terminal_gap_sweep(const HeatSurface& f, double T, int finest_steps, int levels,
                               int paths, std::uint64_t seed);

struct AbConditioning {
  int bins = 0;
  double half_width = 0.0;
  std::vector<cplx> estimate;  // row-major, bin (i, j) -> j * bins + i
  std::vector<double> sd_re, sd_im;
  std::vector<std::int64_t> count;
  std::vector<bool> populated;
  double bin_center(int i) const { return -half_width + (i + 0.5) * 2.0 * half_width / bins; }
};
struct AbConditioningOptions {
  double T = 50.0;
  std::int64_t paths = 1000000;
  int bins = 32;
  double half_width = 3.0;
  int steps = 400;
  double s_min = 1e-4;
  std::int64_t min_count = 100;
  std::uint64_t seed = 1;
};
// Estimates E[Y_T | W_T = z] through 2 pi T * sum_{bin} Y / (paths * area).
AbConditioning ab_by_conditioning(const HeatSurface& f, const AbConditioningOptions& opt);

// Bin averages of the operator that the conditional expectation represents,
// computed spectrally (symbol (xi1 + i xi2)^2 / |xi|^2) on an N grid aligned with the bins.
std::vector<cplx> ab_conditioning_oracle(const HeatSurface& f, int bins, double half_width,
                                         int n = 512, double L = 24.0);

struct OracleAgreement {
  int populated = 0;
  int within = 0;
  double fraction = 0.0;
  double max_z = 0.0;  // largest standardized deviation
};
OracleAgreement compare_with_oracle(const AbConditioning& est, const std::vector<cplx>& oracle,
                                    double nsigma = 3.0, double disc_tol = 0.0);

struct SubordinationRatios {
  double p = 0.0;
  double ratio_plain = 0.0;      // (E|Y'|^p / E|2X|^p)^{1/p}, Y' non-conformal
  double ratio_plain_lo = 0.0;   // lower and upper 3-sigma ends
  double ratio_plain_hi = 0.0;
  double ratio_conformal = 0.0;  // same with Y = AB star
  double ratio_conformal_lo = 0.0;
  double ratio_conformal_hi = 0.0;
  double bound_plain = 0.0;      // p* - 1
  double bound_conformal = 0.0;  // sqrt(p (p - 1) / 2)
  int functions = 0;
  std::uint64_t seed = 0;
};
SubordinationRatios subordination_constants_mc(double p, int trials, std::uint64_t seed,
                                               double T = 1.0, int steps = 200,
                                               int functions = 6);

}  // namespace bflab::stoch
