#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bflab/common.hpp"

namespace bflab::planar {

// N x N samples on the torus [-L/2, L/2)^2, row-major (index j*N + i is the
// point x = -L/2 + i h, y = -L/2 + j h).
class GridField {
 public:
  GridField() = default;
  GridField(int n, double L);
  GridField(int n, double L, std::vector<cplx> values);
  static GridField from_function(int n, double L, const std::function<cplx(double, double)>& f);

  int n() const { return n_; }
  double L() const { return L_; }
  double h() const { return L_ / n_; }
  double x(int i) const { return -0.5 * L_ + i * h(); }
  std::size_t size() const { return v_.size(); }
  cplx& operator()(int i, int j) { return v_[static_cast<std::size_t>(j) * n_ + i]; }
  cplx operator()(int i, int j) const { return v_[static_cast<std::size_t>(j) * n_ + i]; }
  std::vector<cplx>& data() { return v_; }
  const std::vector<cplx>& data() const { return v_; }

  cplx mean() const;
  double l2_norm() const;           // (h^2 sum |f|^2)^(1/2)
  double lp_norm(double p) const;   // (h^2 sum |f|^p)^(1/p)
  // h^2 sum f conj(g)
  cplx inner(const GridField& g) const;
  double max_abs() const;
  // Largest |f| on the outermost ring of cells.
  double boundary_max() const;
  GridField& operator+=(const GridField& o);
  GridField& operator*=(cplx c);
  GridField operator-(const GridField& o) const;

 private:
  int n_ = 0;
  double L_ = 0.0;
  std::vector<cplx> v_;
};

// Forward transform e^{-i x.xi}; unnormalized (as FFTW).
std::vector<cplx> fft(const GridField& f);
GridField ifft(const std::vector<cplx>& spec, int n, double L);

// Angular frequency of index k on a grid of n points over length L.
double freq(int k, int n, double L);

struct SpectralMultiplier {
  std::string name;
  std::function<cplx(double, double)> symbol;  // (xi1, xi2) -> m, xi != 0
  cplx zero_value = 0.0;
  bool real_symbol = false;
  double bound = 1.0;
};

SpectralMultiplier ab_symbol();        // (xi1 - i xi2)^2 / |xi|^2: T(dbar u) = du
SpectralMultiplier ab_conj_symbol();   // (xi1 + i xi2)^2 / |xi|^2
SpectralMultiplier riesz_sq_symbol(int i);  // xi_i^2 / |xi|^2
SpectralMultiplier riesz_mixed_symbol();    // xi_1 xi_2 / |xi|^2
SpectralMultiplier r11_minus_r22_symbol();
SpectralMultiplier identity_symbol();
SpectralMultiplier negated(const SpectralMultiplier& m);

GridField apply_multiplier(const SpectralMultiplier& m, const GridField& f);
GridField ab_transform(const GridField& f);
GridField riesz_sq(int i, const GridField& f);
GridField riesz_mixed(const GridField& f);
GridField dz(const GridField& f);
GridField dzbar(const GridField& f);
GridField dx1(const GridField& f);

// Kernel (pi t)^{-1} exp(-|x|^2/t): multiplier exp(-t |xi|^2 / 4).
GridField heat_extension(const GridField& f, double t);
inline constexpr double kHeatVariancePerT = 0.5;  // per axis
// (R1^2 phi, psi) = kappa * int_0^inf int d1 phi(t) d1 psi(t) dx dt
inline constexpr double kIdentityConstant = 0.5;

struct Identity113 {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;      // |lhs - rhs| / |lhs|
  double tail = 0.0;     // part of the t-integral beyond tmax
  double t_min = 0.0;
  bool tail_warning = false;
};
Identity113 identity_1_13_check(const GridField& phi, const GridField& psi, double tmax, int nt);

struct PlanarWeight {
  GridField w;
  // Optional precomputed values of w^{-1/(p-1)} (cell averages for singular weights).
  std::optional<GridField> dual;
  double p = 2.0;
};
PlanarWeight make_weight(const GridField& w, double p);

struct DiscSpec {
  int stride = 1;                 // centers every `stride` grid points
  std::vector<double> radii;      // empty: dyadic from 2h to L/4
};
struct HeatSpec {
  int stride = 1;
  std::vector<double> times;      // empty: log-spaced from h^2 to (L/4)^2
};
double ap_class(const PlanarWeight& w, const DiscSpec& spec = {});
double ap_heat(const PlanarWeight& w, const HeatSpec& spec = {});

struct AscentResult {
  double ratio = 0.0;
  GridField witness;
  std::vector<double> history;  // best ratio after each iteration
  std::string start;            // which initial guess won
};
AscentResult norm_ratio_ascent(const SpectralMultiplier& op, double p, int n, int iters,
                               std::uint64_t seed, double L = 1.0, int starts = 3);
double norm_ratio(const SpectralMultiplier& op, const GridField& f, double p);

void write_field(const std::string& path, const GridField& f);
GridField read_field(const std::string& path);

}  // namespace bflab::planar
