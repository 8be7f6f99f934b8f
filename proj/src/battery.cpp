#include "bflab/battery.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bflab/bellman.hpp"
#include "bflab/config.hpp"
#include "bflab/dyadic.hpp"
#include "bflab/laminate.hpp"
#include "bflab/parallel.hpp"
#include "bflab/planar.hpp"
#include "bflab/qc_maps.hpp"
#include "bflab/rng.hpp"
#include "bflab/stochastic.hpp"

namespace bflab::battery {

using report::RunReport;
namespace rp = bflab::report;

Scale parse_scale(const std::string& s) {
  if (s == "fast") return Scale::fast;
  if (s == "full") return Scale::full;
  throw ConfigError("suite name must be 'fast' or 'full', got '" + s + "'");
}

const char* scale_name(Scale s) { return s == Scale::fast ? "fast" : "full"; }

namespace {

std::string tag(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

bool full(Scale s) { return s == Scale::full; }

// Intensity bound for the mu_I sequence at alpha = 1/4 from the Hessian
// estimate of b_Q: B <= Q^alpha / c with c = alpha (1 - 2 alpha) 4^{-alpha} (3/8) / 9.
constexpr double kCarlesonEnvelope = 271.5;

// ---------------------------------------------------------------- 1 laminate limit

RunReport c1_laminate(Scale, std::uint64_t) {
  RunReport r;
  const double p = 3.0;
  const std::vector<double> etas = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> dist;
  double last_root = 0.0, worst_quad = 0.0;
  for (double eta : etas) {
    const auto res = laminate::ratio_tied(p, eta);
    const double root = std::cbrt(res.direct);
    dist.push_back(std::abs(root - (p - 1.0)));
    last_root = root;
    worst_quad = std::max(worst_quad, std::abs(res.quadrature - res.direct) / res.direct);
    r.add(rp::info("laminate-ratio-limit", "c1.root_eta_" + tag("%g", eta), root));
  }
  r.add(rp::near("laminate-ratio-limit", "c1.root_at_eta_1e-4", last_root, p - 1.0, 5e-3));
  bool mono = true;
  for (std::size_t i = 1; i < dist.size(); ++i) mono = mono && dist[i] < dist[i - 1];
  r.add(rp::holds("laminate-ratio-limit", "c1.sweep_monotone_toward_limit", mono, dist.back()));
  r.add(rp::at_most("laminate-ratio-limit", "c1.quadrature_vs_closed_form", worst_quad, 1e-6));
  return r;
}

// ---------------------------------------------------------------- 2 tau and interpolation

RunReport c2_tau(Scale s, std::uint64_t) {
  RunReport r;
  double worst = 0.0;
  for (double p = 1.0; p <= 50.0 + 1e-12; p += 0.25) {
    const double a = bellman::tau(p), b = bellman::tau_closed_form(p);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  r.add(rp::at_most("tau", "c2.tau_quadrature_vs_gamma", worst, 1e-10));
  const int npts = full(s) ? 120 : 30;
  double sup = 0.0, arg = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double q = 2.1 * std::pow(50.0 / 2.1, static_cast<double>(i) / (npts - 1));
    const double v = bellman::interpolation_constant(q) / (q - 1.0);
    if (v > sup) {
      sup = v;
      arg = q;
    }
  }
  r.add(rp::at_most("interpolation-chain", "c2.sup_C(q)/(q-1)", sup, 1.7));
  r.add(rp::info("interpolation-chain", "c2.argsup_q", arg));
  return r;
}

// ---------------------------------------------------------------- 3 zigzag and Hessians

RunReport c3_zigzag(Scale s, std::uint64_t seed) {
  RunReport r;
  const std::size_t samples = full(s) ? 100000 : 10000;
  for (double p : {2.0, 2.5, 3.0, 5.0, 8.0}) {
    for (auto v : {bellman::Variant::phi, bellman::Variant::phi0}) {
      double worst = std::numeric_limits<double>::infinity();
      for (double box : {5.0, 10.0}) {
        const auto z = bellman::zigzag_check(bellman::phi_candidate(p, v), samples, 0.5, box, seed);
        worst = std::min(worst, z.worst_margin);
      }
      r.add(rp::at_least("zigzag", std::string("c3.zigzag_") + bellman::variant_name(v) + "_p" + tag("%g", p),
                         worst, -1e-9));
      const auto m = bellman::majorant_check(v, p, samples, 10.0, seed + 7);
      r.add(rp::at_least("majorant", std::string("c3.majorant_") + bellman::variant_name(v) + "_p" + tag("%g", p),
                         m.worst_gap, -1e-9));
    }
  }
  // Hessian form: observed FD order at random points, p >= 2 and 1 < p < 2.
  CounterRng rng(seed, 0xC3);
  double worst_order = 1e9, worst_zz = -1e9;
  for (double p : {1.5, 2.5, 3.0, 5.0}) {
    for (int k = 0; k < 20; ++k) {
      std::array<double, 2> x{rng.uniform(0.3, 2.0), rng.uniform(-2.0, 2.0)};
      std::array<double, 2> y{rng.uniform(-2.0, 2.0), rng.uniform(0.3, 2.0)};
      std::array<double, 2> dx{rng.normal(), rng.normal()}, dy{rng.normal(), rng.normal()};
      const double e1 = std::abs(bellman::hessian_form_identity(x, y, dx, dy, p, 4e-2).numeric -
                                 bellman::hessian_form_identity(x, y, dx, dy, p, 4e-2).analytic);
      const auto h2 = bellman::hessian_form_identity(x, y, dx, dy, p, 2e-2);
      const double e2 = std::abs(h2.numeric - h2.analytic);
      if (e2 > 1e-12 * (1.0 + std::abs(h2.analytic)) * 1e3) worst_order = std::min(worst_order, std::log2(e1 / e2));
      // |dx| = |dy|: the form is nonpositive.
      if (p >= 2.0) {
        const double nx = std::hypot(dx[0], dx[1]), ny = std::hypot(dy[0], dy[1]);
        std::array<double, 2> dyn{dy[0] * nx / ny, dy[1] * nx / ny};
        const auto hz = bellman::hessian_form_identity(x, y, dx, dyn, p, 1e-4);
        worst_zz = std::max(worst_zz, hz.analytic / (1.0 + std::abs(hz.numeric)));
      }
    }
  }
  r.add(rp::at_least("hessian-form", "c3.hessian_fd_observed_order", worst_order, 1.8));
  r.add(rp::at_most("hessian-form", "c3.hessian_form_on_|dx|=|dy|", worst_zz, 1e-12));
  for (double p : {2.5, 3.0, 4.0})
    r.add(rp::at_most("h-section", "c3.h_section_p" + tag("%g", p), bellman::h_section_inequality(p, 10000), 1e-10));
  const auto bq = bellman::bq_hessian_check(8.0, 0.25, samples, seed);
  r.add(rp::at_least("bq-hessian", "c3.bq_hessian_margin", bq.worst_margin, -1e-12));
  r.add(rp::at_least("bq-hessian", "c3.bq_range", bq.worst_range, -1e-12));
  return r;
}

// ---------------------------------------------------------------- 4 majorant transition

RunReport c4_transition(Scale, std::uint64_t) {
  RunReport r;
  for (double p : {2.5, 3.0, 4.0}) {
    const double c = bellman::feasibility_transition(p);
    r.add(rp::near("majorant-transition", "c4.transition_p" + tag("%g", p), c, pstar(p) - 1.0, 1e-3));
  }
  return r;
}

// ---------------------------------------------------------------- 5 spectral identities

RunReport c5_spectral(Scale s, std::uint64_t seed) {
  RunReport r;
  const int n = full(s) ? 512 : 128;
  CounterRng rng(seed, 0xC5);
  planar::GridField f(n, 1.0);
  for (auto& v : f.data()) v = cplx(rng.normal(), rng.normal());
  const cplx m = f.mean();
  for (auto& v : f.data()) v -= m;
  const auto tf = planar::ab_transform(f);
  r.add(rp::at_most("ab-isometry", "c5.ab_l2_isometry", std::abs(tf.l2_norm() - f.l2_norm()) / f.l2_norm(), 1e-12));
  // Three-term decomposition.
  auto dec = planar::riesz_sq(1, f) - planar::riesz_sq(2, f);
  auto mix = planar::riesz_mixed(f);
  mix *= cplx(0.0, -2.0);
  dec += mix;
  r.add(rp::at_most("ab-decomposition", "c5.ab_riesz_decomposition", (tf - dec).max_abs() / f.max_abs(), 1e-12));
  // T u_zbar = u_z on a smooth bump.
  const double L = 20.0;
  const auto u = planar::GridField::from_function(n, L, [](double x, double y) {
    return cplx(std::exp(-0.5 * (x * x + 2.0 * y * y)), 0.3 * std::exp(-((x - 1.0) * (x - 1.0) + y * y)));
  });
  const auto lhs = planar::ab_transform(planar::dzbar(u)), rhs = planar::dz(u);
  r.add(rp::at_most("ab-derivative", "c5.T_dbar_equals_d", (lhs - rhs).max_abs() / rhs.max_abs(), 1e-6));
  // Space-time identity under (N, nt) refinement, fixed tmax.
  const int levels[3][2] = {{128, 17}, {256, 33}, {512, 65}};
  std::vector<double> gaps;
  for (const auto& lv : levels) {
    if (!full(s) && lv[0] > 256) break;
    auto phi = planar::GridField::from_function(lv[0], L, [](double x, double y) { return cplx(std::exp(-(x * x + y * y))); });
    auto psi = planar::GridField::from_function(
        lv[0], L, [](double x, double y) { return cplx(std::exp(-1.5 * ((x - 0.5) * (x - 0.5) + y * y))); });
    const auto id = planar::identity_1_13_check(phi, psi, 10.0, lv[1]);
    gaps.push_back(id.gap);
    r.add(rp::info("riesz-heat-identity", "c5.identity_gap_N" + std::to_string(lv[0]), id.gap));
    if (lv[0] == 256) r.add(rp::at_most("riesz-heat-identity", "c5.identity_gap_at_N256", id.gap, 1e-3));
  }
  bool dec_ok = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) dec_ok = dec_ok && gaps[i] < gaps[i - 1];
  r.add(rp::holds("riesz-heat-identity", "c5.identity_gap_decreasing", dec_ok, gaps.back()));
  return r;
}

// ---------------------------------------------------------------- 6 norm ascent

RunReport c6_ascent(Scale s, std::uint64_t seed) {
  RunReport r;
  const double p = 4.0;
  const int n = full(s) ? 256 : 64;
  const int iters = full(s) ? 500 : 80;
  const auto op = planar::r11_minus_r22_symbol();
  const auto res = planar::norm_ratio_ascent(op, p, n, iters, seed);
  r.add(rp::at_least("norm-ascent", "c6.achieved_ratio", res.ratio, 0.85 * (p - 1.0)));
  r.add(rp::info("norm-ascent", "c6.achieved_over_p-1", res.ratio / (p - 1.0), "start " + res.start));
  bool mono = true;
  for (std::size_t i = 1; i < res.history.size(); ++i) mono = mono && res.history[i] >= res.history[i - 1];
  r.add(rp::holds("norm-ascent", "c6.history_monotone", mono, static_cast<double>(res.history.size())));
  // The ratio is achieved by the returned witness.
  const double again = planar::norm_ratio(op, res.witness, p);
  r.add(rp::at_most("norm-ascent", "c6.witness_reproduces_ratio", std::abs(again - res.ratio) / res.ratio, 1e-12));
  r.add(rp::at_most("norm-ascent", "c6.witness_mean", std::abs(res.witness.mean()) / res.witness.max_abs(), 1e-12));
  r.add(rp::at_most("norm-ascent", "c6.ratio_below_symbol_bound_l2", planar::norm_ratio(op, res.witness, 2.0), 1.0 + 1e-12));
  return r;
}

// ---------------------------------------------------------------- 7 dyadic

RunReport c7_dyadic(Scale s, std::uint64_t seed) {
  RunReport r;
  CounterRng rng(seed, 0xC7);
  {
    const int depth = full(s) ? 14 : 10;
    std::vector<double> v(std::size_t{1} << depth);
    for (auto& x : v) x = rng.normal();
    const dyadic::DyadicFunction f(depth, v);
    const auto c = dyadic::haar_coefficients(f);
    double sc = 0.0, sf = 0.0;
    for (double x : c) sc += x * x;
    for (double x : v) sf += x * x;
    sf /= static_cast<double>(v.size());
    sc += f.integral() * f.integral();
    r.add(rp::at_most("haar-parseval", "c7.parseval", std::abs(sc - sf) / sf, 1e-12));
  }
  {
    const int depth = full(s) ? 8 : 6;
    std::vector<double> v(std::size_t{1} << depth);
    for (auto& x : v) x = std::exp(rng.normal());
    const dyadic::DyadicWeight w(depth, v);
    std::vector<std::vector<double>> hw;
    bool bounds = true;
    double recon = 0.0;
    for (int lv = 0; lv < depth; ++lv)
      for (std::int64_t k = 0; k < (std::int64_t{1} << lv); ++k) {
        const dyadic::DyadicInterval I{lv, k};
        const auto d = dyadic::weighted_haar(w, I);
        const double avg = w.average(I);
        const double delta = w.average(I.right_child()) - w.average(I.left_child());
        bounds = bounds && std::abs(d.alpha) <= std::sqrt(avg) && std::abs(d.beta) <= std::abs(delta) / avg;
        // h_I = alpha h^w + beta chi_I / sqrt|I|
        const std::size_t n = v.size();
        const double len = I.length();
        for (std::size_t i = 0; i < n; ++i) {
          const double x = (i + 0.5) / n;
          double h = 0.0, chi = 0.0;
          if (x >= I.left() && x < I.left() + len) {
            chi = 1.0;
            h = (x < I.left() + 0.5 * len ? -1.0 : 1.0) / std::sqrt(len);
          }
          recon = std::max(recon, std::abs(h - d.alpha * d.hw[i] - d.beta * chi / std::sqrt(len)));
        }
        hw.push_back(d.hw.values());
      }
    double gram = 0.0;
    for (std::size_t a = 0; a < hw.size(); ++a)
      for (std::size_t b = a; b < hw.size(); ++b) {
        double g = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) g += hw[a][i] * hw[b][i] * v[i];
        g /= static_cast<double>(v.size());
        gram = std::max(gram, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
    r.add(rp::holds("weighted-haar", "c7.decomposition_bounds", bounds));
    r.add(rp::at_most("weighted-haar", "c7.reconstruction", recon, 1e-12));
    r.add(rp::at_most("weighted-haar", "c7.gram_identity", gram, 1e-10));
  }
  {
    // Buckley sums of A_infinity power weights under depth refinement.
    const int dmax = full(s) ? 14 : 12;
    for (double a : {0.5, -0.5}) {
      std::vector<double> sums;
      for (int d = 8; d <= dmax; ++d) {
        std::vector<double> v(std::size_t{1} << d);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(std::abs((i + 0.5) / v.size() - 0.5), a);
        sums.push_back(dyadic::buckley_sum(dyadic::DyadicWeight(d, v), {0, 0}));
      }
      const double last = sums.back(), prev = sums[sums.size() - 2];
      r.add(rp::at_most("buckley", "c7.buckley_power" + tag("%g", a) + "_last_increment", std::abs(last - prev) / last,
                        1e-2));
      r.add(rp::info("buckley", "c7.buckley_power" + tag("%g", a), last));
    }
  }
  {
    // Carleson intensity of the mu_I sequence against Q^alpha across weight families.
    const double alpha = 0.25;
    const int depth = full(s) ? 12 : 10;
    double env = 0.0;
    std::vector<std::pair<double, double>> qb;
    auto probe = [&](const std::vector<double>& v) {
      const dyadic::DyadicWeight w(depth, v);
      const double Q = dyadic::a2_dyadic(w);
      const double B = dyadic::carleson_intensity(dyadic::caral_sequence(w, alpha));
      env = std::max(env, B / std::pow(Q, alpha));
      qb.push_back({Q, B});
    };
    const std::size_t n = std::size_t{1} << depth;
    for (double u : {1.5, 2.0, 4.0, 8.0, 16.0, 64.0}) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = i < n / 2 ? u : 1.0;
      probe(v);
    }
    bool mono = true;
    for (std::size_t i = 1; i < qb.size(); ++i) mono = mono && qb[i].first > qb[i - 1].first && qb[i].second >= qb[i - 1].second;
    r.add(rp::holds("carleson-intensity", "c7.carleson_monotone_in_Q_twovalue", mono));
    for (double a : {0.2, 0.4, 0.6, 0.8, -0.2, -0.4, -0.6, -0.8}) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(std::abs((i + 0.5) / n - 0.5), a);
      probe(v);
    }
    r.add(rp::at_most("carleson-intensity", "c7.carleson_over_Q^alpha_envelope", env, kCarlesonEnvelope));
    const dyadic::DyadicWeight one(depth, std::vector<double>(n, 1.0));
    r.add(rp::near("carleson-intensity", "c7.carleson_constant_weight", dyadic::carleson_intensity(dyadic::caral_sequence(one, alpha)), 0.0, 0.0));
  }
  {
    const int depth = 8;
    std::vector<double> v(std::size_t{1} << depth);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i < v.size() / 2 ? 2.0 : 1.0;
    const dyadic::DyadicWeight w(depth, v);
    const auto mt = dyadic::weighted_mt_ratio(w, full(s) ? 10000 : 1000, 2.0, seed);
    r.add(rp::at_most("weighted-mt", "c7.weighted_mt_ratio_over_Q", mt.ratio / mt.q, 2.0));
  }
  {
    // Sharp constant for martingale transforms at p = 4 on random data.
    const int depth = 10;
    double worst = 0.0;
    for (int t = 0; t < (full(s) ? 200 : 40); ++t) {
      std::vector<double> v(std::size_t{1} << depth);
      for (auto& x : v) x = rng.normal();
      const dyadic::DyadicFunction f(depth, v);
      std::vector<int> signs(v.size() - 1);
      for (auto& sg : signs) sg = (rng.next_u64() & 1) ? 1 : -1;
      const auto g = dyadic::martingale_transform(f, signs);
      worst = std::max(worst, g.lp_norm(4.0) / f.lp_norm(4.0));
    }
    r.add(rp::at_most("martingale-transform", "c7.mt_p4_ratio", worst, 3.0));
  }
  return r;
}

// ---------------------------------------------------------------- 8 stochastic

stoch::HeatSurface bump() { return stoch::HeatSurface::mixture({{0.0, 0.0, 0.25, cplx(1.0, 0.0)}}); }

RunReport c8_stochastic(Scale s, std::uint64_t seed) {
  RunReport r;
  {
    const auto g = stoch::riemann_gap_demo(0.0, 1.0, full(s) ? 1000 : 200, full(s) ? 100000 : 20000, seed);
    r.add(rp::holds("riemann-gap", "c8.gap_ci_contains_b-a", g.gap.contains(1.0), g.gap.mean));
    r.add(rp::holds("riemann-gap", "c8.sigma1_ci_contains_0", g.sigma1.contains(0.0), g.sigma1.mean));
    r.add(rp::holds("riemann-gap", "c8.sigma2_ci_contains_b-a", g.sigma2.contains(1.0), g.sigma2.mean));
    r.add(rp::at_most("riemann-gap", "c8.sigma1_sq_lower_ci_vs_b(b-a)", g.sigma1_sq.lo, g.bound));
  }
  {
    const auto d = stoch::BrownianDriver::uniform(1, 1.0, 200, seed + 1);
    const int paths = full(s) ? 20000 : 4000;
    const stoch::AdaptedProcess w_minus = [](const stoch::PastView& v) { return v.w(); };
    const stoch::AdaptedProcess sgn = [](const stoch::PastView& v) { return v.w() >= 0.0 ? 1.0 : -1.0; };
    const auto res = stoch::ito_integral({w_minus, sgn}, d, paths);
    std::vector<double> iso(paths), prod(paths);
    for (int k = 0; k < paths; ++k) {
      iso[k] = res.values[0][k] * res.values[0][k] - res.energy[0][k];
      prod[k] = res.values[0][k] * res.values[1][k] - res.energy[1][k];
    }
    const auto ci = stoch::mean_ci(iso), cp = stoch::mean_ci(prod), cm = stoch::mean_ci(res.values[0]);
    r.add(rp::holds("ito-isometry", "c8.ito_isometry_ci_contains_0", ci.contains(0.0), ci.mean));
    r.add(rp::holds("ito-isometry", "c8.ito_product_ci_contains_0", cp.contains(0.0), cp.mean));
    r.add(rp::holds("ito-isometry", "c8.ito_mean_ci_contains_0", cm.contains(0.0), cm.mean));
  }
  {
    const auto f = stoch::HeatSurface::mixture({{0.3, -0.2, 0.2, cplx(1.0, 0.5)}, {-0.5, 0.4, 0.4, cplx(-0.7, 0.2)}});
    const auto d = stoch::BrownianDriver::uniform(2, 1.0, 200, seed + 2);
    double dot = 0.0, len = 0.0, sub = -1e300;
    for (std::uint64_t k = 0; k < 200; ++k) {
      const auto c = stoch::conformality(stoch::heat_martingale(f, d, k), stoch::ab_star(f, d, k));
      dot = std::max(dot, c.max_dot);
      len = std::max(len, c.max_len_gap);
      sub = std::max(sub, c.max_subordination);
    }
    r.add(rp::at_most("ab-conformality", "c8.conformality_dot", dot, 1e-10));
    r.add(rp::at_most("ab-conformality", "c8.conformality_length", len, 1e-10));
    r.add(rp::at_most("ab-conformality", "c8.subordination_excess", sub, 1e-10));
    const auto tg = stoch::terminal_gap_sweep(bump(), 1.0, 256, 4, full(s) ? 2000 : 500, seed + 3);
    r.add(rp::at_least("heat-martingale", "c8.terminal_gap_strong_order", tg.order, 0.45));
  }
  {
    stoch::AbConditioningOptions o;
    o.seed = seed + 4;
    if (!full(s)) {
      o.paths = 200000;
      o.bins = 16;
      o.min_count = 50;
    }
    const auto est = stoch::ab_by_conditioning(bump(), o);
    const auto orc = stoch::ab_conditioning_oracle(bump(), o.bins, o.half_width);
    const auto agree = stoch::compare_with_oracle(est, orc, 3.0, 0.0);
    r.add(rp::at_least("ab-conditioning", "c8.ab_conditioning_fraction_within_3sigma", agree.fraction, 0.95));
    r.add(rp::info("ab-conditioning", "c8.ab_conditioning_populated_bins", agree.populated));
  }
  {
    const auto c = stoch::subordination_constants_mc(4.0, full(s) ? 10000 : 2000, seed + 5);
    r.add(rp::at_most("subordination-constants", "c8.conformal_ratio_lower_ci", c.ratio_conformal_lo, c.bound_conformal));
    r.add(rp::info("subordination-constants", "c8.conformal_ratio", c.ratio_conformal));
    r.add(rp::at_most("subordination-constants", "c8.plain_ratio_lower_ci", c.ratio_plain_lo, c.bound_plain));
    r.add(rp::info("subordination-constants", "c8.plain_ratio", c.ratio_plain));
  }
  return r;
}

// ---------------------------------------------------------------- 9 John-Nirenberg

RunReport c9_jn(Scale, std::uint64_t) {
  RunReport r;
  for (double delta : {0.1, 0.25}) {
    const auto j = bellman::jn_bellman_check(delta, 200);
    const std::string d = tag("%g", delta);
    r.add(rp::at_most("jn-bellman", "c9.rel_det_delta" + d, j.max_rel_det, 1e-5));
    r.add(rp::at_most("jn-bellman", "c9.max_eigenvalue_delta" + d, j.max_eigenvalue, 1e-6));
    r.add(rp::at_least("jn-bellman", "c9.obstacle_gap_delta" + d, j.min_obstacle_gap, -1e-12));
  }
  return r;
}

// ---------------------------------------------------------------- 10 quasiconformal

RunReport c10_qc(Scale s, std::uint64_t) {
  RunReport r;
  std::vector<double> radii;
  for (int j = 1; j <= 10; ++j) radii.push_back(std::ldexp(1.0, -j));
  for (double K : {1.5, 2.0, 3.0}) {
    const auto fit = qc::distortion_exponent(qc::make_map(K, qc::MapVariant::regular), radii);
    r.add(rp::near("qc-distortion", "c10.distortion_slope_K" + tag("%g", K), fit.slope, 1.0 / K, 1e-10));
    const auto sing = qc::make_map(K, qc::MapVariant::singular);
    r.add(rp::near("qc-sobolev", "c10.sobolev_threshold_K" + tag("%g", K), qc::sobolev_threshold_q(sing), 1.0 + sing.k(),
                   1e-3));
  }
  const double K = 2.0;
  const auto map = qc::make_map(K, qc::MapVariant::inverse);
  const double pmax = 1.0 + 1.0 / map.k();
  const int n = full(s) ? 256 : 128;
  std::vector<double> vals;
  for (double p : {2.0, 2.5, 3.0, 3.5, 3.9}) {
    const double v = planar::ap_class(qc::jacobian_weight(map, p, n));
    vals.push_back(v);
    r.add(rp::info("qc-jacobian-weight", "c10.weight_class_p" + tag("%g", p), v));
  }
  bool mono = true;
  for (std::size_t i = 1; i < vals.size(); ++i) mono = mono && vals[i] > vals[i - 1];
  r.add(rp::holds("qc-jacobian-weight", "c10.weight_class_monotone_to_" + tag("%g", pmax), mono, vals.back()));
  return r;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "laminate", "Laminate limit", 5.0, c1_laminate},
      {2, "bellman", "tau(p) and the 1.7 chain", 10.0, c2_tau},
      {3, "bellman", "Zigzag/Hessian suite", 60.0, c3_zigzag},
      {4, "bellman", "Majorant sharpness", 30.0, c4_transition},
      {5, "planar", "Spectral identities", 60.0, c5_spectral},
      {6, "planar", "Norm ascent", 300.0, c6_ascent},
      {7, "dyadic", "Dyadic suite", 60.0, c7_dyadic},
      {8, "stochastic", "Stochastic suite", 900.0, c8_stochastic},
      {9, "bellman", "John-Nirenberg Bellman", 10.0, c9_jn},
      {10, "qc", "Quasiconformal models", 60.0, c10_qc},
  };
  return c;
}

RunReport run_criterion(const Criterion& c, Scale scale, std::uint64_t seed) {
  RunReport r = c.run(scale, seed);
  r.command = "criterion " + std::to_string(c.id);
  r.seed = seed;
  return r;
}

RunReport suite(const SuiteOptions& opt) {
  const auto& cs = criteria();
  std::vector<RunReport> parts(cs.size());
  parallel_for(
      cs.size(),
      [&](std::size_t i) {
        const auto& c = cs[i];
        if (opt.skip.count(c.module) || opt.skip.count("c" + std::to_string(c.id))) {
          parts[i].add(rp::skipped("reproducibility", "c" + std::to_string(c.id) + ".skipped", "disabled by config"));
          return;
        }
        parts[i] = run_criterion(c, opt.scale, opt.seed);
      },
      opt.workers);
  RunReport out;
  out.command = std::string("suite ") + scale_name(opt.scale);
  out.seed = opt.seed;
  for (const auto& p : parts) out.append(p);
  return out;
}

RunReport reproducibility(const SuiteOptions& opt, const RunReport& first) {
  RunReport out;
  const RunReport again = suite(opt);
  SuiteOptions other = opt;
  other.seed = opt.seed + 1;
  const RunReport second = suite(other);
  out.add(rp::holds("reproducibility", "c11.same_seed_bit_identical", rp::to_json(first) == rp::to_json(again)));
  bool same = first.entries.size() == second.entries.size();
  int diffs = 0;
  for (std::size_t i = 0; same && i < first.entries.size(); ++i) {
    if (first.entries[i].name != second.entries[i].name) {
      same = false;
      break;
    }
    if (first.entries[i].status != second.entries[i].status) ++diffs;
  }
  out.add(rp::holds("reproducibility", "c11.two_seeds_same_pattern", same && diffs == 0, diffs));
  out.command = "criterion 11";
  out.seed = opt.seed;
  return out;
}

}  // namespace bflab::battery
