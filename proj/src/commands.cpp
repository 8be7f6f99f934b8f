#include "bflab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "bflab/battery.hpp"
#include "bflab/bellman.hpp"
#include "bflab/dyadic.hpp"
#include "bflab/laminate.hpp"
#include "bflab/planar.hpp"
#include "bflab/qc_maps.hpp"
#include "bflab/stochastic.hpp"
#include "bflab/weight_spec.hpp"

namespace bflab::cli {

namespace rp = bflab::report;
using report::RunReport;

namespace {

using Row = std::vector<std::string>;
std::string num(double v) { return rp::num(v); }

int checked_int(const ExperimentConfig& c, const std::string& key, long long lo, long long hi) {
  const long long v = c.integer(key);
  if (v < lo || v > hi)
    throw ConfigError("field '" + key + "': must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

// ---------------------------------------------------------------- dyadic

RunReport dyadic_buckley(const ExperimentConfig& c) {
  RunReport r;
  const int depth = checked_int(c, "depth", 1, 20);
  const auto w = weights::dyadic_weight(c.str("weight"), depth);
  r.table.columns = {"quantity", "value", "depth", "params"};
  const double b = dyadic::buckley_sum(w, {0, 0});
  const double q = dyadic::a2_dyadic(w);
  const double ainf = dyadic::a_infinity_constant(w);
  r.table.rows.push_back({"buckley_sum", num(b), std::to_string(depth), c.str("weight")});
  r.table.rows.push_back({"a2_dyadic", num(q), std::to_string(depth), c.str("weight")});
  r.table.rows.push_back({"a_infinity", num(ainf), std::to_string(depth), c.str("weight")});
  r.add(rp::info("buckley", "buckley_sum", b));
  r.add(rp::info("a2-dyadic", "a2_dyadic", q));
  r.add(rp::at_most("a-infinity", "a_infinity_le_a2", ainf, q * (1.0 + 1e-12)));
  return r;
}

RunReport dyadic_mt_ratio(const ExperimentConfig& c) {
  RunReport r;
  const int depth = checked_int(c, "depth", 1, 20);
  const int trials = checked_int(c, "trials", 1, 100000000);
  const double p = c.real("p");
  if (!(p > 1.0)) throw ConfigError("field 'p': must exceed 1");
  const auto w = weights::dyadic_weight(c.str("weight"), depth);
  const auto m = dyadic::weighted_mt_ratio(w, trials, p, c.seed);
  r.table.columns = {"quantity", "value", "depth", "params"};
  r.table.rows.push_back({"mt_ratio", num(m.ratio), std::to_string(depth), c.str("weight")});
  r.table.rows.push_back({"a2_dyadic", num(m.q), std::to_string(depth), c.str("weight")});
  r.add(rp::info("weighted-mt", "mt_ratio", m.ratio));
  r.add(rp::info("weighted-mt", "mt_ratio_over_Q", m.ratio / m.q));
  return r;
}

// ---------------------------------------------------------------- bellman

RunReport bellman_zigzag(const ExperimentConfig& c) {
  RunReport r;
  const auto v = bellman::parse_variant(c.str("variant"));
  const double p = c.real("p");
  const auto samples = static_cast<std::size_t>(checked_int(c, "samples", 1, 1000000000));
  const auto z = bellman::zigzag_check(bellman::phi_candidate(p, v), samples, c.real("step"), c.real("box"), c.seed);
  r.add(rp::at_least("zigzag", "zigzag_margin", z.worst_margin, -1e-9));
  r.add(rp::info("zigzag", "witness_x", z.witness_point[0]));
  r.add(rp::info("zigzag", "witness_y", z.witness_point[1]));
  r.add(rp::info("zigzag", "witness_step", z.witness_step[0]));
  const auto m = bellman::majorant_check(v, p, samples, c.real("box"), c.seed);
  r.add(rp::at_least("majorant", "majorant_gap", m.worst_gap, -1e-9));
  return r;
}

RunReport bellman_tau(const ExperimentConfig& c) {
  RunReport r;
  const double p = c.real("p");
  if (!(p > 0.0)) throw ConfigError("field 'p': must be positive");
  const double t = bellman::tau(p), cf = bellman::tau_closed_form(p);
  r.add(rp::info("tau", "tau", t));
  r.add(rp::near("tau", "tau_closed_form", cf, t, 1e-10 * std::abs(t)));
  return r;
}

RunReport bellman_interp(const ExperimentConfig& c) {
  RunReport r;
  const double qmin = c.real("qmin"), qmax = c.real("qmax");
  const int pts = checked_int(c, "points", 2, 100000);
  if (!(qmin >= 2.0) || !(qmax > qmin)) throw ConfigError("field 'qmin'/'qmax': need 2 <= qmin < qmax");
  r.table.columns = {"q", "C(q)", "C(q)/(q-1)", "argmin_p"};
  double sup = 0.0;
  for (int i = 0; i < pts; ++i) {
    const double q = qmin * std::pow(qmax / qmin, static_cast<double>(i) / (pts - 1));
    double arg = 0.0;
    const double v = bellman::interpolation_constant(q, &arg);
    sup = std::max(sup, v / (q - 1.0));
    r.table.rows.push_back({num(q), num(v), num(v / (q - 1.0)), num(arg)});
  }
  r.add(rp::at_most("interpolation-chain", "sup_C(q)/(q-1)", sup, 1.7));
  return r;
}

RunReport bellman_jn(const ExperimentConfig& c) {
  RunReport r;
  const double delta = c.real("delta");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("field 'delta': must lie in (0, 1)");
  const auto j = bellman::jn_bellman_check(delta, checked_int(c, "grid", 4, 4000));
  r.add(rp::at_most("jn-bellman", "rel_det", j.max_rel_det, 1e-5));
  r.add(rp::at_most("jn-bellman", "max_eigenvalue", j.max_eigenvalue, 1e-6));
  r.add(rp::at_least("jn-bellman", "obstacle_gap", j.min_obstacle_gap, -1e-12));
  r.add(rp::info("jn-bellman", "analytic_vs_fd", j.max_analytic_err));
  r.add(rp::info("jn-bellman", "x2_max", j.x2_max, j.clipped ? "grid clipped below x2 = delta" : ""));
  return r;
}

RunReport bellman_feasibility(const ExperimentConfig& c) {
  RunReport r;
  const double p = c.real("p");
  if (!(p > 1.0)) throw ConfigError("field 'p': must exceed 1");
  const double t = bellman::feasibility_transition(p);
  r.add(rp::near("majorant-transition", "transition", t, pstar(p) - 1.0, 1e-3));
  return r;
}

// ---------------------------------------------------------------- planar

planar::SpectralMultiplier parse_op(const std::string& s) {
  if (s == "ab") return planar::ab_symbol();
  if (s == "r11-r22") return planar::r11_minus_r22_symbol();
  if (s == "r11") return planar::riesz_sq_symbol(1);
  if (s == "r12") return planar::riesz_mixed_symbol();
  throw ConfigError("field 'op': expected ab, r11-r22, r11 or r12, got '" + s + "'");
}

int pow2_field(const ExperimentConfig& c, const std::string& key) {
  const int n = checked_int(c, key, 4, 4096);
  if (n & (n - 1)) throw ConfigError("field '" + key + "': must be a power of 2");
  return n;
}

RunReport planar_ascent(const ExperimentConfig& c) {
  RunReport r;
  const auto op = parse_op(c.str("op"));
  const double p = c.real("p");
  if (!(p >= 2.0)) throw ConfigError("field 'p': must be >= 2");
  const auto res = planar::norm_ratio_ascent(op, p, pow2_field(c, "n"), checked_int(c, "iters", 0, 1000000), c.seed,
                                             1.0, checked_int(c, "starts", 1, 3));
  r.table.columns = {"iteration", "ratio"};
  for (std::size_t i = 0; i < res.history.size(); ++i) r.table.rows.push_back({std::to_string(i + 1), num(res.history[i])});
  r.add(rp::info("norm-ascent", "ratio", res.ratio, "start " + res.start));
  r.add(rp::info("norm-ascent", "ratio_over_p-1", res.ratio / (p - 1.0)));
  if (!c.str("witness").empty()) planar::write_field(c.str("witness"), res.witness);
  return r;
}

RunReport planar_identity(const ExperimentConfig& c) {
  RunReport r;
  const int n = pow2_field(c, "n");
  const double L = c.real("L");
  auto phi = planar::GridField::from_function(n, L, [](double x, double y) { return cplx(std::exp(-(x * x + y * y))); });
  auto psi = planar::GridField::from_function(
      n, L, [](double x, double y) { return cplx(std::exp(-1.5 * ((x - 0.5) * (x - 0.5) + y * y))); });
  const auto id = planar::identity_1_13_check(phi, psi, c.real("tmax"), checked_int(c, "nt", 3, 100001));
  r.add(rp::info("riesz-heat-identity", "lhs", id.lhs));
  r.add(rp::info("riesz-heat-identity", "rhs", id.rhs));
  r.add(rp::info("riesz-heat-identity", "tail", id.tail, id.tail_warning ? "tail carries over 10% of the integral" : ""));
  r.add(rp::at_most("riesz-heat-identity", "gap", id.gap, 1e-3));
  return r;
}

RunReport planar_ap(const ExperimentConfig& c) {
  RunReport r;
  const double p = c.real("p");
  if (!(p > 1.0)) throw ConfigError("field 'p': must exceed 1");
  const auto w = weights::planar_weight(c.str("weight"), p, pow2_field(c, "n"));
  const int stride = checked_int(c, "stride", 1, 4096);
  const std::string mode = c.str("mode");
  double v = 0.0;
  if (mode == "class")
    v = planar::ap_class(w, {stride, {}});
  else if (mode == "heat")
    v = planar::ap_heat(w, {stride, {}});
  else
    throw ConfigError("field 'mode': expected heat or class, got '" + mode + "'");
  r.add(rp::at_least(mode == "class" ? "ap-class" : "ap-heat", "characteristic", v, 1.0 - 1e-12));
  return r;
}

// ---------------------------------------------------------------- laminate

RunReport laminate_ratio(const ExperimentConfig& c) {
  RunReport r;
  const double p = c.real("p"), eta = c.real("eta");
  const auto res = laminate::ratio_tied(p, eta);
  const double root = std::pow(res.direct, 1.0 / p);
  r.table.columns = {"eta", "ratio", "ratio^(1/p)", "target"};
  r.table.rows.push_back({num(eta), num(res.direct), num(root), num((res.K + 1.0) / (res.K - 1.0))});
  r.add(rp::info("laminate-ratio-limit", "ratio", res.direct));
  r.add(rp::info("laminate-ratio-limit", "ratio_printed_form", res.printed));
  r.add(rp::at_most("laminate-ratio-limit", "quadrature_vs_closed_form", std::abs(res.quadrature - res.direct) / res.direct, 1e-6));
  return r;
}

RunReport laminate_sweep(const ExperimentConfig& c) {
  RunReport r;
  const double p = c.real("p");
  const auto etas = c.reals("etas");
  r.table.columns = {"eta", "ratio", "ratio^(1/p)", "target"};
  std::vector<double> dist;
  for (double eta : etas) {
    const auto res = laminate::ratio_tied(p, eta);
    const double root = std::pow(res.direct, 1.0 / p);
    dist.push_back(std::abs(root - (p - 1.0)));
    r.table.rows.push_back({num(eta), num(res.direct), num(root), num((res.K + 1.0) / (res.K - 1.0))});
  }
  bool mono = true;
  for (std::size_t i = 1; i < dist.size(); ++i) mono = mono && dist[i] < dist[i - 1];
  r.add(rp::holds("laminate-ratio-limit", "approaches_p-1", mono, dist.back()));
  return r;
}

RunReport laminate_check(const ExperimentConfig& c) {
  RunReport r;
  const double p = c.real("p"), eta = c.real("eta");
  const auto prm = laminate::s0_K_p_relations(p, eta);
  const std::string which = c.str("which");
  laminate::Laminate lam;
  if (which == "nu")
    lam = laminate::nu_K(prm.K, p, eta);
  else if (which == "mu")
    lam = laminate::mu(prm.K, p, eta);
  else if (which == "sigma")
    lam = laminate::sigma(prm.K, p, eta);
  else
    throw ConfigError("field 'which': expected nu, mu or sigma, got '" + which + "'");
  const auto bc = laminate::baricenter(lam);
  r.add(rp::info("laminate-measures", "mass", bc.mass));
  r.add(rp::info("laminate-measures", "baricenter_x", bc.x));
  r.add(rp::info("laminate-measures", "baricenter_y", bc.y));
  const auto ineq = laminate::laminate_inequality_check(lam, {bc.x, bc.y}, laminate::default_battery(c.seed), c.seed);
  r.add(rp::at_least("laminate-measures", "jensen_margin", ineq.worst_margin, -1e-9));
  return r;
}

// ---------------------------------------------------------------- stochastic

stoch::HeatSurface named_surface(const std::string& s) {
  if (s == "bump") return stoch::HeatSurface::mixture({{0.0, 0.0, 0.25, cplx(1.0, 0.0)}});
  if (s == "twobump")
    return stoch::HeatSurface::mixture({{0.5, 0.0, 0.2, cplx(1.0, 0.0)}, {-0.5, 0.3, 0.3, cplx(0.0, 1.0)}});
  if (s == "zero") return stoch::HeatSurface::mixture({});
  throw ConfigError("field 'f': expected bump, twobump or zero, got '" + s + "'");
}

void add_ci(RunReport& r, const char* key, const std::string& name, const stoch::MeanCI& ci) {
  r.add(rp::info(key, name + ".mean", ci.mean));
  r.add(rp::info(key, name + ".ci_lo", ci.lo));
  r.add(rp::info(key, name + ".ci_hi", ci.hi));
}

RunReport stoch_riemann(const ExperimentConfig& c) {
  RunReport r;
  const double a = c.real("a"), b = c.real("b");
  const auto g = stoch::riemann_gap_demo(a, b, checked_int(c, "steps", 1, 100000000),
                                         checked_int(c, "paths", 2, 1000000000), c.seed);
  add_ci(r, "riemann-gap", "sigma1", g.sigma1);
  add_ci(r, "riemann-gap", "sigma2", g.sigma2);
  add_ci(r, "riemann-gap", "sigma1_sq", g.sigma1_sq);
  r.add(rp::holds("riemann-gap", "gap_ci_contains_b-a", g.gap.contains(b - a), g.gap.mean));
  r.add(rp::holds("riemann-gap", "sigma1_ci_contains_0", g.sigma1.contains(0.0), g.sigma1.mean));
  r.add(rp::at_most("riemann-gap", "sigma1_sq_lower_ci_vs_b(b-a)", g.sigma1_sq.lo, g.bound));
  return r;
}

RunReport stoch_abmc(const ExperimentConfig& c) {
  RunReport r;
  stoch::AbConditioningOptions o;
  o.T = c.real("T");
  o.paths = c.integer("paths");
  o.bins = checked_int(c, "bins", 1, 4096);
  o.half_width = c.real("half-width");
  o.steps = checked_int(c, "steps", 2, 100000);
  o.min_count = c.integer("min-count");
  o.seed = c.seed;
  const auto f = named_surface(c.str("f"));
  const auto est = stoch::ab_by_conditioning(f, o);
  r.table.columns = {"x", "y", "count", "re", "im", "sd_re", "sd_im", "populated"};
  for (int j = 0; j < o.bins; ++j)
    for (int i = 0; i < o.bins; ++i) {
      const std::size_t b = static_cast<std::size_t>(j) * o.bins + i;
      r.table.rows.push_back({num(est.bin_center(i)), num(est.bin_center(j)), std::to_string(est.count[b]),
                              num(est.estimate[b].real()), num(est.estimate[b].imag()), num(est.sd_re[b]),
                              num(est.sd_im[b]), est.populated[b] ? "1" : "0"});
    }
  try {
    const auto orc = stoch::ab_conditioning_oracle(f, o.bins, o.half_width);
    const auto ag = stoch::compare_with_oracle(est, orc);
    r.add(rp::info("ab-conditioning", "populated_bins", ag.populated));
    r.add(rp::at_least("ab-conditioning", "fraction_within_3sigma", ag.fraction, 0.95));
  } catch (const DomainError& e) {
    r.add(rp::skipped("ab-conditioning", "fraction_within_3sigma", e.what()));
  }
  return r;
}

RunReport stoch_constants(const ExperimentConfig& c) {
  RunReport r;
  const double p = c.real("p");
  const auto s = stoch::subordination_constants_mc(p, checked_int(c, "trials", 2, 100000000), c.seed, c.real("T"));
  r.add(rp::info("subordination-constants", "ratio_plain", s.ratio_plain));
  r.add(rp::info("subordination-constants", "ratio_plain.ci_lo", s.ratio_plain_lo));
  r.add(rp::info("subordination-constants", "ratio_plain.ci_hi", s.ratio_plain_hi));
  r.add(rp::at_most("subordination-constants", "plain_lower_ci_vs_p*-1", s.ratio_plain_lo, s.bound_plain));
  r.add(rp::info("subordination-constants", "ratio_conformal", s.ratio_conformal));
  r.add(rp::info("subordination-constants", "ratio_conformal.ci_lo", s.ratio_conformal_lo));
  r.add(rp::info("subordination-constants", "ratio_conformal.ci_hi", s.ratio_conformal_hi));
  if (p >= 2.0)
    r.add(rp::at_most("subordination-constants", "conformal_lower_ci_vs_sqrt(p(p-1)/2)", s.ratio_conformal_lo,
                      s.bound_conformal));
  return r;
}

// ---------------------------------------------------------------- qc

RunReport qc_distortion(const ExperimentConfig& c) {
  RunReport r;
  const double K = c.real("K");
  std::vector<double> radii;
  for (int j = 1; j <= 10; ++j) radii.push_back(std::ldexp(1.0, -j));
  const auto fit = qc::distortion_exponent(qc::make_map(K, qc::MapVariant::regular), radii);
  r.table.columns = {"parameter", "value"};
  r.table.rows.push_back({"K", num(K)});
  r.table.rows.push_back({"slope", num(fit.slope)});
  r.table.rows.push_back({"residual", num(fit.residual)});
  r.add(rp::near("qc-distortion", "slope", fit.slope, 1.0 / K, 1e-10));
  return r;
}

RunReport qc_sobolev(const ExperimentConfig& c) {
  RunReport r;
  const auto f = qc::make_map(c.real("K"), qc::MapVariant::singular);
  const auto s = qc::sobolev_threshold(f, c.real("q"), c.real("eps-min"));
  r.table.columns = {"parameter", "value"};
  r.table.rows.push_back({"K", num(f.K)});
  r.table.rows.push_back({"q", c.str("q")});
  r.table.rows.push_back({"threshold_1+k", num(1.0 + f.k())});
  r.table.rows.push_back({"converges", s.converges ? "1" : "0"});
  r.table.rows.push_back({"rate", num(s.rate)});
  r.table.rows.push_back({"predicted_rate", num(s.predicted_rate)});
  r.add(rp::info("qc-sobolev", "rate", s.rate));
  r.add(rp::holds("qc-sobolev", "converges_iff_q<1+k", s.converges == (c.real("q") < 1.0 + f.k())));
  return r;
}

RunReport qc_weight(const ExperimentConfig& c) {
  RunReport r;
  const auto f = qc::make_map(c.real("K"), qc::MapVariant::inverse);
  const double p = c.real("p");
  const auto w = qc::jacobian_weight(f, p, pow2_field(c, "n"));
  const double v = planar::ap_class(w);
  r.table.columns = {"parameter", "value"};
  r.table.rows.push_back({"K", num(f.K)});
  r.table.rows.push_back({"p", num(p)});
  r.table.rows.push_back({"blowup_p", num(1.0 + 1.0 / f.k())});
  r.table.rows.push_back({"a2_class", num(v)});
  r.add(rp::at_least("qc-jacobian-weight", "a2_class", v, 1.0 - 1e-12));
  return r;
}

// ---------------------------------------------------------------- suite

RunReport suite_cmd(const ExperimentConfig& c) {
  battery::SuiteOptions o;
  o.scale = battery::parse_scale(c.str("scale"));
  o.seed = c.seed;
  o.workers = c.has("workers") && !c.str("workers").empty() ? checked_int(c, "workers", 1, 1024) : 0;
  std::stringstream ss(c.str("skip"));
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) o.skip.insert(item);
  RunReport r = battery::suite(o);
  if (c.flag("repro")) r.append(battery::reproducibility(o, r));
  return r;
}

std::vector<CommandSpec> build() {
  std::vector<CommandSpec> v;
  v.push_back({"dyadic", "buckley", "Buckley sum, A2 and A_infinity of a dyadic weight", "csv",
               {{"weight", "power:0.5", "weight spec"}, {"depth", "10", "tree depth"}}, dyadic_buckley});
  v.push_back({"dyadic", "mt-ratio", "weighted martingale transform ratio", "csv",
               {{"weight", "twovalue:2,1", "weight spec"}, {"trials", "1000", "random (f, sigma) pairs"},
                {"depth", "8", "tree depth"}, {"p", "2", "exponent"}},
               dyadic_mt_ratio});
  v.push_back({"bellman", "zigzag", "zigzag concavity and majorization margins", "json",
               {{"variant", "phi", "phi | phi0 | fp"}, {"p", "3", "exponent"}, {"samples", "100000", "sample count"},
                {"step", "0.5", "max step as a fraction of the box"}, {"box", "5", "half side of the sample box"}},
               bellman_zigzag});
  v.push_back({"bellman", "tau", "tau(p) by quadrature and closed form", "json", {{"p", "2", "exponent"}}, bellman_tau});
  v.push_back({"bellman", "interp-sweep", "interpolated constant C(q)/(q-1)", "json",
               {{"qmin", "2.1", "smallest q"}, {"qmax", "50", "largest q"}, {"points", "60", "log-spaced points"}},
               bellman_interp});
  v.push_back({"bellman", "jn", "John-Nirenberg Bellman function checks", "json",
               {{"delta", "0.25", "delta in (0,1)"}, {"grid", "200", "grid points per axis"}}, bellman_jn});
  v.push_back({"bellman", "feasibility", "transition point of the linear majorant family", "json",
               {{"p", "3", "exponent"}}, bellman_feasibility});
  v.push_back({"planar", "norm-ascent", "lower bound for an operator norm by ascent", "csv",
               {{"op", "r11-r22", "ab | r11-r22 | r11 | r12"}, {"p", "4", "exponent"}, {"n", "256", "grid size"},
                {"iters", "500", "iterations per start"}, {"starts", "3", "initial guesses"},
                {"witness", "", "write the maximizer to this field file"}},
               planar_ascent});
  v.push_back({"planar", "identity113", "(R1^2 phi, psi) against its heat-extension integral", "json",
               {{"n", "256", "grid size"}, {"tmax", "10", "end of the t quadrature"}, {"nt", "33", "t nodes"},
                {"L", "20", "box side"}},
               planar_identity});
  v.push_back({"planar", "ap", "planar A_p characteristic", "json",
               {{"weight", "power:0.5", "weight spec"}, {"p", "2", "exponent"}, {"mode", "class", "heat | class"},
                {"n", "128", "grid size"}, {"stride", "1", "center stride"}},
               planar_ap});
  v.push_back({"laminate", "ratio", "laminate ratio at one eta", "csv", {{"p", "3", "exponent"}, {"eta", "1e-3", "eta"}},
               laminate_ratio});
  v.push_back({"laminate", "sweep", "laminate ratio over several eta", "csv",
               {{"p", "3", "exponent"}, {"etas", "1e-1,1e-2,1e-3,1e-4", "comma separated"}}, laminate_sweep});
  v.push_back({"laminate", "check", "mass, baricenter and Jensen inequality of a laminate", "json",
               {{"which", "nu", "nu | mu | sigma"}, {"p", "3", "exponent"}, {"eta", "1e-2", "eta"}}, laminate_check});
  v.push_back({"stoch", "riemann-gap", "left and right Riemann sums of w dw", "json",
               {{"a", "0", "start"}, {"b", "1", "end"}, {"paths", "100000", "paths"}, {"steps", "1000", "steps"}},
               stoch_riemann});
  v.push_back({"stoch", "ab-mc", "AB f by conditioning the transformed heat martingale", "json",
               {{"f", "bump", "bump | twobump | zero"}, {"T", "50", "horizon"}, {"paths", "1000000", "paths"},
                {"bins", "32", "bins per axis"}, {"half-width", "3", "half side of the binned window"},
                {"steps", "400", "time steps"}, {"min-count", "100", "samples needed to use a bin"}},
               stoch_abmc});
  v.push_back({"stoch", "constants", "moment ratios under differential subordination", "json",
               {{"p", "4", "exponent"}, {"trials", "10000", "paths per test function"}, {"T", "1", "horizon"}},
               stoch_constants});
  v.push_back({"qc", "distortion", "area distortion exponent of the radial map", "csv", {{"K", "3", "distortion"}},
               qc_distortion});
  v.push_back({"qc", "sobolev", "annulus integrals of the singular map", "csv",
               {{"K", "2", "distortion"}, {"q", "1.3", "Sobolev exponent"}, {"eps-min", "1e-6", "inner radius"}},
               qc_sobolev});
  v.push_back({"qc", "weight", "A2 characteristic of a Jacobian power weight", "csv",
               {{"K", "2", "distortion"}, {"p", "3.5", "exponent"}, {"n", "512", "grid size"}}, qc_weight});
  v.push_back({"suite", "run", "acceptance battery", "json",
               {{"scale", "fast", "fast | full"}, {"skip", "", "modules or criteria (c6) to skip"},
                {"workers", "", "worker threads"}, {"repro", "false", "also rerun for the reproducibility check"}},
               suite_cmd});
  return v;
}

}  // namespace

const std::vector<CommandSpec>& registry() {
  static const std::vector<CommandSpec> r = build();
  return r;
}

const CommandSpec* find(const std::string& full_name) {
  for (const auto& c : registry())
    if (c.full_name() == full_name) return &c;
  return nullptr;
}

RunReport run(ExperimentConfig cfg) {
  const CommandSpec* spec = find(cfg.command);
  if (!spec) throw ConfigError("unknown subcommand '" + cfg.command + "'");
  std::set<std::string> known;
  for (const auto& p : spec->params) {
    known.insert(p.key);
    if (!cfg.has(p.key)) {
      if (p.required) throw ConfigError("missing field '" + p.key + "'");
      cfg.params[p.key] = p.default_value;
    }
  }
  for (const auto& [k, v] : cfg.params)
    if (!known.count(k)) throw ConfigError("unknown field '" + k + "' for '" + cfg.command + "'");
  RunReport r = spec->run(cfg);
  r.command = cfg.command;
  r.seed = cfg.seed;
  r.version = rp::kVersion;
  r.config.assign(cfg.params.begin(), cfg.params.end());
  r.config.emplace_back("seed", std::to_string(cfg.seed));
  std::sort(r.config.begin(), r.config.end());
  return r;
}

std::string render(const RunReport& r, const ExperimentConfig& cfg) {
  std::string fmt = cfg.format;
  if (fmt.empty()) {
    const CommandSpec* spec = find(cfg.command);
    fmt = spec ? spec->default_format : "json";
  }
  if (fmt == "json") return rp::to_json(r);
  if (fmt == "csv") return rp::to_csv(r);
  throw ConfigError("field 'format': expected csv or json, got '" + fmt + "'");
}

}  // namespace bflab::cli
