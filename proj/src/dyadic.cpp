#include "bflab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bflab/kernels.hpp"
#include "bflab/rng.hpp"

namespace bflab::dyadic {

DyadicInterval DyadicInterval::from_id(std::int64_t id) {
  int level = 0;
  while (((std::int64_t{1} << (level + 1)) - 1) <= id) ++level;
  return {level, id - ((std::int64_t{1} << level) - 1)};
}

bool DyadicInterval::contains(const DyadicInterval& j) const {
  if (j.level < level) return false;
  return (j.index >> (j.level - level)) == index;
}

DyadicFunction::DyadicFunction(int depth, std::vector<double> values)
    : depth_(depth), values_(std::move(values)) {
  if (depth < 0 || depth > 24) throw DomainError("dyadic depth out of range: " + std::to_string(depth));
  if (values_.size() != (std::size_t{1} << depth))
    throw DomainError("dyadic function needs 2^depth samples");
  build();
}

DyadicFunction DyadicFunction::zeros(int depth) {
  return DyadicFunction(depth, std::vector<double>(std::size_t{1} << depth, 0.0));
}

void DyadicFunction::build() {
  pyr_.assign(depth_ + 1, {});
  pyr_[depth_] = values_;
  for (int l = depth_ - 1; l >= 0; --l) {
    pyr_[l].resize(std::size_t{1} << l);
    kernels::pair_mean(pyr_[l + 1].data(), pyr_[l].data(), pyr_[l].size());
  }
}

double DyadicFunction::average(const DyadicInterval& I) const {
  if (I.level > depth_ || I.level < 0) throw DomainError("interval finer than function depth");
  return pyr_[I.level][I.index];
}

double DyadicFunction::lp_norm(double p) const {
  double s = 0.0;
  for (double v : values_) s += std::pow(std::abs(v), p);
  return std::pow(s / values_.size(), 1.0 / p);
}

double DyadicFunction::lp_norm(double p, const DyadicFunction& weight) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += std::pow(std::abs(values_[i]), p) * weight[i];
  return std::pow(s / values_.size(), 1.0 / p);
}

void require_positive(const DyadicWeight& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(w[i] > 0.0)) throw DomainError("weight sample " + std::to_string(i) + " is not positive");
}

std::vector<double> haar_coefficients(const DyadicFunction& f) {
  if (f.depth() < 1) throw DomainError("haar_coefficients needs depth >= 1");
  std::vector<double> c((std::size_t{1} << f.depth()) - 1);
  for (int l = 0; l < f.depth(); ++l) {
    const auto& ch = f.level_averages(l + 1);
    const double s = 0.5 * std::sqrt(std::ldexp(1.0, -l));
    const std::size_t off = (std::size_t{1} << l) - 1;
    for (std::size_t i = 0; i < (std::size_t{1} << l); ++i)
      c[off + i] = s * (ch[2 * i + 1] - ch[2 * i]);
  }
  return c;
}

DyadicFunction haar_synthesis(const std::vector<double>& coeffs, int depth) {
  std::vector<double> cur(1, 0.0), next;
  for (int l = 0; l < depth; ++l) {
    const double inv = 1.0 / std::sqrt(std::ldexp(1.0, -l));
    const std::size_t off = (std::size_t{1} << l) - 1;
    next.assign(cur.size() * 2, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double d = coeffs[off + i] * inv;
      next[2 * i] = cur[i] - d;
      next[2 * i + 1] = cur[i] + d;
    }
    cur.swap(next);
  }
  return DyadicFunction(depth, std::move(cur));
}

DyadicFunction martingale_transform(const DyadicFunction& f, const std::vector<int>& signs) {
  auto c = haar_coefficients(f);
  if (signs.size() < c.size()) throw DomainError("sign map shorter than coefficient map");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (signs[i] == 0) {
      if (c[i] != 0.0)
        throw DomainError("missing sign for interval id " + std::to_string(i));
      continue;
    }
    if (signs[i] != 1 && signs[i] != -1) throw DomainError("signs must be +1 or -1");
    c[i] *= signs[i];
  }
  return haar_synthesis(c, f.depth());
}

namespace {

DyadicFunction reciprocal(const DyadicWeight& w) {
  std::vector<double> v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) v[i] = 1.0 / w[i];
  return DyadicFunction(w.depth(), std::move(v));
}

}  // namespace

double a2_dyadic(const DyadicWeight& w) {
  require_positive(w);
  const auto s = reciprocal(w);
  double q = 0.0;
  for (int l = 0; l <= w.depth(); ++l) {
    const auto& a = w.level_averages(l);
    const auto& b = s.level_averages(l);
    for (std::size_t i = 0; i < a.size(); ++i) q = std::max(q, a[i] * b[i]);
  }
  return q;
}

double a_infinity_constant(const DyadicWeight& w) {
  require_positive(w);
  std::vector<double> lg(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) lg[i] = std::log(w[i]);
  const DyadicFunction L(w.depth(), std::move(lg));
  double c = 0.0;
  for (int l = 0; l <= w.depth(); ++l) {
    const auto& a = w.level_averages(l);
    const auto& b = L.level_averages(l);
    for (std::size_t i = 0; i < a.size(); ++i) c = std::max(c, a[i] * std::exp(-b[i]));
  }
  return c;
}

double buckley_sum(const DyadicWeight& w, const DyadicInterval& I) {
  require_positive(w);
  double s = 0.0;
  for (int l = I.level; l < w.depth(); ++l) {
    const int dl = l - I.level;
    const auto& par = w.level_averages(l);
    const auto& ch = w.level_averages(l + 1);
    const std::int64_t first = I.index << dl, count = std::int64_t{1} << dl;
    const double len = std::ldexp(1.0, -l);
    for (std::int64_t i = first; i < first + count; ++i) {
      const double r = (ch[2 * i + 1] - ch[2 * i]) / par[i];
      s += r * r * len;
    }
  }
  return s / I.length();
}

WeightedHaar weighted_haar(const DyadicWeight& w, const DyadicInterval& I) {
  require_positive(w);
  if (I.level >= w.depth()) throw DomainError("weighted_haar needs an interval above the finest level");
  const double wp = w.average(I.right_child());
  const double wm = w.average(I.left_child());
  if (!(wp > 0.0) || !(wm > 0.0)) throw DomainError("degenerate weight on interval halves");
  const double wa = 0.5 * (wp + wm);
  WeightedHaar out;
  out.beta = (wp - wm) / (2.0 * wa);
  out.alpha = std::sqrt(wa * (1.0 - out.beta * out.beta));
  const double sl = std::sqrt(I.length());
  const double vp = (1.0 - out.beta) / (out.alpha * sl);
  const double vm = (-1.0 - out.beta) / (out.alpha * sl);
  std::vector<double> v(w.size(), 0.0);
  const int shift = w.depth() - I.level - 1;
  const std::size_t half = std::size_t{1} << shift;
  const std::size_t start = static_cast<std::size_t>(I.index) << (shift + 1);
  for (std::size_t i = 0; i < half; ++i) {
    v[start + i] = vm;
    v[start + half + i] = vp;
  }
  out.hw = DyadicFunction(w.depth(), std::move(v));
  return out;
}

CarlesonSequence::CarlesonSequence(int depth)
    : depth_(depth), v_((std::size_t{1} << (depth + 1)) - 1, 0.0) {
  if (depth < 0 || depth > 24) throw DomainError("Carleson sequence depth out of range");
}

double carleson_intensity(const CarlesonSequence& seq) {
  const int D = seq.depth();
  // Subtree sums, bottom-up.
  std::vector<double> sub(seq.raw());
  for (int l = D - 1; l >= 0; --l) {
    const std::size_t off = (std::size_t{1} << l) - 1, coff = (std::size_t{1} << (l + 1)) - 1;
    for (std::size_t i = 0; i < (std::size_t{1} << l); ++i)
      sub[off + i] += sub[coff + 2 * i] + sub[coff + 2 * i + 1];
  }
  double best = 0.0;
  for (int l = 0; l <= D; ++l) {
    const std::size_t off = (std::size_t{1} << l) - 1;
    const double inv = std::ldexp(1.0, l);
    for (std::size_t i = 0; i < (std::size_t{1} << l); ++i) best = std::max(best, sub[off + i] * inv);
  }
  return best;
}

CarlesonSequence caral_sequence(const DyadicWeight& w, double alpha) {
  require_positive(w);
  const auto s = reciprocal(w);
  CarlesonSequence seq(w.depth());
  for (int l = 0; l < w.depth(); ++l) {
    const auto& wa = w.level_averages(l);
    const auto& sa = s.level_averages(l);
    const auto& wc = w.level_averages(l + 1);
    const auto& sc = s.level_averages(l + 1);
    const double len = std::ldexp(1.0, -l);
    for (std::size_t i = 0; i < wa.size(); ++i) {
      const double dw = (wc[2 * i + 1] - wc[2 * i]) / wa[i];
      const double ds = (sc[2 * i + 1] - sc[2 * i]) / sa[i];
      seq[{l, static_cast<std::int64_t>(i)}] = std::pow(wa[i] * sa[i], alpha) * (dw * dw + ds * ds) * len;
    }
  }
  return seq;
}

EmbeddingCheck carleson_embedding_check(const CarlesonSequence& seq, const DyadicFunction& F,
                                        const DyadicWeight& w) {
  require_positive(w);
  if (seq.depth() > F.depth() || F.depth() != w.depth())
    throw DomainError("embedding check needs seq depth <= function depth == weight depth");
  for (std::size_t i = 0; i < F.size(); ++i)
    if (F[i] < 0.0) throw DomainError("embedding check needs F >= 0");

  // Pyramid of minima of F.
  std::vector<std::vector<double>> mins(F.depth() + 1);
  mins[F.depth()] = F.values();
  for (int l = F.depth() - 1; l >= 0; --l) {
    mins[l].resize(std::size_t{1} << l);
    for (std::size_t i = 0; i < mins[l].size(); ++i)
      mins[l][i] = std::min(mins[l + 1][2 * i], mins[l + 1][2 * i + 1]);
  }

  EmbeddingCheck out;
  out.intensity = carleson_intensity(seq);
  for (int l = 0; l <= seq.depth(); ++l) {
    const auto& wa = w.level_averages(l);
    for (std::size_t i = 0; i < mins[l].size(); ++i) {
      const double a = seq[{l, static_cast<std::int64_t>(i)}];
      out.lhs1 += mins[l][i] * a;
      out.lhs2 += mins[l][i] / wa[i] * a;
    }
  }
  double int_f = 0.0, int_fw = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    int_f += F[i];
    int_fw += F[i] / w[i];
  }
  int_f /= F.size();
  int_fw /= F.size();
  out.rhs1 = 2.0 * out.intensity * int_f;
  out.rhs2 = kEmbeddingC * out.intensity * int_fw;
  const double tol = 1e-12 * (1.0 + out.rhs1 + out.rhs2);
  out.ok1 = out.lhs1 <= out.rhs1 + tol;
  out.ok2 = out.lhs2 <= out.rhs2 + tol;
  const double base = out.intensity * int_fw;
  out.observed_c2 = base > 0.0 ? out.lhs2 / base : 0.0;
  return out;
}

MtRatio weighted_mt_ratio(const DyadicWeight& w, int trials, double p, std::uint64_t seed) {
  require_positive(w);
  if (trials < 1) throw DomainError("weighted_mt_ratio needs trials >= 1");
  MtRatio out;
  out.q = a2_dyadic(w);
  const std::size_t nc = (std::size_t{1} << w.depth()) - 1;
  std::vector<int> signs(nc);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> v(w.size());
    for (auto& x : v) x = rng.normal();
    for (auto& s : signs) s = (rng.next_u64() >> 63) ? 1 : -1;
    // Mean-zero input so both sides live on the Haar part.
    const DyadicFunction f0(w.depth(), std::move(v));
    std::vector<double> c = haar_coefficients(f0);
    const DyadicFunction f = haar_synthesis(c, w.depth());
    const DyadicFunction g = martingale_transform(f, signs);
    const double den = f.lp_norm(p, w);
    if (den > 0.0) out.ratio = std::max(out.ratio, g.lp_norm(p, w) / den);
  }
  return out;
}

}  // namespace bflab::dyadic
