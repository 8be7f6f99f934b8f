#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bflab/common.hpp"

namespace bflab::dyadic {

struct DyadicInterval {
  int level = 0;
  std::int64_t index = 0;

  double length() const { return std::ldexp(1.0, -level); }
  double left() const { return index * length(); }
  DyadicInterval left_child() const { return {level + 1, 2 * index}; }
  DyadicInterval right_child() const { return {level + 1, 2 * index + 1}; }
  // Heap position: 2^level - 1 + index.
  std::int64_t id() const { return (std::int64_t{1} << level) - 1 + index; }
  static DyadicInterval from_id(std::int64_t id);
  bool contains(const DyadicInterval& j) const;
  bool operator==(const DyadicInterval&) const = default;
};

// Step function on [0,1] with 2^depth samples, plus the pyramid of averages.
class DyadicFunction {
 public:
  DyadicFunction() = default;
  DyadicFunction(int depth, std::vector<double> values);
  static DyadicFunction zeros(int depth);

  int depth() const { return depth_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  // <f>_I; requires I.level <= depth.
  double average(const DyadicInterval& I) const;
  const std::vector<double>& level_averages(int level) const { return pyr_[level]; }

  double integral() const { return pyr_[0][0]; }
  // (int |f|^p g dx)^(1/p); g defaults to 1.
  double lp_norm(double p) const;
  double lp_norm(double p, const DyadicFunction& weight) const;

 private:
  void build();
  int depth_ = 0;
  std::vector<double> values_;
  std::vector<std::vector<double>> pyr_;
};

using DyadicWeight = DyadicFunction;

// Throws DomainError unless every sample is > 0.
void require_positive(const DyadicWeight& w);

// Coefficients (f, h_I) indexed by heap id for levels 0..depth-1.
std::vector<double> haar_coefficients(const DyadicFunction& f);

// Synthesis of sum c_I h_I (no constant term).
DyadicFunction haar_synthesis(const std::vector<double>& coeffs, int depth);

// Signs indexed by heap id, entries +1/-1; 0 means "missing".
DyadicFunction martingale_transform(const DyadicFunction& f, const std::vector<int>& signs);

double a2_dyadic(const DyadicWeight& w);
double a_infinity_constant(const DyadicWeight& w);
double buckley_sum(const DyadicWeight& w, const DyadicInterval& I);

struct WeightedHaar {
  double alpha = 0.0;
  double beta = 0.0;
  DyadicFunction hw;
};
WeightedHaar weighted_haar(const DyadicWeight& w, const DyadicInterval& I);

// Nonnegative numbers on intervals of levels 0..depth, indexed by heap id.
class CarlesonSequence {
 public:
  explicit CarlesonSequence(int depth);
  int depth() const { return depth_; }
  double& operator[](const DyadicInterval& I) { return v_[I.id()]; }
  double operator[](const DyadicInterval& I) const { return v_[I.id()]; }
  const std::vector<double>& raw() const { return v_; }

 private:
  int depth_;
  std::vector<double> v_;
};

double carleson_intensity(const CarlesonSequence& seq);

// mu_I = (<w><s>)^a ((dw/<w>)^2 + (ds/<s>)^2) |I| with s = 1/w.
CarlesonSequence caral_sequence(const DyadicWeight& w, double alpha);

struct EmbeddingCheck {
  double lhs1 = 0, rhs1 = 0, lhs2 = 0, rhs2 = 0;
  double intensity = 0;
  double observed_c2 = 0;  // lhs2 / (B int F/w)
  bool ok1 = false, ok2 = false;
};
inline constexpr double kEmbeddingC = 4.0;
EmbeddingCheck carleson_embedding_check(const CarlesonSequence& seq, const DyadicFunction& F,
                                        const DyadicWeight& w);

struct MtRatio {
  double ratio = 0.0;
  double q = 0.0;  // a2_dyadic(w)
};
MtRatio weighted_mt_ratio(const DyadicWeight& w, int trials, double p, std::uint64_t seed);

}  // namespace bflab::dyadic
