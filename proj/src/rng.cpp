#include "bflab/rng.hpp"

#include <cmath>

namespace bflab {

void CounterRng::normal_pair(double& z0, double& z1) {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 6.283185307179586 * u2;
  z0 = r * std::cos(th);
  z1 = r * std::sin(th);
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double z0, z1;
  normal_pair(z0, z1);
  spare_ = z1;
  has_spare_ = true;
  return z0;
}

}  // namespace bflab
