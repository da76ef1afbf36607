#include "hamclust/random.hpp"

#include <cmath>
#include <numbers>

namespace hamclust {

double Rng::normal() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace hamclust
