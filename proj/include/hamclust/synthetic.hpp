#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hamclust/dataset.hpp"

namespace hamclust {

/// One multivariate normal per cluster; cluster c gets label c.
struct GaussianSpec {
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;
  std::vector<std::size_t> counts;
  std::uint64_t seed = 0;
};

/// Two overlapping 2-D clusters of 75 points: means (0, 0) and (2, 0),
/// identity covariances.
GaussianSpec fig8_like_gaussian(std::uint64_t seed = 0);

/// Throws ConfigError for mismatched sizes, a zero count, or a covariance
/// that is not symmetric positive semi-definite.
void validate(const GaussianSpec& spec);

/// Points of cluster 0 first, then cluster 1, ... Same spec, same dataset.
Dataset generate_gaussian(const GaussianSpec& spec);

}  // namespace hamclust
