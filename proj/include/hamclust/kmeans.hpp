#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hamclust/dataset.hpp"

namespace hamclust {

struct KMeansOptions {
  std::size_t k = 2;
  std::size_t n_init = 10;
  std::size_t max_iterations = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centers;  // k x d
  /// Within-cluster sum of squared distances.
  double inertia = 0.0;
  std::size_t iterations = 0;
};

/// Lloyd's algorithm from greedy k-means++ seeds, best of n_init runs by
/// inertia. Init r uses derive_seed(seed, r). Throws ConfigError unless
/// 2 <= k <= N and n_init >= 1.
KMeansResult kmeans(const Dataset& data, const KMeansOptions& options = {});

}  // namespace hamclust
