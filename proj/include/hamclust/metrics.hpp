#pragma once

#include <optional>
#include <span>

#include "hamclust/dataset.hpp"

namespace hamclust {

/// Fraction of point pairs on which the two partitions agree. Throws
/// DataError on a length mismatch or fewer than 2 points.
double rand_index(std::span<const int> truth, std::span<const int> pred);

/// Mean silhouette with Euclidean distances; points in singleton clusters
/// score 0. Throws DataError when fewer than two clusters are non-empty.
double silhouette(const Dataset& data, std::span<const int> pred);

/// Two-cluster separation figures, unsquared point-to-centroid distances.
struct AuxiliaryMetrics {
  double dist_centroid = 0.0;  // ||mu_a - mu_b||
  double intra_sum = 0.0;      // sum_i ||x_i - mu_own(i)||
  double inter_sum = 0.0;      // sum_i ||x_i - mu_other(i)||
};

/// pred must use exactly two label values, both present (DataError otherwise).
AuxiliaryMetrics auxiliary_metrics(const Dataset& data, std::span<const int> pred);

struct MetricsReport {
  std::optional<double> rand_index;
  std::optional<double> silhouette;
  std::optional<double> dist_centroid;
  std::optional<double> intra_sum;
  std::optional<double> inter_sum;
};

/// Everything that is defined for pred: RI needs truth, the silhouette needs
/// two non-empty clusters, the auxiliary figures need exactly two.
MetricsReport evaluate_partition(const Dataset& data, std::span<const int> pred,
                                 std::optional<std::span<const int>> truth = std::nullopt);

}  // namespace hamclust
