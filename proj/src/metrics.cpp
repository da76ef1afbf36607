#include "hamclust/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hamclust/error.hpp"

namespace hamclust {

namespace {

void require_length(const Dataset& data, std::span<const int> pred) {
  if (pred.size() != data.size()) {
    throw DataError("got " + std::to_string(pred.size()) + " labels for " + std::to_string(data.size()) + " points");
  }
}

// Dense 0..k-1 ids in order of first appearance.
std::vector<int> compact(std::span<const int> labels, std::size_t& k) {
  std::map<int, int> id;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = id.try_emplace(labels[i], static_cast<int>(id.size())).first->second;
  }
  k = id.size();
  return out;
}

}  // namespace

double rand_index(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) {
    throw DataError("rand index needs equal lengths, got " + std::to_string(truth.size()) + " and " +
                    std::to_string(pred.size()));
  }
  const std::size_t n = truth.size();
  if (n < 2) throw DataError("rand index needs at least 2 points");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) agree += (truth[i] == truth[j]) == (pred[i] == pred[j]);
  }
  return static_cast<double>(agree) / static_cast<double>(n * (n - 1) / 2);
}

double silhouette(const Dataset& data, std::span<const int> pred) {
  require_length(data, pred);
  std::size_t k = 0;
  const auto ids = compact(pred, k);
  if (k < 2) throw DataError("silhouette needs at least two non-empty clusters");
  const std::size_t n = data.size();
  std::vector<std::size_t> size(k, 0);
  for (int c : ids) ++size[c];

  const Eigen::MatrixXd& x = data.points();
  double total = 0.0;
  std::vector<double> dist_sum(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (size[ids[i]] == 1) continue;
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) dist_sum[ids[j]] += (x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).norm();
    }
    const double a = dist_sum[ids[i]] / static_cast<double>(size[ids[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (static_cast<int>(c) != ids[i]) b = std::min(b, dist_sum[c] / static_cast<double>(size[c]));
    }
    const double m = std::max(a, b);
    if (m > 0.0) total += (b - a) / m;
  }
  return total / static_cast<double>(n);
}

AuxiliaryMetrics auxiliary_metrics(const Dataset& data, std::span<const int> pred) {
  require_length(data, pred);
  std::size_t k = 0;
  const auto ids = compact(pred, k);
  if (k != 2) throw DataError("auxiliary metrics need exactly two non-empty clusters, got " + std::to_string(k));
  const auto d = static_cast<Eigen::Index>(data.dim());
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(2, d);
  double count[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    mu.row(ids[i]) += data.point(i);
    count[ids[i]] += 1.0;
  }
  mu.row(0) /= count[0];
  mu.row(1) /= count[1];

  AuxiliaryMetrics m;
  m.dist_centroid = (mu.row(0) - mu.row(1)).norm();
  for (std::size_t i = 0; i < data.size(); ++i) {
    m.intra_sum += (data.point(i) - mu.row(ids[i])).norm();
    m.inter_sum += (data.point(i) - mu.row(1 - ids[i])).norm();
  }
  return m;
}

MetricsReport evaluate_partition(const Dataset& data, std::span<const int> pred,
                                 std::optional<std::span<const int>> truth) {
  require_length(data, pred);
  MetricsReport r;
  if (truth) r.rand_index = rand_index(*truth, pred);
  std::size_t k = 0;
  compact(pred, k);
  if (k >= 2) r.silhouette = silhouette(data, pred);
  if (k == 2) {
    const auto a = auxiliary_metrics(data, pred);
    r.dist_centroid = a.dist_centroid;
    r.intra_sum = a.intra_sum;
    r.inter_sum = a.inter_sum;
  }
  return r;
}

}  // namespace hamclust
