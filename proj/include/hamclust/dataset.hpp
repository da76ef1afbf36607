#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hamclust {

/// N points in R^d, one per row, with optional ground-truth class ids.
///
/// Invariants (checked on construction): N >= 2, d >= 1, all entries finite,
/// labels (when present) have length N.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd points, std::optional<std::vector<int>> labels = std::nullopt,
          std::string name = {});

  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  const Eigen::MatrixXd& points() const noexcept { return points_; }
  double operator()(std::size_t i, std::size_t k) const { return points_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)); }
  auto point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }

  bool has_labels() const noexcept { return labels_.has_value(); }
  /// Throws DataError when the dataset is unlabeled.
  const std::vector<int>& labels() const;
  const std::optional<std::vector<int>>& maybe_labels() const noexcept { return labels_; }
  const std::string& name() const noexcept { return name_; }

  /// Rows in the given order; labels follow.
  Dataset subset(std::span<const std::size_t> rows) const;
  /// Drops every row whose label equals `label`.
  Dataset without_label(int label) const;
  Dataset with_points(Eigen::MatrixXd points) const;
  Dataset renamed(std::string name) const;

 private:
  Eigen::MatrixXd points_;
  std::optional<std::vector<int>> labels_;
  std::string name_;
};

}  // namespace hamclust
