#include "hamclust/dataset.hpp"

#include <cmath>

#include "hamclust/error.hpp"

namespace hamclust {

Dataset::Dataset(Eigen::MatrixXd points, std::optional<std::vector<int>> labels, std::string name)
    : points_(std::move(points)), labels_(std::move(labels)), name_(std::move(name)) {
  if (points_.rows() < 2) throw DataError("dataset needs at least 2 points");
  if (points_.cols() < 1) throw DataError("dataset needs at least 1 feature");
  if (!points_.allFinite()) throw DataError("dataset contains non-finite values");
  if (labels_ && labels_->size() != size()) {
    throw DataError("label count " + std::to_string(labels_->size()) + " does not match point count " +
                    std::to_string(size()));
  }
}

const std::vector<int>& Dataset::labels() const {
  if (!labels_) throw DataError("dataset '" + name_ + "' has no labels");
  return *labels_;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()), points_.cols());
  std::optional<std::vector<int>> lab;
  if (labels_) lab.emplace();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= size()) throw DataError("subset row out of range");
    pts.row(static_cast<Eigen::Index>(r)) = points_.row(static_cast<Eigen::Index>(rows[r]));
    if (lab) lab->push_back((*labels_)[rows[r]]);
  }
  return Dataset(std::move(pts), std::move(lab), name_);
}

Dataset Dataset::without_label(int label) const {
  std::vector<std::size_t> keep;
  const auto& lab = labels();
  for (std::size_t i = 0; i < size(); ++i) {
    if (lab[i] != label) keep.push_back(i);
  }
  return subset(keep);
}

Dataset Dataset::with_points(Eigen::MatrixXd points) const {
  return Dataset(std::move(points), labels_, name_);
}

Dataset Dataset::renamed(std::string name) const { return Dataset(points_, labels_, std::move(name)); }

}  // namespace hamclust
