#include "hamclust/synthetic.hpp"

#include <cmath>
#include <string>

#include "hamclust/error.hpp"
#include "hamclust/random.hpp"

namespace hamclust {

GaussianSpec fig8_like_gaussian(std::uint64_t seed) {
  GaussianSpec spec;
  spec.means = {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(2.0, 0.0)};
  spec.covariances = {Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()};
  spec.counts = {75, 75};
  spec.seed = seed;
  return spec;
}

void validate(const GaussianSpec& spec) {
  const std::size_t k = spec.means.size();
  if (k == 0) throw ConfigError("a Gaussian spec needs at least one cluster");
  if (spec.covariances.size() != k || spec.counts.size() != k) {
    throw ConfigError("Gaussian spec: means, covariances and counts must have the same length");
  }
  const auto d = spec.means[0].size();
  if (d == 0) throw ConfigError("Gaussian spec: means must have at least one coordinate");
  for (std::size_t c = 0; c < k; ++c) {
    const std::string where = "Gaussian cluster " + std::to_string(c);
    if (spec.counts[c] == 0) throw ConfigError(where + ": count must be at least 1");
    if (spec.means[c].size() != d) throw ConfigError(where + ": mean has the wrong dimension");
    if (!spec.means[c].allFinite()) throw ConfigError(where + ": mean is not finite");
    const auto& s = spec.covariances[c];
    if (s.rows() != d || s.cols() != d) throw ConfigError(where + ": covariance has the wrong shape");
    if (!s.allFinite()) throw ConfigError(where + ": covariance is not finite");
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ConfigError(where + ": covariance is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
      throw ConfigError(where + ": covariance is not positive semi-definite");
    }
  }
}

Dataset generate_gaussian(const GaussianSpec& spec) {
  validate(spec);
  const auto d = spec.means[0].size();
  std::size_t total = 0;
  for (auto n : spec.counts) total += n;
  if (total < 2) throw ConfigError("a Gaussian dataset needs at least two points");

  Eigen::MatrixXd x(static_cast<Eigen::Index>(total), d);
  std::vector<int> labels;
  labels.reserve(total);
  Rng rng(spec.seed);
  Eigen::Index row = 0;
  for (std::size_t c = 0; c < spec.means.size(); ++c) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(spec.covariances[c]);
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd factor = eig.eigenvectors() * root.asDiagonal();
    Eigen::VectorXd g(d);
    for (std::size_t i = 0; i < spec.counts[c]; ++i, ++row) {
      for (Eigen::Index k = 0; k < d; ++k) g(k) = rng.normal();
      x.row(row) = (spec.means[c] + factor * g).transpose();
      labels.push_back(static_cast<int>(c));
    }
  }
  return Dataset(std::move(x), std::move(labels), "gaussian");
}

}  // namespace hamclust
