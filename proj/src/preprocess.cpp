#include "hamclust/preprocess.hpp"

#include <cmath>
#include <string>

#include "hamclust/error.hpp"

namespace hamclust {

std::string_view to_string(Preprocessing mode) noexcept {
  switch (mode) {
    case Preprocessing::none: return "none";
    case Preprocessing::minmax: return "minmax";
    case Preprocessing::zscore: return "zscore";
    case Preprocessing::pixel255: return "pixel255";
    case Preprocessing::l2: return "l2";
  }
  return "?";
}

Preprocessing parse_preprocessing(std::string_view name) {
  for (auto m : {Preprocessing::none, Preprocessing::minmax, Preprocessing::zscore, Preprocessing::pixel255,
                 Preprocessing::l2}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("unknown preprocessing '" + std::string(name) + "' (expected none, minmax, zscore, pixel255, l2)");
}

Dataset preprocess(const Dataset& data, Preprocessing mode) {
  Eigen::MatrixXd x = data.points();
  const auto n = x.rows();
  switch (mode) {
    case Preprocessing::none:
      return data;
    case Preprocessing::minmax:
      for (Eigen::Index k = 0; k < x.cols(); ++k) {
        const double lo = x.col(k).minCoeff(), hi = x.col(k).maxCoeff();
        if (hi > lo) x.col(k) = (x.col(k).array() - lo) / (hi - lo);
        else x.col(k).setZero();
      }
      break;
    case Preprocessing::zscore:
      for (Eigen::Index k = 0; k < x.cols(); ++k) {
        const double mean = x.col(k).mean();
        const double sd = std::sqrt((x.col(k).array() - mean).square().sum() / static_cast<double>(n));
        if (x.col(k).minCoeff() < x.col(k).maxCoeff() && sd > 0.0) x.col(k) = (x.col(k).array() - mean) / sd;
        else x.col(k).setZero();
      }
      break;
    case Preprocessing::pixel255:
      x /= 255.0;
      break;
    case Preprocessing::l2:
      for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = x.row(i).norm();
        if (norm > 0.0) x.row(i) /= norm;
      }
      break;
  }
  return data.with_points(std::move(x));
}

}  // namespace hamclust
