#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "hamclust/dataset.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/polynomial.hpp"
#include "hamclust/spin.hpp"

namespace hamclust {

/// Energy of a centroid-based objective tracked through per-cluster counts,
/// coordinate sums and squared-norm sums. A delta costs O(d) regardless of
/// the polynomial's term count, which matters for Inter on large inputs.
///
/// energy() == raw_objective(kind, data, spins()) * scale up to rounding.
/// Not available for weighted max-cut (throws ConfigError).
class ClusterState {
 public:
  /// Keeps a reference to data; it must outlive the state.
  ClusterState(ObjectiveKind kind, const Dataset& data, SpinAssignment start, double scale = 1.0);

  const SpinAssignment& spins() const noexcept { return z_; }
  double energy() const noexcept { return energy_; }
  double delta(VarIndex i) const;
  void flip(VarIndex i);
  /// Rebuilds the cluster sums from scratch.
  void resync();

 private:
  struct Side {
    double n = 0.0;
    Eigen::VectorXd sum;
    double sum_sq = 0.0;
  };
  double energy_of(const Side& plus, const Side& minus) const;

  ObjectiveKind kind_;
  const Dataset* data_;
  SpinAssignment z_;
  double scale_;
  Side plus_, minus_;
  Eigen::VectorXd norms_sq_;
  double energy_ = 0.0;
};

}  // namespace hamclust
