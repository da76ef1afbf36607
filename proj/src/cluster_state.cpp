#include "hamclust/cluster_state.hpp"

#include <string>

#include "hamclust/error.hpp"

namespace hamclust {

namespace {

// sum over the cluster of ||x - mu_own||^2.
double within(double n, const Eigen::VectorXd& s, double q) { return n > 0.0 ? q - s.squaredNorm() / n : 0.0; }

// sum over cluster a of ||x - mu_b||^2; requires nb > 0.
double across(double na, const Eigen::VectorXd& sa, double qa, double nb, const Eigen::VectorXd& sb) {
  return qa - 2.0 * sa.dot(sb) / nb + na * sb.squaredNorm() / (nb * nb);
}

}  // namespace

ClusterState::ClusterState(ObjectiveKind kind, const Dataset& data, SpinAssignment start, double scale)
    : kind_(kind), data_(&data), z_(std::move(start)), scale_(scale) {
  if (kind == ObjectiveKind::weighted_maxcut) throw ConfigError("max-cut has no cluster-statistics form");
  if (z_.size() != data.size()) {
    throw DataError("assignment has " + std::to_string(z_.size()) + " spins for " + std::to_string(data.size()) +
                    " points");
  }
  norms_sq_ = data.points().rowwise().squaredNorm();
  resync();
}

void ClusterState::resync() {
  const auto d = static_cast<Eigen::Index>(data_->dim());
  plus_ = {0.0, Eigen::VectorXd::Zero(d), 0.0};
  minus_ = {0.0, Eigen::VectorXd::Zero(d), 0.0};
  for (std::size_t i = 0; i < z_.size(); ++i) {
    Side& s = z_[i] > 0 ? plus_ : minus_;
    s.n += 1.0;
    s.sum += data_->point(i).transpose();
    s.sum_sq += norms_sq_(static_cast<Eigen::Index>(i));
  }
  energy_ = energy_of(plus_, minus_);
}

double ClusterState::energy_of(const Side& p, const Side& m) const {
  double e = 0.0;
  switch (kind_) {
    case ObjectiveKind::intra:
      e = p.n * p.n * within(p.n, p.sum, p.sum_sq) + m.n * m.n * within(m.n, m.sum, m.sum_sq);
      break;
    case ObjectiveKind::intra_star:
      e = p.n * within(p.n, p.sum, p.sum_sq) + m.n * within(m.n, m.sum, m.sum_sq);
      break;
    case ObjectiveKind::inter:
      if (p.n > 0.0 && m.n > 0.0) {
        e = -p.n * p.n * m.n * m.n *
            (across(p.n, p.sum, p.sum_sq, m.n, m.sum) + across(m.n, m.sum, m.sum_sq, p.n, p.sum));
      }
      break;
    case ObjectiveKind::combined:
      if (p.n > 0.0 && m.n > 0.0) {
        e = p.n * p.n * m.n * m.n *
            (within(p.n, p.sum, p.sum_sq) + within(m.n, m.sum, m.sum_sq) -
             across(p.n, p.sum, p.sum_sq, m.n, m.sum) - across(m.n, m.sum, m.sum_sq, p.n, p.sum));
      }
      break;
    case ObjectiveKind::weighted_maxcut:
      break;
  }
  return scale_ * e;
}

double ClusterState::delta(VarIndex i) const {
  Side p = plus_, m = minus_;
  Side& from = z_[i] > 0 ? p : m;
  Side& to = z_[i] > 0 ? m : p;
  const auto x = data_->point(i).transpose();
  const double q = norms_sq_(static_cast<Eigen::Index>(i));
  from.n -= 1.0;
  from.sum -= x;
  from.sum_sq -= q;
  to.n += 1.0;
  to.sum += x;
  to.sum_sq += q;
  return energy_of(p, m) - energy_;
}

void ClusterState::flip(VarIndex i) {
  Side& from = z_[i] > 0 ? plus_ : minus_;
  Side& to = z_[i] > 0 ? minus_ : plus_;
  const auto x = data_->point(i).transpose();
  const double q = norms_sq_(static_cast<Eigen::Index>(i));
  from.n -= 1.0;
  from.sum -= x;
  from.sum_sq -= q;
  to.n += 1.0;
  to.sum += x;
  to.sum_sq += q;
  z_.flip(i);
  energy_ = energy_of(plus_, minus_);
}

}  // namespace hamclust
