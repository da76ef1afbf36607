#include "hamclust/kmeans.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hamclust/error.hpp"
#include "hamclust/random.hpp"

namespace hamclust {

namespace {

using Eigen::Index;

double sq_dist(const Eigen::MatrixXd& x, Index i, const Eigen::MatrixXd& c, Index j) {
  return (x.row(i) - c.row(j)).squaredNorm();
}

// Each new center is the best of 2 + floor(ln k) candidates drawn in
// proportion to D^2, judged by the resulting potential.
Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& x, std::size_t k, Rng& rng) {
  const Index n = x.rows();
  Eigen::MatrixXd centers(static_cast<Index>(k), x.cols());
  centers.row(0) = x.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
  std::vector<double> closest(static_cast<std::size_t>(n));
  double potential = 0.0;
  for (Index i = 0; i < n; ++i) potential += closest[i] = sq_dist(x, i, centers, 0);

  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  for (std::size_t c = 1; c < k; ++c) {
    Index best_candidate = 0;
    double best_potential = std::numeric_limits<double>::infinity();
    std::vector<double> best_closest;
    for (std::size_t t = 0; t < trials; ++t) {
      Index pick = n - 1;
      if (potential > 0.0) {
        double r = rng.uniform() * potential, acc = 0.0;
        for (Index i = 0; i < n; ++i) {
          acc += closest[i];
          if (r < acc) {
            pick = i;
            break;
          }
        }
      } else {
        pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
      }
      std::vector<double> cand(closest);
      double pot = 0.0;
      for (Index i = 0; i < n; ++i) pot += cand[i] = std::min(cand[i], (x.row(i) - x.row(pick)).squaredNorm());
      if (pot < best_potential) {
        best_potential = pot;
        best_candidate = pick;
        best_closest = std::move(cand);
      }
    }
    centers.row(static_cast<Index>(c)) = x.row(best_candidate);
    closest = std::move(best_closest);
    potential = best_potential;
  }
  return centers;
}

KMeansResult lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centers, std::size_t max_iterations) {
  const Index n = x.rows(), k = centers.rows();
  KMeansResult r;
  r.labels.assign(static_cast<std::size_t>(n), -1);
  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double bd = sq_dist(x, i, centers, 0);
      for (Index j = 1; j < k; ++j) {
        const double d = sq_dist(x, i, centers, j);
        if (d < bd) {
          bd = d;
          best = static_cast<int>(j);
        }
      }
      if (r.labels[i] != best) {
        r.labels[i] = best;
        changed = true;
      }
    }
    if (!changed) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<std::size_t> size(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(r.labels[i]) += x.row(i);
      ++size[r.labels[i]];
    }
    for (Index j = 0; j < k; ++j) {
      if (size[j] > 0) {
        centers.row(j) = sums.row(j) / static_cast<double>(size[j]);
        continue;
      }
      // Empty cluster: take over the point farthest from its own center.
      Index far = 0;
      double fd = -1.0;
      for (Index i = 0; i < n; ++i) {
        const double d = sq_dist(x, i, centers, r.labels[i]);
        if (d > fd) {
          fd = d;
          far = i;
        }
      }
      centers.row(j) = x.row(far);
    }
  }
  r.inertia = 0.0;
  for (Index i = 0; i < n; ++i) r.inertia += sq_dist(x, i, centers, r.labels[i]);
  r.centers = std::move(centers);
  return r;
}

}  // namespace

KMeansResult kmeans(const Dataset& data, const KMeansOptions& options) {
  if (options.k < 2) throw ConfigError("k-means needs k >= 2");
  if (options.k > data.size()) {
    throw ConfigError("k = " + std::to_string(options.k) + " exceeds the " + std::to_string(data.size()) + " points");
  }
  if (options.n_init < 1) throw ConfigError("n_init must be at least 1");
  if (options.max_iterations < 1) throw ConfigError("max_iterations must be at least 1");

  KMeansResult best;
  bool have = false;
  for (std::size_t r = 0; r < options.n_init; ++r) {
    Rng rng(derive_seed(options.seed, r));
    auto run = lloyd(data.points(), seed_centers(data.points(), options.k, rng), options.max_iterations);
    if (!have || run.inertia < best.inertia) {
      best = std::move(run);
      have = true;
    }
  }
  return best;
}

}  // namespace hamclust
