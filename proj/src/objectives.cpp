#include "hamclust/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hamclust/error.hpp"

namespace hamclust {
namespace {

// Per-feature column sums T_k = sum_i x_ik and Q_k = sum_i x_ik^2.
struct FeatureSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

FeatureSums feature_sums(const Dataset& data) {
  const std::size_t n = data.size(), d = data.dim();
  FeatureSums s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = data(i, k);
      s.sum[k] += x;
      s.sum_sq[k] += x * x;
    }
  }
  return s;
}

void require_points(const Dataset& data, const SpinAssignment& z) {
  if (z.size() != data.size()) {
    throw DataError("assignment has " + std::to_string(z.size()) + " spins for " + std::to_string(data.size()) +
                    " points");
  }
}

VarIndex var(std::size_t i) { return static_cast<VarIndex>(i); }

// Builds sum_{i<j} coeff(i, j) z_i z_j + constant, appended in storage order.
template <class PairFn>
SpinPolynomial pairwise(std::size_t n, double constant, PairFn&& coeff) {
  PolynomialBuilder b(n);
  b.reserve(n * (n - 1) / 2, n * (n - 1));
  b.add_constant(constant);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) b.add({var(i), var(j)}, coeff(i, j));
  }
  return b.build();
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) noexcept {
  switch (kind) {
    case ObjectiveKind::weighted_maxcut: return "maxcut";
    case ObjectiveKind::intra: return "intra";
    case ObjectiveKind::intra_star: return "intra-star";
    case ObjectiveKind::inter: return "inter";
    case ObjectiveKind::combined: return "combined";
  }
  return "?";
}

ObjectiveKind parse_objective_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "maxcut" || s == "weighted-maxcut" || s == "weighted_maxcut") return ObjectiveKind::weighted_maxcut;
  if (s == "intra") return ObjectiveKind::intra;
  if (s == "intra-star" || s == "intra*" || s == "intra_star" || s == "intrastar") return ObjectiveKind::intra_star;
  if (s == "inter") return ObjectiveKind::inter;
  if (s == "combined" || s == "intra-inter") return ObjectiveKind::combined;
  throw ConfigError("unknown objective '" + std::string(name) +
                    "' (expected maxcut, intra, intra-star, inter, combined)");
}

ClusterCounts counts(const SpinAssignment& z) noexcept {
  const std::size_t up = z.count_up();
  return {up, z.size() - up};
}

CentroidPair centroids(const Dataset& data, const SpinAssignment& z) {
  require_points(data, z);
  const auto d = static_cast<Eigen::Index>(data.dim());
  Eigen::VectorXd plus = Eigen::VectorXd::Zero(d), minus = Eigen::VectorXd::Zero(d);
  CentroidPair out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (z[i] > 0) {
      plus += data.point(i).transpose();
      ++out.n_plus;
    } else {
      minus += data.point(i).transpose();
      ++out.n_minus;
    }
  }
  if (out.n_plus > 0) out.mu_plus = plus / static_cast<double>(out.n_plus);
  if (out.n_minus > 0) out.mu_minus = minus / static_cast<double>(out.n_minus);
  return out;
}

double distance_l(const Dataset& data, const Eigen::VectorXd& mu, const SpinAssignment& z, int s) {
  require_points(data, z);
  if (static_cast<std::size_t>(mu.size()) != data.dim()) throw DataError("centroid dimension mismatch");
  if (!mu.allFinite()) throw DataError("non-finite centroid");
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (z[i] != s) continue;
    total += (data.point(i).transpose() - mu).squaredNorm();
  }
  return total;
}

double raw_objective(ObjectiveKind kind, const Dataset& data, const SpinAssignment& z) {
  require_points(data, z);
  if (kind == ObjectiveKind::weighted_maxcut) {
    double e = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      for (std::size_t j = i + 1; j < data.size(); ++j) {
        e += (data.point(i) - data.point(j)).norm() * z[i] * z[j];
      }
    }
    return e;
  }

  const auto c = centroids(data, z);
  const double np = static_cast<double>(c.n_plus), nm = static_cast<double>(c.n_minus);
  // l(mu_a, z, s) with the empty-centroid convention.
  auto l = [&](const std::optional<Eigen::VectorXd>& mu, int s) { return mu ? distance_l(data, *mu, z, s) : 0.0; };

  switch (kind) {
    case ObjectiveKind::intra:
      return np * np * l(c.mu_plus, +1) + nm * nm * l(c.mu_minus, -1);
    case ObjectiveKind::intra_star:
      return np * l(c.mu_plus, +1) + nm * l(c.mu_minus, -1);
    case ObjectiveKind::inter:
      if (c.n_plus == 0 || c.n_minus == 0) return 0.0;
      return -np * np * nm * nm * (l(c.mu_minus, +1) + l(c.mu_plus, -1));
    case ObjectiveKind::combined:
      if (c.n_plus == 0 || c.n_minus == 0) return 0.0;
      return np * np * nm * nm *
             (l(c.mu_plus, +1) + l(c.mu_minus, -1) - l(c.mu_minus, +1) - l(c.mu_plus, -1));
    case ObjectiveKind::weighted_maxcut:
      break;
  }
  return 0.0;
}

double raw_intra_joint(const Dataset& data, const SpinAssignment& z) {
  const auto c = centroids(data, z);
  if (c.n_plus == 0 || c.n_minus == 0) return 0.0;
  const double np = static_cast<double>(c.n_plus), nm = static_cast<double>(c.n_minus);
  return np * np * nm * nm * (distance_l(data, *c.mu_plus, z, +1) + distance_l(data, *c.mu_minus, z, -1));
}

double centroid_separation_objective(const Dataset& data, const SpinAssignment& z) {
  const auto c = centroids(data, z);
  if (c.n_plus == 0 || c.n_minus == 0) return 0.0;
  const double np = static_cast<double>(c.n_plus), nm = static_cast<double>(c.n_minus);
  const double n = static_cast<double>(data.size());
  return -n * np * np * nm * nm * (*c.mu_plus - *c.mu_minus).squaredNorm();
}

SpinPolynomial build_weighted_maxcut(const Dataset& data) {
  return pairwise(data.size(), 0.0, [&](std::size_t i, std::size_t j) { return (data.point(i) - data.point(j)).norm(); });
}

SpinPolynomial build_intra(const Dataset& data) {
  const std::size_t n = data.size(), d = data.dim();
  const double nn = static_cast<double>(n);
  const auto s = feature_sums(data);
  double constant = 0.0;
  for (std::size_t k = 0; k < d; ++k) constant += (nn + 2.0) * (nn * s.sum_sq[k] - s.sum[k] * s.sum[k]) / 4.0;
  return pairwise(n, constant, [&](std::size_t i, std::size_t j) {
    double a = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double xi = data(i, k), xj = data(j, k);
      a += nn / 2.0 * xi * xi + nn / 2.0 * xj * xj + 0.5 * s.sum_sq[k] - 0.5 * s.sum[k] * (xi + xj) -
           nn / 2.0 * xi * xj;
    }
    return a;
  });
}

SpinPolynomial build_intra_star(const Dataset& data) {
  const std::size_t n = data.size(), d = data.dim();
  const double nn = static_cast<double>(n);
  const auto s = feature_sums(data);
  double constant = 0.0;
  for (std::size_t k = 0; k < d; ++k) constant += (nn * s.sum_sq[k] - s.sum[k] * s.sum[k]) / 2.0;
  return pairwise(n, constant, [&](std::size_t i, std::size_t j) {
    double sq = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = data(i, k) - data(j, k);
      sq += diff * diff;
    }
    return 0.5 * sq;
  });
}

namespace {

// Pieces of the Inter expansion. Per feature k, with U = sum_{i<j} z_i z_j,
// X_k = sum_{i<j} x_ik x_jk z_i z_j and Y_k = (sum_i x_ik z_i)(sum_i x_ik)(sum_j z_j):
//   [(N^2/4 - 3N/8) Q_k - (5N/8) T_k^2] U - 1/4 Q_k U^2
//   - (3N^3/8 + N^2/8) X_k + (3N^2/8 + N/8) Y_k - N/4 U X_k + 1/4 Y_k U.
// Regrouped as L + U * R with L, R quadratic, then U * R is expanded with
// z_i^2 = 1.
struct InterParts {
  Eigen::MatrixXd lpair, rpair;
  Eigen::VectorXd rrow;
  double constant = 0.0;
  double r_const = 0.0;

  double pair(std::size_t i, std::size_t j) const {
    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
    return lpair(ii, jj) + (rrow(ii) + rrow(jj) - 2.0 * rpair(ii, jj) + r_const);
  }
  // Each quadruple collects R over its six pairs: every pair meets U on the
  // complementary pair exactly once.
  double quad(std::size_t a, std::size_t b, std::size_t c, std::size_t e) const {
    auto r = [&](std::size_t p, std::size_t q) { return rpair(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)); };
    return r(a, b) + r(a, c) + r(a, e) + r(b, c) + r(b, e) + r(c, e);
  }
};

InterParts inter_parts(const Dataset& data) {
  const std::size_t n = data.size(), d = data.dim();
  const double nn = static_cast<double>(n);
  const auto s = feature_sums(data);
  const double alpha = -(3.0 * nn * nn * nn / 8.0 + nn * nn / 8.0);
  const double beta = 3.0 * nn * nn / 8.0 + nn / 8.0;

  InterParts p;
  double u_coeff = 0.0, l_const = 0.0, r_u = 0.0, shift = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double q = s.sum_sq[k], t = s.sum[k];
    u_coeff += (nn * nn / 4.0 - 3.0 * nn / 8.0) * q - 5.0 * nn / 8.0 * t * t;
    l_const += beta * t * t;
    r_u += -0.25 * q;
    p.r_const += 0.25 * t * t;
    // z-independent gap between the expansion above and the raw objective.
    shift += -std::pow(nn, 4) * q / 16.0 - nn * nn * nn * q / 16.0 + nn * nn * nn * t * t / 16.0 -
             nn * nn * q / 8.0 - 5.0 * nn * nn * t * t / 16.0;
  }

  p.lpair = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  p.rpair = p.lpair;
  double r_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double lv = u_coeff, rv = r_u;
      for (std::size_t k = 0; k < d; ++k) {
        const double xi = data(i, k), xj = data(j, k), t = s.sum[k];
        lv += alpha * xi * xj + beta * t * (xi + xj);
        rv += -nn / 4.0 * xi * xj + 0.25 * t * (xi + xj);
      }
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      p.lpair(ii, jj) = p.lpair(jj, ii) = lv;
      p.rpair(ii, jj) = p.rpair(jj, ii) = rv;
      r_total += rv;
    }
  }
  p.rrow = p.rpair.rowwise().sum();
  p.constant = l_const + r_total + shift;
  return p;
}

}  // namespace

std::size_t inter_term_count(std::size_t n) noexcept {
  const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  return pairs + (n < 4 ? 0 : n * (n - 1) * (n - 2) * (n - 3) / 24);
}

SpinPolynomial build_inter(const Dataset& data) {
  const std::size_t n = data.size();
  const auto parts = inter_parts(data);
  const std::size_t quads = inter_term_count(n) - n * (n - 1) / 2;
  PolynomialBuilder b(n);
  b.reserve(n * (n - 1) / 2 + quads, n * (n - 1) + 4 * quads);
  b.add_constant(parts.constant);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) b.add({var(i), var(j)}, parts.pair(i, j));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t bb = a + 1; bb < n; ++bb) {
      for (std::size_t c = bb + 1; c < n; ++c) {
        for (std::size_t e = c + 1; e < n; ++e) b.add({var(a), var(bb), var(c), var(e)}, parts.quad(a, bb, c, e));
      }
    }
  }
  return b.build();
}

CoefficientMagnitudes objective_coefficient_magnitudes(ObjectiveKind kind, const Dataset& data) {
  if (kind != ObjectiveKind::inter) {
    const auto p = build_objective(kind, data);
    return {p.max_abs_coefficient(), p.abs_coefficient_sum()};
  }
  const std::size_t n = data.size();
  const auto parts = inter_parts(data);
  CoefficientMagnitudes m;
  auto take = [&m](double c) {
    m.max_abs = std::max(m.max_abs, std::abs(c));
    m.abs_sum += std::abs(c);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) take(parts.pair(i, j));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t bb = a + 1; bb < n; ++bb) {
      for (std::size_t c = bb + 1; c < n; ++c) {
        for (std::size_t e = c + 1; e < n; ++e) take(parts.quad(a, bb, c, e));
      }
    }
  }
  return m;
}

double objective_max_abs_coefficient(ObjectiveKind kind, const Dataset& data) {
  return objective_coefficient_magnitudes(kind, data).max_abs;
}

SpinPolynomial build_combined(const Dataset& data) {
  const std::size_t n = data.size(), d = data.dim();
  const double nn = static_cast<double>(n);
  const auto s = feature_sums(data);
  double constant = 0.0;
  for (std::size_t k = 0; k < d; ++k) constant -= nn * nn / 4.0 * (nn * s.sum_sq[k] - s.sum[k] * s.sum[k]);
  // Pair coefficient of -N (N_+ N_-)^2 |mu_+ - mu_-|^2, leading factor N included.
  return pairwise(n, constant, [&](std::size_t i, std::size_t j) {
    double a = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double xi = data(i, k), xj = data(j, k), t = s.sum[k];
      a += -0.5 * t * t + nn / 2.0 * t * (xi + xj) - nn * nn / 2.0 * xi * xj;
    }
    return nn * a;
  });
}

SpinPolynomial build_objective(ObjectiveKind kind, const Dataset& data) {
  switch (kind) {
    case ObjectiveKind::weighted_maxcut: return build_weighted_maxcut(data);
    case ObjectiveKind::intra: return build_intra(data);
    case ObjectiveKind::intra_star: return build_intra_star(data);
    case ObjectiveKind::inter: return build_inter(data);
    case ObjectiveKind::combined: return build_combined(data);
  }
  throw ConfigError("unhandled objective kind");
}

}  // namespace hamclust
