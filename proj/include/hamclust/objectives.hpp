#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hamclust/dataset.hpp"
#include "hamclust/polynomial.hpp"
#include "hamclust/spin.hpp"

namespace hamclust {

/// The five binary clustering objectives.
///
/// intra scales each intracluster term by N_s^2, intra_star by N_s. inter and
/// combined carry the joint factor N_+^2 N_-^2.
enum class ObjectiveKind { weighted_maxcut, intra, intra_star, inter, combined };

inline constexpr std::array<ObjectiveKind, 5> kAllObjectiveKinds = {
    ObjectiveKind::intra, ObjectiveKind::intra_star, ObjectiveKind::inter, ObjectiveKind::combined,
    ObjectiveKind::weighted_maxcut};

/// Canonical names: "maxcut", "intra", "intra-star", "inter", "combined".
std::string_view to_string(ObjectiveKind kind) noexcept;
/// Also accepts "weighted-maxcut", "intra*", "intra_star", "intrastar". Throws ConfigError.
ObjectiveKind parse_objective_kind(std::string_view name);

struct ClusterCounts {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
};

ClusterCounts counts(const SpinAssignment& z) noexcept;

/// Means of the two clusters; a centroid is std::nullopt when its cluster is empty.
struct CentroidPair {
  std::optional<Eigen::VectorXd> mu_plus;
  std::optional<Eigen::VectorXd> mu_minus;
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
};

CentroidPair centroids(const Dataset& data, const SpinAssignment& z);

/// l(mu, z, s): total squared distance from mu to the points with z_i == s.
double distance_l(const Dataset& data, const Eigen::VectorXd& mu, const SpinAssignment& z, int s);

/// Direct evaluation of an objective from centroids and l(). A term whose
/// cluster is empty contributes 0 (its N_s factor annihilates it).
double raw_objective(ObjectiveKind kind, const Dataset& data, const SpinAssignment& z);

/// N_+^2 N_-^2 [l(mu_+,z,+1) + l(mu_-,z,-1)]. Minimized trivially by putting
/// every point in one cluster, which is why no polynomial builder exists for
/// it; it is kept as a reference oracle.
double raw_intra_joint(const Dataset& data, const SpinAssignment& z);

/// -N N_+^2 N_-^2 ||mu_+ - mu_-||^2, the centroid-separation form of the
/// combined objective. 0 when either cluster is empty.
double centroid_separation_objective(const Dataset& data, const SpinAssignment& z);

/// a_ij = ||x_i - x_j||_2 on z_i z_j; nothing else.
SpinPolynomial build_weighted_maxcut(const Dataset& data);
SpinPolynomial build_intra(const Dataset& data);
/// a_ij = 0.5 * ||x_i - x_j||_2^2, summed over features in index order.
SpinPolynomial build_intra_star(const Dataset& data);
/// Degree-4 polynomial for the intercluster objective.
SpinPolynomial build_inter(const Dataset& data);
/// Number of non-constant terms build_inter produces for n points, zeros included.
std::size_t inter_term_count(std::size_t n) noexcept;
SpinPolynomial build_combined(const Dataset& data);

/// Dispatch on kind. Every builder's energy equals raw_objective(kind, ...)
/// for every assignment, constant included.
SpinPolynomial build_objective(ObjectiveKind kind, const Dataset& data);

struct CoefficientMagnitudes {
  double max_abs = 0.0;
  double abs_sum = 0.0;
};

/// max_abs_coefficient() and abs_coefficient_sum() of build_objective(kind,
/// data), without materializing the quartic Inter polynomial (the sum may
/// differ from the built polynomial's in the last bits).
CoefficientMagnitudes objective_coefficient_magnitudes(ObjectiveKind kind, const Dataset& data);
double objective_max_abs_coefficient(ObjectiveKind kind, const Dataset& data);

}  // namespace hamclust
