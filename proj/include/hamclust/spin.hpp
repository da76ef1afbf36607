#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hamclust {

/// A point in {-1,+1}^N.
///
/// Ordering follows the computational basis: position 0 is the most
/// significant digit and +1 sorts before -1, so `a < b` exactly when
/// `a.basis_index() < b.basis_index()`.
class SpinAssignment {
 public:
  SpinAssignment() = default;
  /// Throws DataError if any entry is not exactly -1 or +1.
  explicit SpinAssignment(std::vector<std::int8_t> spins);

  static SpinAssignment all_up(std::size_t n);
  /// Bit (n-1-i) of `index` set means spin i is -1.
  static SpinAssignment from_basis_index(std::uint64_t index, std::size_t n);

  std::size_t size() const noexcept { return spins_.size(); }
  bool empty() const noexcept { return spins_.empty(); }
  int operator[](std::size_t i) const noexcept { return spins_[i]; }
  std::span<const std::int8_t> values() const noexcept { return spins_; }

  void flip(std::size_t i) noexcept { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  void set(std::size_t i, int s);

  SpinAssignment negated() const;
  /// Requires size() <= 64.
  std::uint64_t basis_index() const;
  /// Number of +1 entries.
  std::size_t count_up() const noexcept;
  /// Cluster ids usable by the metrics: +1 -> 0, -1 -> 1.
  std::vector<int> cluster_ids() const;

  friend bool operator==(const SpinAssignment&, const SpinAssignment&) = default;
  friend std::strong_ordering operator<=>(const SpinAssignment& a, const SpinAssignment& b);

 private:
  std::vector<std::int8_t> spins_;
};

}  // namespace hamclust
