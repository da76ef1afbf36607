#include "hamclust/spin.hpp"

#include <algorithm>
#include <string>

#include "hamclust/error.hpp"

namespace hamclust {

SpinAssignment::SpinAssignment(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] != 1 && spins_[i] != -1) {
      throw DataError("spin " + std::to_string(i) + " is " + std::to_string(spins_[i]) +
                      ", expected -1 or +1");
    }
  }
}

SpinAssignment SpinAssignment::all_up(std::size_t n) {
  return SpinAssignment(std::vector<std::int8_t>(n, 1));
}

SpinAssignment SpinAssignment::from_basis_index(std::uint64_t index, std::size_t n) {
  if (n > 64) throw DataError("basis index supports at most 64 spins");
  std::vector<std::int8_t> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool bit = (index >> (n - 1 - i)) & 1u;
    s[i] = bit ? -1 : 1;
  }
  return SpinAssignment(std::move(s));
}

void SpinAssignment::set(std::size_t i, int s) {
  if (s != 1 && s != -1) throw DataError("spin value must be -1 or +1");
  spins_.at(i) = static_cast<std::int8_t>(s);
}

SpinAssignment SpinAssignment::negated() const {
  SpinAssignment out = *this;
  for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
  return out;
}

std::uint64_t SpinAssignment::basis_index() const {
  if (spins_.size() > 64) throw DataError("basis index supports at most 64 spins");
  std::uint64_t b = 0;
  for (auto s : spins_) b = (b << 1) | (s < 0 ? 1u : 0u);
  return b;
}

std::size_t SpinAssignment::count_up() const noexcept {
  return static_cast<std::size_t>(std::count(spins_.begin(), spins_.end(), std::int8_t{1}));
}

std::vector<int> SpinAssignment::cluster_ids() const {
  std::vector<int> ids(spins_.size());
  std::transform(spins_.begin(), spins_.end(), ids.begin(), [](std::int8_t s) { return s > 0 ? 0 : 1; });
  return ids;
}

std::strong_ordering operator<=>(const SpinAssignment& a, const SpinAssignment& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.spins_[i] != b.spins_[i]) {
      return a.spins_[i] > b.spins_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return a.size() <=> b.size();
}

}  // namespace hamclust
