#include "hamclust/solvers.hpp"

#include <string>

#include "hamclust/error.hpp"

namespace hamclust {

SpinState::SpinState(const SpinPolynomial& poly, SpinAssignment start) : poly_(&poly), z_(std::move(start)) {
  const std::size_t n = poly.num_vars();
  if (z_.size() != n) {
    throw DataError("start assignment has " + std::to_string(z_.size()) + " spins, polynomial has " +
                    std::to_string(n) + " variables");
  }
  std::vector<std::size_t> count(n + 1, 0);
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    for (VarIndex i : poly.indices(t)) ++count[i + 1];
  }
  for (std::size_t i = 0; i < n; ++i) count[i + 1] += count[i];
  incident_offsets_ = count;
  incident_terms_.resize(count[n]);
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    for (VarIndex i : poly.indices(t)) incident_terms_[count[i]++] = static_cast<std::uint32_t>(t);
  }
  value_.resize(poly.num_terms());
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    double v = poly.coefficient(t);
    for (VarIndex i : poly.indices(t)) v = z_[i] > 0 ? v : -v;
    value_[t] = v;
  }
  field_.assign(n, 0.0);
  resync();
}

void SpinState::flip(VarIndex i) {
  energy_ += delta(i);
  for (std::size_t p = incident_offsets_[i]; p < incident_offsets_[i + 1]; ++p) {
    const std::uint32_t t = incident_terms_[p];
    const double old = value_[t];
    value_[t] = -old;
    for (VarIndex k : poly_->indices(t)) field_[k] -= 2.0 * old;
  }
  z_.flip(i);
}

void SpinState::resync() {
  double e = poly_->constant();
  for (double v : value_) e += v;
  energy_ = e;
  for (std::size_t i = 0; i < field_.size(); ++i) {
    double f = 0.0;
    for (std::size_t p = incident_offsets_[i]; p < incident_offsets_[i + 1]; ++p) f += value_[incident_terms_[p]];
    field_[i] = f;
  }
}

}  // namespace hamclust
