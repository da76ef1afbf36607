#include "hamclust/binary_form.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "hamclust/error.hpp"

namespace hamclust {

BinaryQuadraticForm::BinaryQuadraticForm(std::size_t num_vars, double offset, std::vector<double> linear,
                                         std::vector<QuadraticEntry> quadratic)
    : num_vars_(num_vars), offset_(offset), linear_(std::move(linear)), quadratic_(std::move(quadratic)) {
  if (linear_.size() != num_vars_) throw DataError("linear term count does not match num_vars");
  if (!std::isfinite(offset_)) throw DataError("non-finite offset");
  for (double c : linear_) {
    if (!std::isfinite(c)) throw DataError("non-finite linear coefficient");
  }
  for (std::size_t k = 0; k < quadratic_.size(); ++k) {
    const auto& q = quadratic_[k];
    if (!(q.i < q.j) || q.j >= num_vars_) {
      throw DataError("quadratic entry (" + std::to_string(q.i) + "," + std::to_string(q.j) +
                      ") is not an ordered in-range pair");
    }
    if (!std::isfinite(q.c)) throw DataError("non-finite quadratic coefficient");
    if (k > 0) {
      const auto& p = quadratic_[k - 1];
      if (!(std::pair(p.i, p.j) < std::pair(q.i, q.j))) throw DataError("quadratic entries not strictly ordered");
    }
  }
}

double evaluate(const BinaryQuadraticForm& form, std::span<const std::uint8_t> y) {
  if (y.size() != form.num_vars()) throw DataError("binary assignment size mismatch");
  double e = form.offset();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 1) throw DataError("binary assignment entries must be 0 or 1");
    if (y[i]) e += form.linear()[i];
  }
  for (const auto& q : form.quadratic()) {
    if (y[q.i] && y[q.j]) e += q.c;
  }
  return e;
}

BinaryQuadraticForm spin_to_binary(const SpinPolynomial& poly) {
  if (poly.degree() > 2) {
    throw DataError("spin_to_binary needs degree <= 2, got " + std::to_string(poly.degree()) +
                    "; quadratize first");
  }
  const std::size_t n = poly.num_vars();
  double offset = poly.constant();
  std::vector<double> linear(n, 0.0);
  std::vector<QuadraticEntry> quad;
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    auto idx = poly.indices(t);
    const double a = poly.coefficient(t);
    if (idx.size() == 1) {
      // a z = 2a y - a
      linear[idx[0]] += 2.0 * a;
      offset -= a;
    } else {
      // a z_i z_j = 4a y_i y_j - 2a y_i - 2a y_j + a
      quad.push_back({idx[0], idx[1], 4.0 * a});
      linear[idx[0]] -= 2.0 * a;
      linear[idx[1]] -= 2.0 * a;
      offset += a;
    }
  }
  return BinaryQuadraticForm(n, offset, std::move(linear), std::move(quad));
}

SpinPolynomial binary_to_spin(const BinaryQuadraticForm& form) {
  PolynomialBuilder b(form.num_vars());
  b.add_constant(form.offset());
  for (std::size_t i = 0; i < form.num_vars(); ++i) {
    const double c = form.linear()[i];
    if (c == 0.0) continue;
    b.add_constant(0.5 * c);
    b.add({static_cast<VarIndex>(i)}, 0.5 * c);
  }
  for (const auto& q : form.quadratic()) {
    const double c = 0.25 * q.c;
    b.add_constant(c);
    b.add({q.i}, c);
    b.add({q.j}, c);
    b.add({q.i, q.j}, c);
  }
  return b.build();
}

std::vector<std::uint8_t> to_binary(const SpinAssignment& z) {
  std::vector<std::uint8_t> y(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) y[i] = z[i] > 0 ? 1 : 0;
  return y;
}

SpinAssignment to_spins(std::span<const std::uint8_t> y) {
  std::vector<std::int8_t> z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 1) throw DataError("binary assignment entries must be 0 or 1");
    z[i] = y[i] ? 1 : -1;
  }
  return SpinAssignment(std::move(z));
}

}  // namespace hamclust
