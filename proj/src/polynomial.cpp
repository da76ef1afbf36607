#include "hamclust/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hamclust/error.hpp"

namespace hamclust {
namespace {

// (degree, lexicographic) order used for storage and lookup.
bool tuple_less(std::span<const VarIndex> a, std::span<const VarIndex> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SpinPolynomial::SpinPolynomial(std::size_t num_vars, double constant)
    : num_vars_(num_vars), constant_(constant) {
  if (!std::isfinite(constant)) throw DataError("non-finite polynomial constant");
}

std::size_t SpinPolynomial::degree() const noexcept {
  return coefficients_.empty() ? 0 : indices(coefficients_.size() - 1).size();
}

double SpinPolynomial::coefficient_of(std::span<const VarIndex> tuple) const {
  if (tuple.empty()) return constant_;
  std::size_t lo = 0, hi = num_terms();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tuple_less(indices(mid), tuple)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < num_terms()) {
    auto t = indices(lo);
    if (std::equal(t.begin(), t.end(), tuple.begin(), tuple.end())) return coefficients_[lo];
  }
  return 0.0;
}

bool SpinPolynomial::spin_flip_symmetric() const noexcept {
  for (std::size_t t = 0; t < num_terms(); ++t) {
    if (indices(t).size() % 2 != 0) return false;
  }
  return true;
}

double SpinPolynomial::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (double c : coefficients_) m = std::max(m, std::abs(c));
  return m;
}

double SpinPolynomial::abs_coefficient_sum() const noexcept {
  double s = 0.0;
  for (double c : coefficients_) s += std::abs(c);
  return s;
}

SpinPolynomial SpinPolynomial::scaled(double factor) const {
  if (factor == 0.0) return SpinPolynomial(num_vars_);
  SpinPolynomial out = *this;
  out.constant_ *= factor;
  for (double& c : out.coefficients_) c *= factor;
  return out;
}

PolynomialBuilder::PolynomialBuilder(std::size_t num_vars) : num_vars_(num_vars) {}

PolynomialBuilder::PolynomialBuilder(const SpinPolynomial& start)
    : num_vars_(start.num_vars()),
      constant_(start.constant()),
      indices_(start.indices_),
      offsets_(start.offsets_),
      coefficients_(start.coefficients_) {}


void PolynomialBuilder::reserve(std::size_t terms, std::size_t index_slots) {
  coefficients_.reserve(terms);
  offsets_.reserve(terms + 1);
  indices_.reserve(index_slots);
}

void PolynomialBuilder::add(std::span<const VarIndex> tuple, double c) {
  if (c == 0.0) return;
  scratch_.assign(tuple.begin(), tuple.end());
  std::sort(scratch_.begin(), scratch_.end());
  // z_i^2 = 1: drop each adjacent equal pair.
  std::size_t w = 0;
  for (std::size_t r = 0; r < scratch_.size();) {
    if (r + 1 < scratch_.size() && scratch_[r] == scratch_[r + 1]) {
      r += 2;
    } else {
      scratch_[w++] = scratch_[r++];
    }
  }
  scratch_.resize(w);
  if (scratch_.empty()) {
    constant_ += c;
    return;
  }
  if (scratch_.back() >= num_vars_) {
    throw DataError("term index " + std::to_string(scratch_.back()) + " out of range for " +
                    std::to_string(num_vars_) + " variables");
  }
  push_term(scratch_, c);
}

void PolynomialBuilder::push_term(std::span<const VarIndex> tuple, double c) {
  if (in_order_ && !coefficients_.empty()) {
    const std::size_t last = coefficients_.size() - 1;
    std::span<const VarIndex> prev(indices_.data() + offsets_[last], offsets_[last + 1] - offsets_[last]);
    if (!tuple_less(prev, tuple)) in_order_ = false;
  }
  indices_.insert(indices_.end(), tuple.begin(), tuple.end());
  offsets_.push_back(indices_.size());
  coefficients_.push_back(c);
}

void PolynomialBuilder::add(const SpinPolynomial& p, double scale) {
  if (p.num_vars() > num_vars_) throw DataError("added polynomial has more variables than the builder");
  constant_ += scale * p.constant();
  for (std::size_t t = 0; t < p.num_terms(); ++t) {
    const double c = scale * p.coefficient(t);
    if (c == 0.0) continue;
    push_term(p.indices(t), c);
  }
}

SpinPolynomial PolynomialBuilder::build() const {
  const std::size_t n = coefficients_.size();
  auto tuple = [&](std::size_t t) {
    return std::span<const VarIndex>(indices_.data() + offsets_[t], offsets_[t + 1] - offsets_[t]);
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!in_order_) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return tuple_less(tuple(a), tuple(b)); });
  }

  if (!std::isfinite(constant_)) throw DataError("non-finite polynomial constant");
  SpinPolynomial out(num_vars_, constant_);
  out.coefficients_.reserve(n);
  out.offsets_.reserve(n + 1);
  out.indices_.reserve(indices_.size());
  for (std::size_t r = 0; r < n;) {
    auto key = tuple(order[r]);
    double sum = 0.0;
    std::size_t s = r;
    for (; s < n; ++s) {
      auto other = tuple(order[s]);
      if (!std::equal(key.begin(), key.end(), other.begin(), other.end())) break;
      sum += coefficients_[order[s]];
    }
    if (!std::isfinite(sum)) throw DataError("non-finite polynomial coefficient");
    if (sum != 0.0) {
      out.indices_.insert(out.indices_.end(), key.begin(), key.end());
      out.offsets_.push_back(out.indices_.size());
      out.coefficients_.push_back(sum);
    }
    r = s;
  }
  return out;
}

double evaluate(const SpinPolynomial& poly, std::span<const std::int8_t> z) {
  if (z.size() != poly.num_vars()) {
    throw DataError("assignment has " + std::to_string(z.size()) + " spins, polynomial has " +
                    std::to_string(poly.num_vars()) + " variables");
  }
  double e = poly.constant();
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    int sign = 1;
    for (VarIndex i : poly.indices(t)) sign *= z[i];
    e += sign * poly.coefficient(t);
  }
  return e;
}

double evaluate(const SpinPolynomial& poly, const SpinAssignment& z) { return evaluate(poly, z.values()); }

SpinPolynomial linear_combination(double a, const SpinPolynomial& p, double b, const SpinPolynomial& q) {
  PolynomialBuilder builder(std::max(p.num_vars(), q.num_vars()));
  builder.add(p, a);
  builder.add(q, b);
  return builder.build();
}

SpinPolynomial operator+(const SpinPolynomial& p, const SpinPolynomial& q) {
  return linear_combination(1.0, p, 1.0, q);
}

SpinPolynomial multiply(const SpinPolynomial& p, const SpinPolynomial& q) {
  PolynomialBuilder builder(std::max(p.num_vars(), q.num_vars()));
  builder.add_constant(p.constant() * q.constant());
  std::vector<VarIndex> joined;
  for (std::size_t a = 0; a < p.num_terms(); ++a) {
    builder.add(p.indices(a), p.coefficient(a) * q.constant());
  }
  for (std::size_t b = 0; b < q.num_terms(); ++b) {
    builder.add(q.indices(b), q.coefficient(b) * p.constant());
  }
  for (std::size_t a = 0; a < p.num_terms(); ++a) {
    for (std::size_t b = 0; b < q.num_terms(); ++b) {
      auto ta = p.indices(a);
      auto tb = q.indices(b);
      joined.assign(ta.begin(), ta.end());
      joined.insert(joined.end(), tb.begin(), tb.end());
      builder.add(joined, p.coefficient(a) * q.coefficient(b));
    }
  }
  return builder.build();
}

}  // namespace hamclust
