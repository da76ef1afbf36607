#include "hamclust/quadratize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "hamclust/error.hpp"
#include "hamclust/solvers.hpp"

namespace hamclust {

namespace {

using Monomial = std::vector<VarIndex>;
using PseudoBoolean = std::map<Monomial, double>;

// prod_{i in T} (2 y_i - 1) = sum over subsets S of T of 2^|S| (-1)^(|T|-|S|) y_S.
PseudoBoolean to_pseudo_boolean(const SpinPolynomial& poly) {
  PseudoBoolean out;
  out[{}] += poly.constant();
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    const auto idx = poly.indices(t);
    const std::size_t k = idx.size();
    if (k > 30) throw SolverError("term degree too large to expand");
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      Monomial m;
      for (std::size_t b = 0; b < k; ++b) {
        if (mask & (1u << b)) m.push_back(idx[b]);
      }
      const double sign = ((k - m.size()) % 2) ? -1.0 : 1.0;
      out[m] += sign * std::ldexp(poly.coefficient(t), static_cast<int>(m.size()));
    }
  }
  std::erase_if(out, [](const auto& kv) { return !kv.first.empty() && kv.second == 0.0; });
  return out;
}

std::optional<std::pair<VarIndex, VarIndex>> most_frequent_pair(const PseudoBoolean& pb) {
  std::map<std::pair<VarIndex, VarIndex>, std::size_t> count;
  for (const auto& [m, c] : pb) {
    if (m.size() < 3) continue;
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a + 1; b < m.size(); ++b) ++count[{m[a], m[b]}];
    }
  }
  if (count.empty()) return std::nullopt;
  auto best = count.begin();
  for (auto it = count.begin(); it != count.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

}  // namespace

double default_quadratization_penalty(const SpinPolynomial& poly) {
  const auto pb = to_pseudo_boolean(poly);
  double m = 0.0;
  std::size_t terms = 0;
  for (const auto& [mono, c] : pb) {
    if (mono.empty()) continue;
    m = std::max(m, std::abs(c));
    ++terms;
  }
  return terms == 0 ? 1.0 : 2.0 * m * static_cast<double>(terms);
}

Quadratization quadratize(const SpinPolynomial& poly, std::optional<double> penalty) {
  Quadratization q;
  q.num_original = poly.num_vars();
  q.penalty = penalty ? *penalty : default_quadratization_penalty(poly);
  if (!(q.penalty > 0.0) || !std::isfinite(q.penalty)) throw ConfigError("quadratization penalty must be positive");
  if (poly.degree() <= 2) {
    q.form = spin_to_binary(poly);
    return q;
  }

  auto pb = to_pseudo_boolean(poly);
  auto next = static_cast<VarIndex>(poly.num_vars());
  const double big = q.penalty;
  while (auto pair = most_frequent_pair(pb)) {
    const auto [a, b] = *pair;
    const VarIndex w = next++;
    q.auxiliaries.push_back({w, a, b});
    PseudoBoolean updated;
    for (auto& [m, c] : pb) {
      if (m.size() >= 3 && std::binary_search(m.begin(), m.end(), a) && std::binary_search(m.begin(), m.end(), b)) {
        Monomial r;
        for (VarIndex v : m) {
          if (v != a && v != b) r.push_back(v);
        }
        r.push_back(w);
        updated[r] += c;
      } else {
        updated[m] += c;
      }
    }
    updated[{a, b}] += big;
    updated[{a, w}] += -2.0 * big;
    updated[{b, w}] += -2.0 * big;
    updated[{w}] += 3.0 * big;
    pb = std::move(updated);
  }

  const std::size_t total = next;
  double offset = 0.0;
  std::vector<double> linear(total, 0.0);
  std::vector<QuadraticEntry> quadratic;
  for (const auto& [m, c] : pb) {
    if (m.empty()) offset += c;
    else if (m.size() == 1) linear[m[0]] += c;
    else if (c != 0.0) quadratic.push_back({m[0], m[1], c});
  }
  q.form = BinaryQuadraticForm(total, offset, std::move(linear), std::move(quadratic));
  return q;
}

std::vector<std::uint8_t> lift(const Quadratization& q, std::span<const std::uint8_t> original) {
  if (original.size() != q.num_original) {
    throw DataError("expected " + std::to_string(q.num_original) + " original variables, got " +
                    std::to_string(original.size()));
  }
  std::vector<std::uint8_t> y(original.begin(), original.end());
  y.resize(q.form.num_vars(), 0);
  for (const auto& aux : q.auxiliaries) y[aux.index] = static_cast<std::uint8_t>(y[aux.left] & y[aux.right]);
  return y;
}

QuadratizationCheck verify_quadratization(const SpinPolynomial& poly, const Quadratization& q, double tolerance) {
  if (q.num_original != poly.num_vars()) throw DataError("quadratization does not belong to this polynomial");
  BruteForceOptions opts;
  opts.collect_minimizers = true;
  opts.tie_tolerance = tolerance;
  const auto lhs = brute_force(poly, opts);
  const auto rhs = brute_force(binary_to_spin(q.form), opts);

  std::vector<SpinAssignment> projected;
  for (const auto& z : rhs.minimizers) {
    std::vector<std::int8_t> head(z.values().begin(), z.values().begin() + static_cast<std::ptrdiff_t>(q.num_original));
    projected.emplace_back(std::move(head));
  }
  std::sort(projected.begin(), projected.end());
  projected.erase(std::unique(projected.begin(), projected.end()), projected.end());

  QuadratizationCheck check;
  check.original_min = lhs.best_energy;
  check.quadratic_min = rhs.best_energy;
  check.original_minimizers = lhs.minimizers.size();
  check.projected_minimizers = projected.size();
  const double gap = std::abs(lhs.best_energy - rhs.best_energy);
  const double scale = std::max({1.0, std::abs(lhs.best_energy), std::abs(rhs.best_energy)});
  check.sound = gap <= tolerance * scale && projected == lhs.minimizers;
  return check;
}

}  // namespace hamclust
