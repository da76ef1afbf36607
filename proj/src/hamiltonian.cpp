#include "hamclust/hamiltonian.hpp"

#include <string>

#include "hamclust/error.hpp"

namespace hamclust {

std::vector<double> hamiltonian_diagonal(const SpinPolynomial& poly, std::size_t max_vars) {
  const std::size_t n = poly.num_vars();
  if (n > max_vars || n >= 63) {
    throw SolverError("hamiltonian_diagonal: " + std::to_string(n) + " variables exceeds the cap of " +
                      std::to_string(max_vars));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> diag(dim);
  std::vector<std::int8_t> z(n);
  for (std::uint64_t b = 0; b < dim; ++b) {
    for (std::size_t i = 0; i < n; ++i) z[i] = ((b >> (n - 1 - i)) & 1u) ? -1 : 1;
    diag[b] = evaluate(poly, z);
  }
  return diag;
}

}  // namespace hamclust
