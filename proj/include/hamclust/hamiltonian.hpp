#pragma once

#include <cstddef>
#include <vector>

#include "hamclust/polynomial.hpp"

namespace hamclust {

inline constexpr std::size_t kMaxDiagonalVars = 20;

/// Diagonal of the Z-basis Hamiltonian obtained by replacing z_i with Pauli Z_i.
///
/// Entry b is f(z) with z_i = +1 when bit i of b is 0 and -1 otherwise
/// (Z|0> = +|0>, Z|1> = -|1>). Variable 0 is the most significant bit, so the
/// ordering matches the tensor product Z_0 (x) Z_1 (x) ... Throws SolverError
/// above `max_vars` variables.
std::vector<double> hamiltonian_diagonal(const SpinPolynomial& poly, std::size_t max_vars = kMaxDiagonalVars);

}  // namespace hamclust
