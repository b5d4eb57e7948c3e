#pragma once

#include <vector>

#include <gmpxx.h>

#include "diagalg/coeff.hpp"
#include "diagalg/sparse_matrix.hpp"

namespace diagalg {

// Invariant factors d_1 | d_2 | ... | d_rank of an integer matrix (all > 0).
struct SNFResult {
  std::vector<mpz_class> factors;
  Index rank = 0;

  // Factors exceeding 1, i.e. the torsion of the cokernel.
  std::vector<mpz_class> torsion() const;
};

// Dense Smith normal form: repeatedly moves a nonzero entry of minimal absolute
// value to the pivot, clears its row and column, and restores divisibility.
// The matrix is consumed.
std::vector<mpz_class> smith_diagonal_dense(DenseIntMatrix a);

// Sparse elimination with a dense fallback below 64 x 64.
SNFResult smith_normal_form(const ColumnSource& m);

}  // namespace diagalg
