#pragma once

#include <vector>

#include "diagalg/algebra.hpp"
#include "diagalg/coeff.hpp"
#include "diagalg/sparse_matrix.hpp"

// Data-parallel assembly loops. Each kernel has a serial reference and an
// OpenMP version; both return identical results.
namespace diagalg::kernels {

struct DefectReport {
  Index nonzero_columns = 0;
  Index first_bad_column = -1;  // -1 when outer * inner == 0
};

namespace serial {

// Row-major dim x dim table of basis products.
std::vector<BasisProduct> product_table(const AlgebraContext& ctx);
SparseMatrix materialize(const ColumnSource& source);
SparseMatrix transpose(const ColumnSource& source);
// Columns of outer * inner that are nonzero in the ring (entries read mod p
// for prime fields, as integers otherwise).
DefectReport composition_defect(const ColumnSource& outer, const ColumnSource& inner, const RingSpec& ring);

}  // namespace serial

namespace omp {

std::vector<BasisProduct> product_table(const AlgebraContext& ctx);
SparseMatrix materialize(const ColumnSource& source);
SparseMatrix transpose(const ColumnSource& source);
DefectReport composition_defect(const ColumnSource& outer, const ColumnSource& inner, const RingSpec& ring);

int max_threads();

}  // namespace omp

}  // namespace diagalg::kernels
