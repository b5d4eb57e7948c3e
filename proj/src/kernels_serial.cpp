#include "diagalg/kernels.hpp"

#include "kernels_common.hpp"

namespace diagalg::kernels::serial {

std::vector<BasisProduct> product_table(const AlgebraContext& ctx) {
  const std::size_t d = ctx.dim();
  std::vector<BasisProduct> table(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) table[i * d + j] = detail::basis_product(ctx, i, j);
  return table;
}

SparseMatrix materialize(const ColumnSource& source) {
  CscBuilder builder(source.rows());
  SparseColumn col;
  for (Index j = 0; j < source.cols(); ++j) {
    source.column(j, col);
    builder.push_column(col);
  }
  return std::move(builder).finish();
}

SparseMatrix transpose(const ColumnSource& source) {
  const Index rows = source.rows(), cols = source.cols();
  std::vector<Index> start(rows + 1, 0);
  SparseColumn col;
  for (Index j = 0; j < cols; ++j) {
    source.column(j, col);
    for (const auto& e : col) ++start[e.row + 1];
  }
  for (Index i = 0; i < rows; ++i) start[i + 1] += start[i];
  std::vector<std::uint32_t> row(start.back());
  std::vector<std::int64_t> value(start.back());
  std::vector<Index> next(start.begin(), start.end() - 1);
  for (Index j = 0; j < cols; ++j) {
    source.column(j, col);
    for (const auto& e : col) {
      const Index dst = next[e.row]++;
      row[dst] = static_cast<std::uint32_t>(j);
      value[dst] = e.value;
    }
  }
  return SparseMatrix::from_csc(cols, std::move(start), std::move(row), std::move(value));
}

DefectReport composition_defect(const ColumnSource& outer, const ColumnSource& inner, const RingSpec& ring) {
  DefectReport report;
  detail::ProductScratch scratch;
  const auto modulus = detail::defect_modulus(ring);
  for (Index j = 0; j < inner.cols(); ++j)
    if (detail::column_product_nonzero(outer, inner, j, modulus, scratch)) {
      if (report.first_bad_column < 0) report.first_bad_column = j;
      ++report.nonzero_columns;
    }
  return report;
}

}  // namespace diagalg::kernels::serial
