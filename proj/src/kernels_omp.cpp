#include "diagalg/kernels.hpp"

#include <atomic>

#include <omp.h>

#include "kernels_common.hpp"

namespace diagalg::kernels::omp {

namespace {
constexpr Index kChunk = 2048;
}

int max_threads() { return omp_get_max_threads(); }

std::vector<BasisProduct> product_table(const AlgebraContext& ctx) {
  const auto d = static_cast<std::int64_t>(ctx.dim());
  std::vector<BasisProduct> table(d * d);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) table[i * d + j] = detail::basis_product(ctx, i, j);
  return table;
}

SparseMatrix materialize(const ColumnSource& source) {
  const Index cols = source.cols();
  const Index chunks = (cols + kChunk - 1) / kChunk;
  struct Piece {
    std::vector<Index> count;
    std::vector<std::uint32_t> row;
    std::vector<std::int64_t> value;
  };
  std::vector<Piece> pieces(chunks);
#pragma omp parallel
  {
    SparseColumn col;
#pragma omp for schedule(dynamic)
    for (Index c = 0; c < chunks; ++c) {
      auto& p = pieces[c];
      const Index end = std::min(cols, (c + 1) * kChunk);
      for (Index j = c * kChunk; j < end; ++j) {
        source.column(j, col);
        p.count.push_back(static_cast<Index>(col.size()));
        for (const auto& e : col) {
          p.row.push_back(static_cast<std::uint32_t>(e.row));
          p.value.push_back(e.value);
        }
      }
    }
  }
  std::vector<Index> start(cols + 1, 0);
  std::vector<Index> offset(chunks + 1, 0);
  Index j = 0;
  for (Index c = 0; c < chunks; ++c) {
    for (auto n : pieces[c].count) {
      start[j + 1] = start[j] + n;
      ++j;
    }
    offset[c + 1] = offset[c] + static_cast<Index>(pieces[c].row.size());
  }
  std::vector<std::uint32_t> row(start.back());
  std::vector<std::int64_t> value(start.back());
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < chunks; ++c) {
    std::copy(pieces[c].row.begin(), pieces[c].row.end(), row.begin() + offset[c]);
    std::copy(pieces[c].value.begin(), pieces[c].value.end(), value.begin() + offset[c]);
    Piece().row.swap(pieces[c].row);
  }
  return SparseMatrix::from_csc(source.rows(), std::move(start), std::move(row), std::move(value));
}

SparseMatrix transpose(const ColumnSource& source) {
  // Two streaming passes over the source (count, then fill) so a lazy source
  // is never materialized in its original orientation.
  const Index rows = source.rows(), cols = source.cols();
  std::vector<std::atomic<Index>> fill(rows);
  for (auto& f : fill) f.store(0, std::memory_order_relaxed);
#pragma omp parallel
  {
    SparseColumn col;
#pragma omp for schedule(dynamic, kChunk)
    for (Index j = 0; j < cols; ++j) {
      source.column(j, col);
      for (const auto& e : col) fill[e.row].fetch_add(1, std::memory_order_relaxed);
    }
  }

  std::vector<Index> start(rows + 1, 0);
  for (Index i = 0; i < rows; ++i) start[i + 1] = start[i] + fill[i].load(std::memory_order_relaxed);
  for (Index i = 0; i < rows; ++i) fill[i].store(start[i], std::memory_order_relaxed);

  std::vector<std::uint32_t> row(start.back());
  std::vector<std::int64_t> value(start.back());
#pragma omp parallel
  {
    SparseColumn col;
#pragma omp for schedule(dynamic, kChunk)
    for (Index j = 0; j < cols; ++j) {
      source.column(j, col);
      for (const auto& e : col) {
        const Index dst = fill[e.row].fetch_add(1, std::memory_order_relaxed);
        row[dst] = static_cast<std::uint32_t>(j);
        value[dst] = e.value;
      }
    }
  }

  // Slots within an output column were claimed in arbitrary order.
#pragma omp parallel
  {
    std::vector<std::pair<std::uint32_t, std::int64_t>> buf;
#pragma omp for schedule(dynamic, 256)
    for (Index i = 0; i < rows; ++i) {
      const Index a = start[i], b = start[i + 1];
      if (b - a < 2) continue;
      buf.clear();
      for (Index k = a; k < b; ++k) buf.emplace_back(row[k], value[k]);
      std::sort(buf.begin(), buf.end());
      for (Index k = a; k < b; ++k) {
        row[k] = buf[k - a].first;
        value[k] = buf[k - a].second;
      }
    }
  }
  return SparseMatrix::from_csc(cols, std::move(start), std::move(row), std::move(value));
}

DefectReport composition_defect(const ColumnSource& outer, const ColumnSource& inner, const RingSpec& ring) {
  const auto modulus = detail::defect_modulus(ring);
  Index bad = 0;
  Index first = inner.cols();
#pragma omp parallel
  {
    detail::ProductScratch scratch;
#pragma omp for schedule(dynamic, 256) reduction(+ : bad) reduction(min : first)
    for (Index j = 0; j < inner.cols(); ++j)
      if (detail::column_product_nonzero(outer, inner, j, modulus, scratch)) {
        ++bad;
        first = std::min(first, j);
      }
  }
  return {bad, bad ? first : -1};
}

}  // namespace diagalg::kernels::omp
