#include "diagalg/sparse_matrix.hpp"

#include <algorithm>
#include <limits>

#include "diagalg/error.hpp"

namespace diagalg {

namespace {

void check_shape(Index rows, Index cols) {
  if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
  if (rows > std::numeric_limits<std::uint32_t>::max())
    throw ResourceGuard("matrix with " + std::to_string(rows) + " rows exceeds 32-bit row indexing");
}

std::int64_t reduce(std::int64_t v, std::uint64_t modulus) {
  if (modulus == 0) return v;
  const auto m = static_cast<std::int64_t>(modulus);
  v %= m;
  return v < 0 ? v + m : v;
}

}  // namespace

SparseMatrix::SparseMatrix(Index rows, Index cols) : rows_(rows), col_start_(cols + 1, 0) { check_shape(rows, cols); }

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets,
                                         std::uint64_t modulus) {
  check_shape(rows, cols);
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw InvalidArgument("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                            ") outside a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
  CscBuilder builder(rows);
  SparseColumn col;
  std::size_t k = 0;
  for (Index j = 0; j < cols; ++j) {
    col.clear();
    while (k < triplets.size() && triplets[k].col == j) {
      const Index r = triplets[k].row;
      std::int64_t v = 0;
      while (k < triplets.size() && triplets[k].col == j && triplets[k].row == r) {
        if (__builtin_add_overflow(v, reduce(triplets[k].value, modulus), &v))
          throw ResourceGuard("matrix entry overflows 64 bits");
        v = reduce(v, modulus);
        ++k;
      }
      if (v != 0) col.push_back({r, v});
    }
    builder.push_column(col);
  }
  return std::move(builder).finish();
}

SparseMatrix SparseMatrix::from_columns(Index rows, std::vector<SparseColumn> columns) {
  CscBuilder builder(rows);
  for (auto& c : columns) {
    std::sort(c.begin(), c.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    SparseColumn merged;
    for (const auto& e : c) {
      if (e.row < 0 || e.row >= rows) throw InvalidArgument("column entry row out of range");
      if (!merged.empty() && merged.back().row == e.row)
        merged.back().value += e.value;
      else
        merged.push_back(e);
    }
    std::erase_if(merged, [](const Entry& e) { return e.value == 0; });
    builder.push_column(merged);
  }
  return std::move(builder).finish();
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  const Index rows = static_cast<Index>(dense.size());
  const Index cols = rows ? static_cast<Index>(dense[0].size()) : 0;
  CscBuilder builder(rows);
  SparseColumn col;
  for (Index j = 0; j < cols; ++j) {
    col.clear();
    for (Index i = 0; i < rows; ++i) {
      if (static_cast<Index>(dense[i].size()) != cols) throw InvalidArgument("ragged dense matrix");
      if (dense[i][j] != 0) col.push_back({i, dense[i][j]});
    }
    builder.push_column(col);
  }
  return std::move(builder).finish();
}

SparseMatrix SparseMatrix::identity(Index size) {
  CscBuilder builder(size);
  for (Index j = 0; j < size; ++j) builder.push_column({{j, 1}});
  return std::move(builder).finish();
}

SparseMatrix SparseMatrix::from_csc(Index rows, std::vector<Index> col_start, std::vector<std::uint32_t> row,
                                    std::vector<std::int64_t> value) {
  if (col_start.empty() || col_start.front() != 0 || col_start.back() != static_cast<Index>(row.size()) ||
      row.size() != value.size())
    throw InvalidArgument("inconsistent CSC arrays");
  SparseMatrix m(rows, 0);
  m.col_start_ = std::move(col_start);
  m.row_ = std::move(row);
  m.value_ = std::move(value);
  return m;
}

void SparseMatrix::column(Index j, SparseColumn& out) const {
  out.clear();
  for (Index k = col_start_[j]; k < col_start_[j + 1]; ++k) out.push_back({static_cast<Index>(row_[k]), value_[k]});
}

std::int64_t SparseMatrix::at(Index row, Index col) const {
  auto first = row_.begin() + col_start_[col];
  auto last = row_.begin() + col_start_[col + 1];
  auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(row));
  return (it != last && *it == row) ? value_[it - row_.begin()] : 0;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols(), rows_);
  std::vector<Index> count(rows_ + 1, 0);
  for (auto r : row_) ++count[r + 1];
  for (Index i = 0; i < rows_; ++i) count[i + 1] += count[i];
  t.col_start_ = count;
  t.row_.resize(row_.size());
  t.value_.resize(value_.size());
  for (Index j = 0; j < cols(); ++j)
    for (Index k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      const Index dst = count[row_[k]]++;
      t.row_[dst] = static_cast<std::uint32_t>(j);
      t.value_[dst] = value_[k];
    }
  return t;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols(), 0));
  for (Index j = 0; j < cols(); ++j)
    for (Index k = col_start_[j]; k < col_start_[j + 1]; ++k) d[row_[k]][j] = value_[k];
  return d;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(row_.size());
  for (Index j = 0; j < cols(); ++j)
    for (Index k = col_start_[j]; k < col_start_[j + 1]; ++k) out.push_back({static_cast<Index>(row_[k]), j, value_[k]});
  return out;
}

CscBuilder::CscBuilder(Index rows) {
  check_shape(rows, 0);
  m_.rows_ = rows;
}

void CscBuilder::reserve(Index cols, Index nnz) {
  m_.col_start_.reserve(cols + 1);
  m_.row_.reserve(nnz);
  m_.value_.reserve(nnz);
}

void CscBuilder::push_column(const SparseColumn& column) {
  for (const auto& e : column) {
    m_.row_.push_back(static_cast<std::uint32_t>(e.row));
    m_.value_.push_back(e.value);
  }
  m_.col_start_.push_back(static_cast<Index>(m_.row_.size()));
}

void CscBuilder::append(const SparseMatrix& block) {
  if (block.rows() != m_.rows_) throw InvalidArgument("appended block has the wrong number of rows");
  const Index offset = static_cast<Index>(m_.row_.size());
  m_.row_.insert(m_.row_.end(), block.row_.begin(), block.row_.end());
  m_.value_.insert(m_.value_.end(), block.value_.begin(), block.value_.end());
  for (std::size_t j = 1; j < block.col_start_.size(); ++j) m_.col_start_.push_back(block.col_start_[j] + offset);
}

SparseMatrix CscBuilder::finish() && { return std::move(m_); }

DenseIntMatrix to_dense_mpz(const ColumnSource& m) {
  DenseIntMatrix d(m.rows(), std::vector<mpz_class>(m.cols()));
  SparseColumn col;
  for (Index j = 0; j < m.cols(); ++j) {
    m.column(j, col);
    for (const auto& e : col) d[e.row][j] = mpz_class(static_cast<long>(e.value));
  }
  return d;
}

}  // namespace diagalg
