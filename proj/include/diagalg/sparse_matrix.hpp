#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

namespace diagalg {

using Index = std::int64_t;

// Matrix entries are machine integers: exact integers over Z, residues over
// Z/m. Rational complexes are stored with each differential scaled by a
// nonzero constant so that its entries are integers (this does not change
// homology over Q).
struct Entry {
  Index row;
  std::int64_t value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

using SparseColumn = std::vector<Entry>;

// Anything that can produce the columns of a matrix on demand. column() must
// be safe to call concurrently and must return entries sorted by row with no
// zero values and no repeated rows.
class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual void column(Index j, SparseColumn& out) const = 0;
};

struct Triplet {
  Index row;
  Index col;
  std::int64_t value;
};

// Compressed sparse column storage.
class SparseMatrix final : public ColumnSource {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols);

  // Duplicate (row, col) pairs are summed; zeros are dropped. When modulus is
  // nonzero the values are reduced into [0, modulus).
  static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets,
                                    std::uint64_t modulus = 0);
  static SparseMatrix from_columns(Index rows, std::vector<SparseColumn> columns);
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);
  static SparseMatrix identity(Index size);
  // Takes ownership of CSC arrays that already satisfy the column invariants.
  static SparseMatrix from_csc(Index rows, std::vector<Index> col_start, std::vector<std::uint32_t> row,
                               std::vector<std::int64_t> value);

  Index rows() const override { return rows_; }
  Index cols() const override { return static_cast<Index>(col_start_.size()) - 1; }
  void column(Index j, SparseColumn& out) const override;

  Index nnz() const { return static_cast<Index>(row_.size()); }
  std::int64_t at(Index row, Index col) const;
  SparseMatrix transpose() const;
  std::vector<std::vector<std::int64_t>> to_dense() const;
  std::vector<Triplet> triplets() const;

  // Raw CSC arrays, for builders in this library.
  const std::vector<Index>& col_start() const { return col_start_; }
  const std::vector<std::uint32_t>& row_index() const { return row_; }
  const std::vector<std::int64_t>& values() const { return value_; }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.col_start_ == b.col_start_ && a.row_ == b.row_ && a.value_ == b.value_;
  }

 private:
  friend class CscBuilder;

  Index rows_ = 0;
  std::vector<Index> col_start_{0};
  std::vector<std::uint32_t> row_;
  std::vector<std::int64_t> value_;
};

// Appends columns in order.
class CscBuilder {
 public:
  explicit CscBuilder(Index rows);
  void reserve(Index cols, Index nnz);
  void push_column(const SparseColumn& column);
  void append(const SparseMatrix& block);  // block.rows() must match
  SparseMatrix finish() &&;

 private:
  SparseMatrix m_;
};

using DenseIntMatrix = std::vector<std::vector<mpz_class>>;

DenseIntMatrix to_dense_mpz(const ColumnSource& m);

}  // namespace diagalg
