#pragma once

// Exact linear algebra over a FieldContext: dense matrices, sparse rows and
// an incremental row-echelon structure used for spans, ranks, null spaces
// and affine systems.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qma/scalar.hpp"

namespace qma {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const FieldContext& f);
  static Matrix identity(std::size_t n, const FieldContext& f);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldContext& field() const noexcept { return *field_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  /// Row-major flattening, length rows * cols.
  const Vec& flat() const noexcept { return data_; }
  static Matrix from_flat(std::size_t rows, std::size_t cols, const Vec& v, const FieldContext& f);

  bool is_zero() const;
  bool is_identity() const;
  Scalar trace() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix scaled(const Scalar& c) const;
  bool operator==(const Matrix& o) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  const FieldContext* field_ = nullptr;
  Vec data_;
};

/// v * A for a row vector v; skips zero entries of v and of A.
Vec row_times(const Vec& v, const Matrix& a);

/// Block diagonal matrix diag(a, b).
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// (column, value) pairs with strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

SparseRow to_sparse(const Vec& v);
Vec to_dense(const SparseRow& r, std::size_t n, const FieldContext& f);

/// Rows in echelon form, built incrementally. Each stored row has leading
/// coefficient 1 at its pivot column and no entries in earlier pivot columns
/// are required; reduce() eliminates pivots in increasing column order.
class Echelon {
 public:
  Echelon(std::size_t ncols, const FieldContext& f);

  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Reduces v in place against the stored rows.
  void reduce(Vec& v) const;
  /// Adds v if it is independent of the stored rows; returns whether it was.
  bool insert(Vec v);
  bool insert(const SparseRow& v);
  bool contains(Vec v) const;

  /// Fully reduced rows (reduced row echelon form), sorted by pivot.
  std::vector<SparseRow> rref() const;
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

 private:
  std::size_t ncols_;
  const FieldContext* field_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<int> row_of_pivot_;  // -1 if the column is free
};

/// Basis of {x : E x = 0} for the equations given as sparse rows over ncols
/// unknowns. One basis vector per free column, in increasing column order,
/// with a 1 in that column.
std::vector<Vec> null_space(const std::vector<SparseRow>& equations, std::size_t ncols,
                            const FieldContext& f);

/// A particular solution of E x = b (free unknowns set to zero), or nullopt
/// when the system is inconsistent. Each equation is (row, rhs).
std::optional<Vec> solve_affine(const std::vector<std::pair<SparseRow, Scalar>>& equations,
                                std::size_t ncols, const FieldContext& f);

std::size_t rank(const Matrix& a);
bool is_invertible(const Matrix& a);

}  // namespace qma
