#include "qma/linalg.hpp"

#include <algorithm>

#include "qma/error.hpp"

namespace qma {

Matrix::Matrix(std::size_t rows, std::size_t cols, const FieldContext& f)
    : rows_(rows), cols_(cols), field_(&f), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(std::size_t n, const FieldContext& f) {
  Matrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::from_flat(std::size_t rows, std::size_t cols, const Vec& v, const FieldContext& f) {
  if (v.size() != rows * cols) throw Error(ErrorCode::DimensionMismatch, "flat vector has the wrong length");
  Matrix m(rows, cols, f);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) m.data_[i] = v[i];
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

Scalar Matrix::trace() const {
  Scalar t = field_->zero();
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_, *a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& v = a(i, k);
      if (v.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& w = b(k, j);
        if (!w.is_zero()) c(i, j).add_product(v, w);
      }
    }
  return c;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m(rows_, cols_, *field_);
  if (c.is_zero()) return m;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!data_[i].is_zero()) m.data_[i] = data_[i] * c;
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Vec row_times(const Vec& v, const Matrix& a) {
  if (v.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix");
  Vec out(a.cols(), a.field().zero());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& w = a(k, j);
      if (!w.is_zero()) out[j].add_product(v[k], w);
    }
  }
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

SparseRow to_sparse(const Vec& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  return r;
}

Vec to_dense(const SparseRow& r, std::size_t n, const FieldContext& f) {
  Vec v(n, f.zero());
  for (const auto& [c, x] : r) v.at(c) = x;
  return v;
}

// ---------------------------------------------------------------------------

Echelon::Echelon(std::size_t ncols, const FieldContext& f)
    : ncols_(ncols), field_(&f), row_of_pivot_(ncols, -1) {}

void Echelon::reduce(Vec& v) const {
  if (v.size() != ncols_) throw Error(ErrorCode::DimensionMismatch, "vector length does not match echelon width");
  for (std::size_t c = 0; c < ncols_; ++c) {
    const int r = row_of_pivot_[c];
    if (r < 0 || v[c].is_zero()) continue;
    const Scalar f = -v[c];
    for (const auto& [col, val] : rows_[static_cast<std::size_t>(r)]) v[col].add_product(f, val);
  }
}

bool Echelon::insert(Vec v) {
  reduce(v);
  std::size_t lead = 0;
  while (lead < ncols_ && v[lead].is_zero()) ++lead;
  if (lead == ncols_) return false;
  const Scalar inv = v[lead].inv();
  SparseRow row;
  row.emplace_back(lead, field_->one());
  for (std::size_t c = lead + 1; c < ncols_; ++c)
    if (!v[c].is_zero()) row.emplace_back(c, v[c] * inv);
  row_of_pivot_[lead] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  pivots_.push_back(lead);
  return true;
}

bool Echelon::insert(const SparseRow& v) { return insert(to_dense(v, ncols_, *field_)); }

bool Echelon::contains(Vec v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<SparseRow> Echelon::rref() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  // back substitution from the last pivot upwards
  std::vector<SparseRow> done(rows_.size());
  std::vector<int> done_of_pivot(ncols_, -1);
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t r = order[k];
    Vec v = to_dense(rows_[r], ncols_, *field_);
    for (std::size_t c = pivots_[r] + 1; c < ncols_; ++c) {
      const int d = done_of_pivot[c];
      if (d < 0 || v[c].is_zero()) continue;
      const Scalar f = -v[c];
      for (const auto& [col, val] : done[static_cast<std::size_t>(d)]) v[col].add_product(f, val);
    }
    done[k] = to_sparse(v);
    done_of_pivot[pivots_[r]] = static_cast<int>(k);
  }
  return done;
}

std::vector<Vec> null_space(const std::vector<SparseRow>& equations, std::size_t ncols,
                            const FieldContext& f) {
  Echelon e(ncols, f);
  for (const auto& eq : equations) e.insert(eq);
  const auto rows = e.rref();
  std::vector<int> free_index(ncols, -1);
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t p : e.pivots()) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    free_index[c] = static_cast<int>(basis.size());
    Vec v(ncols, f.zero());
    v[c] = f.one();
    basis.push_back(std::move(v));
  }
  for (const auto& row : rows) {
    const std::size_t pivot = row.front().first;
    for (const auto& [col, val] : row) {
      if (col == pivot) continue;
      basis[static_cast<std::size_t>(free_index[col])][pivot] = -val;
    }
  }
  return basis;
}

std::optional<Vec> solve_affine(const std::vector<std::pair<SparseRow, Scalar>>& equations,
                                std::size_t ncols, const FieldContext& f) {
  Echelon e(ncols + 1, f);
  for (const auto& [row, rhs] : equations) {
    SparseRow aug = row;
    if (!rhs.is_zero()) aug.emplace_back(ncols, rhs);
    e.insert(aug);
  }
  for (std::size_t p : e.pivots())
    if (p == ncols) return std::nullopt;
  Vec x(ncols, f.zero());
  for (const auto& row : e.rref())
    if (row.back().first == ncols) x[row.front().first] = row.back().second;
  return x;
}

std::size_t rank(const Matrix& a) {
  Echelon e(a.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) e.insert(a.row(i));
  return e.rank();
}

bool is_invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

}  // namespace qma
