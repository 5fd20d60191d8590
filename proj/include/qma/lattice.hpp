#pragma once

// Integer matrices, Smith normal form, and the PI degree of a quantum affine
// space read off from its commutation-exponent matrix.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace qma {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_antisymmetric() const;
  bool is_diagonal() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  void negate_row(std::size_t r);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix& o) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Determinant by fraction-free elimination (Bareiss).
mpz_class determinant(const IntMatrix& a);

/// U * A * V = D, U and V unimodular, D diagonal with d1 | d2 | ... >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<mpz_class> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Cardinality of the image of Z^n --H--> Z^n --> (Z/m)^n.
mpz_class image_cardinality_mod(const IntMatrix& h, long m);

/// sqrt of image_cardinality_mod; throws NotAPerfectSquare.
mpz_class pi_degree(const IntMatrix& h, long m);

/// Closed form for Mat_n(q): m^(n^2/2) for even n, m^((n^2-1)/2) for odd n.
mpz_class pi_degree_dd_closed_form(int n, long m);

/// Builds the dd(n) presentation, erases derivations, and runs the pipeline.
mpz_class pi_degree_dd(int n, long m);

/// Matrix text format: "rows cols" followed by the integer entries.
IntMatrix parse_int_matrix(const std::string& text);
std::string format_int_matrix(const IntMatrix& m);

}  // namespace qma
