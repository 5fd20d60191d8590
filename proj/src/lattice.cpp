#include "qma/lattice.hpp"

#include <ostream>
#include <sstream>

#include "qma/builtins.hpp"
#include "qma/error.hpp"
#include "qma/structure.hpp"

namespace qma {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::BadFormat, "ragged matrix literal");
    for (long long v : r) data_.emplace_back(static_cast<long>(v));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_antisymmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& v = a(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

mpz_class determinant(const IntMatrix& in) {
  if (!in.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = in.rows();
  if (n == 0) return 1;
  IntMatrix a = in;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<mpz_class> SmithForm::invariant_factors() const {
  std::vector<mpz_class> d;
  const std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < k; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t k = std::min(rows, cols);

  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // pivot: smallest nonzero absolute value, first in row-major order
      std::size_t pr = rows, pc = cols;
      mpz_class best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          mpz_class mag = abs(a(i, j));
          if (pr == rows || mag < best) {
            best = mag;
            pr = i;
            pc = j;
          }
        }
      if (pr == rows) break;
      a.swap_rows(t, pr);
      u.swap_rows(t, pr);
      a.swap_cols(t, pc);
      v.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        mpz_class f;
        mpz_tdiv_q(f.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row_multiple(i, t, -f);
        u.add_row_multiple(i, t, -f);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        mpz_class f;
        mpz_tdiv_q(f.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col_multiple(j, t, -f);
        v.add_col_multiple(j, t, -f);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // the pivot must divide everything left; otherwise fold in the row
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      a.add_row_multiple(t, bad, 1);
      u.add_row_multiple(t, bad, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return SmithForm{std::move(u), std::move(a), std::move(v)};
}

mpz_class image_cardinality_mod(const IntMatrix& h, long m) {
  if (!h.is_square()) throw Error(ErrorCode::DimensionMismatch, "exponent matrix must be square");
  if (m < 2) throw Error(ErrorCode::BadOrder, "m must be at least 2");
  const SmithForm s = smith_normal_form(h);
  const mpz_class mm = m;
  mpz_class card = 1;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s.D(i, i).get_mpz_t(), mm.get_mpz_t());
    card *= mm / g;
  }
  return card;
}

mpz_class pi_degree(const IntMatrix& h, long m) {
  const mpz_class card = image_cardinality_mod(h, m);
  if (!mpz_perfect_square_p(card.get_mpz_t()))
    throw Error(ErrorCode::NotAPerfectSquare,
                "image cardinality " + card.get_str() + " is not a perfect square");
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), card.get_mpz_t());
  return root;
}

mpz_class pi_degree_dd_closed_form(int n, long m) {
  const unsigned long e = static_cast<unsigned long>(n % 2 == 0 ? n * n / 2 : (n * n - 1) / 2);
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(m), e);
  return r;
}

mpz_class pi_degree_dd(int n, long m) {
  if (m < 2 || m > 1'000'000) throw Error(ErrorCode::BadOrder, "m out of range");
  const FieldContext& f = make_field(Backend::CyclotomicRational, static_cast<int>(m));
  const Presentation p = builtin_dd(n, f);
  return pi_degree(quasipolynomial_matrix(p), m);
}

IntMatrix parse_int_matrix(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows == 0 || cols == 0)
    throw Error(ErrorCode::BadFormat, "matrix file must start with positive 'rows cols'");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::string tok;
      if (!(in >> tok)) throw Error(ErrorCode::BadFormat, "matrix file has too few entries");
      if (m(i, j).set_str(tok, 10) != 0)
        throw Error(ErrorCode::BadFormat, "bad integer entry '" + tok + "'");
    }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::BadFormat, "matrix file has trailing data");
  return m;
}

std::string format_int_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << m.rows() << " " << m.cols() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << "\n";
  }
  return os.str();
}

}  // namespace qma
