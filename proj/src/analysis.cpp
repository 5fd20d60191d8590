#include "qma/analysis.hpp"

#include <deque>

#include "qma/error.hpp"

namespace qma {

namespace {

Subspace from_echelon(const Echelon& e, std::size_t ambient, const FieldContext& f) {
  std::vector<Vec> rows;
  for (const auto& r : e.rref()) rows.push_back(to_dense(r, ambient, f));
  return Subspace::span(rows, ambient, f);
}

}  // namespace

Subspace Subspace::span(const std::vector<Vec>& vectors, std::size_t ambient, const FieldContext& f) {
  Echelon e(ambient, f);
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw Error(ErrorCode::DimensionMismatch, "vector length does not match ambient dimension");
    e.insert(v);
  }
  Subspace s(ambient, f);
  for (const auto& r : e.rref()) {
    s.pivots_.push_back(r.front().first);
    s.basis_.push_back(to_dense(r, ambient, f));
  }
  return s;
}

Subspace Subspace::coordinate(const std::vector<std::size_t>& indices, std::size_t ambient, const FieldContext& f) {
  std::vector<Vec> vs;
  for (std::size_t i : indices) {
    Vec v(ambient, f.zero());
    v.at(i) = f.one();
    vs.push_back(std::move(v));
  }
  return span(vs, ambient, f);
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length does not match ambient dimension");
  // RREF: the combination is read off the pivot columns
  Vec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Scalar c = -r[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!basis_[i][j].is_zero()) r[j].add_product(c, basis_[i][j]);
  }
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& o) const {
  for (const auto& v : o.basis_)
    if (!contains(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::size_t generated_algebra_dim(const Representation& r) {
  const FieldContext& f = r.field();
  const std::size_t full = r.dim * r.dim;
  Echelon span(full, f);
  std::deque<Matrix> todo;
  Matrix id = Matrix::identity(r.dim, f);
  span.insert(id.flat());
  todo.push_back(std::move(id));
  // word matrices are closed under right multiplication by generators
  while (!todo.empty() && span.rank() < full) {
    Matrix m = std::move(todo.front());
    todo.pop_front();
    for (const auto& a : r.action) {
      Matrix p = m * a;
      if (span.insert(p.flat())) todo.push_back(std::move(p));
      if (span.rank() == full) break;
    }
  }
  return span.rank();
}

bool is_absolutely_simple(const Representation& r) { return generated_algebra_dim(r) == r.dim * r.dim; }

Subspace invariant_closure(const Representation& r, const std::vector<Vec>& vectors) {
  const FieldContext& f = r.field();
  Echelon span(r.dim, f);
  std::deque<Vec> todo;
  for (const auto& v : vectors) {
    if (v.size() != r.dim) throw Error(ErrorCode::DimensionMismatch, "vector length does not match module dimension");
    if (span.insert(v)) todo.push_back(v);
  }
  while (!todo.empty() && span.rank() < r.dim) {
    Vec v = std::move(todo.front());
    todo.pop_front();
    for (const auto& a : r.action) {
      Vec w = row_times(v, a);
      if (span.insert(w)) todo.push_back(std::move(w));
    }
  }
  return from_echelon(span, r.dim, f);
}

bool has_invariant_complement(const Representation& r, const Subspace& w) {
  if (w.ambient() != r.dim) throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension does not match module");
  const FieldContext& f = r.field();
  const std::size_t t = r.dim, k = w.dim();
  // action of each generator on W in the RREF basis
  std::vector<Matrix> restricted;
  for (const auto& a : r.action) {
    Matrix b(k, k, f);
    for (std::size_t i = 0; i < k; ++i) {
      Vec img = row_times(w.basis()[i], a);
      Vec residual = img;
      for (std::size_t j = 0; j < k; ++j) {
        b(i, j) = img[w.pivots()[j]];
        const Scalar c = -b(i, j);
        if (c.is_zero()) continue;
        for (std::size_t col = 0; col < t; ++col)
          if (!w.basis()[j][col].is_zero()) residual[col].add_product(c, w.basis()[j][col]);
      }
      for (const auto& x : residual)
        if (!x.is_zero()) throw Error(ErrorCode::NotInvariant, "subspace is not invariant");
    }
    restricted.push_back(std::move(b));
  }
  if (k == 0 || k == t) return true;

  // unknown pi (t x k), index a*k + j
  std::vector<std::pair<SparseRow, Scalar>> eqs;
  for (std::size_t g = 0; g < r.action.size(); ++g) {
    const Matrix& A = r.action[g];
    const Matrix& B = restricted[g];
    // (A pi - pi B)(i, j) = 0
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        std::map<std::size_t, Scalar> acc;
        for (std::size_t a = 0; a < t; ++a)
          if (!A(i, a).is_zero()) acc[a * k + j] += A(i, a);
        for (std::size_t l = 0; l < k; ++l)
          if (!B(l, j).is_zero()) acc[i * k + l] -= B(l, j);
        SparseRow row;
        for (auto& [c, v] : acc)
          if (!v.is_zero()) row.emplace_back(c, v);
        if (!row.empty()) eqs.emplace_back(std::move(row), f.zero());
      }
  }
  // w_i pi = e_i
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      SparseRow row;
      for (std::size_t a = 0; a < t; ++a)
        if (!w.basis()[i][a].is_zero()) row.emplace_back(a * k + j, w.basis()[i][a]);
      eqs.emplace_back(std::move(row), i == j ? f.one() : f.zero());
    }
  return solve_affine(eqs, t * k, f).has_value();
}

CommutantAlgebra commutant(const Representation& r) { return {intertwiners(r, r)}; }

Subspace radical_of_commutant(const CommutantAlgebra& c, const Representation& r) {
  const FieldContext& f = r.field();
  if (f.characteristic() != 0 && f.characteristic() <= r.dim)
    throw Error(ErrorCode::BadCharacteristic, "trace-form radical needs characteristic 0 or larger than the dimension");
  const std::size_t d = c.dim();
  std::vector<SparseRow> gram;
  for (std::size_t i = 0; i < d; ++i) {
    Vec row(d, f.zero());
    for (std::size_t j = 0; j < d; ++j) row[j] = (c.basis[i] * c.basis[j]).trace();
    gram.push_back(to_sparse(row));
  }
  return Subspace::span(null_space(gram, d, f), d, f);
}

Matrix combine(const CommutantAlgebra& c, const Vec& coeffs, const Representation& r) {
  Matrix m(r.dim, r.dim, r.field());
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (!coeffs.at(i).is_zero()) m += c.basis[i].scaled(coeffs[i]);
  return m;
}

const char* certificate_name(Certificate c) {
  switch (c) {
    case Certificate::Indecomposable: return "indecomposable";
    case Certificate::Decomposable: return "decomposable";
    case Certificate::Inconclusive: break;
  }
  return "inconclusive";
}

IndecomposabilityResult indecomposability_certificate(const Representation& r) {
  IndecomposabilityResult out;
  const CommutantAlgebra c = commutant(r);
  const Subspace rad = radical_of_commutant(c, r);
  out.commutant_dim = c.dim();
  out.radical_dim = rad.dim();
  if (c.dim() - rad.dim() == 1) {
    out.kind = Certificate::Indecomposable;
    return out;
  }
  // b^2 = lambda b with lambda != 0 gives the idempotent b / lambda
  for (const auto& b : c.basis) {
    const Matrix b2 = b * b;
    std::size_t k = 0;
    while (k < b.flat().size() && b.flat()[k].is_zero()) ++k;
    if (k == b.flat().size()) continue;
    const Scalar lambda = b2.flat()[k] / b.flat()[k];
    if (lambda.is_zero() || b2 != b.scaled(lambda)) continue;
    Matrix e = b.scaled(lambda.inv());
    if (e.is_identity()) continue;
    out.kind = Certificate::Decomposable;
    out.idempotent = std::move(e);
    return out;
  }
  out.kind = Certificate::Inconclusive;
  return out;
}

std::optional<Subspace> uncomplemented_submodule(const Representation& r) {
  const FieldContext& f = r.field();
  std::vector<Subspace> seen;
  for (std::size_t i = 0; i < r.dim; ++i) {
    Vec v(r.dim, f.zero());
    v[i] = f.one();
    Subspace w = invariant_closure(r, {v});
    if (w.dim() == r.dim) continue;
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == w;
    if (dup) continue;
    if (!has_invariant_complement(r, w)) return w;
    seen.push_back(std::move(w));
  }
  return std::nullopt;
}

}  // namespace qma
