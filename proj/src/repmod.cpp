#include "qma/repmod.hpp"

#include <algorithm>
#include <mutex>
#include <random>

#include "qma/builtins.hpp"
#include "qma/error.hpp"

namespace qma {

namespace {

struct FamilyName {
  Family family;
  const char* name;
};

constexpr FamilyName kFamilies[] = {
    {Family::DDN1, "dd-n1"},   {Family::DDN2, "dd-n2"},   {Family::DDVerma, "dd-verma"},
    {Family::REAN1, "rea-n1"}, {Family::REAN2, "rea-n2"}, {Family::REAN3, "rea-n3"},
    {Family::REAVerma, "rea-verma"}, {Family::Custom, "custom"},
};

std::shared_ptr<const Presentation> cached(const FieldContext& f, bool rea) {
  static std::mutex mu;
  static std::map<std::pair<const FieldContext*, bool>, std::shared_ptr<const Presentation>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{&f, rea}];
  if (!slot) slot = std::make_shared<const Presentation>(rea ? builtin_rea2(f) : builtin_dd2(f));
  return slot;
}

void require_nonzero(const Scalar& s, const char* name) {
  if (s.is_zero()) throw Error(ErrorCode::ZeroParameter, std::string(name) + " must be nonzero");
}

Representation blank(std::shared_ptr<const Presentation> p, std::size_t dim, Family fam) {
  Representation r;
  const FieldContext& f = p->field();
  r.presentation = std::move(p);
  r.dim = dim;
  r.family = fam;
  r.action.assign(r.presentation->num_generators(), Matrix(dim, dim, f));
  r.basis.resize(dim);
  return r;
}

// the four generator matrices of a rank-2 module, in generator order
struct Gens {
  Matrix &a, &b, &c, &d;
};
Gens gens(Representation& r) { return {r.action[0], r.action[1], r.action[2], r.action[3]}; }

std::string pair_label(char c, int a, int b) {
  return std::string(1, c) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string single_label(char c, int r) { return std::string(1, c) + "(" + std::to_string(r) + ")"; }

}  // namespace

const char* family_name(Family f) {
  for (const auto& e : kFamilies)
    if (e.family == f) return e.name;
  return "custom";
}

Family parse_family(std::string_view name) {
  for (const auto& e : kFamilies)
    if (name == e.name) return e.family;
  throw Error(ErrorCode::BadFormat, "unknown module family '" + std::string(name) + "'");
}

bool is_dd_family(Family f) { return f == Family::DDN1 || f == Family::DDN2 || f == Family::DDVerma; }

const Matrix& Representation::generator_matrix(std::string_view name) const {
  return action.at(presentation->generator(name));
}

std::shared_ptr<const Presentation> shared_dd2(const FieldContext& f) { return cached(f, false); }
std::shared_ptr<const Presentation> shared_rea2(const FieldContext& f) { return cached(f, true); }

const Scalar& param(const ParamList& params, std::string_view name) {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw Error(ErrorCode::BadParams, "missing parameter '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Mat_2(q) families

Representation dd_simple_n1(const FieldContext& f, const DDN1Params& prm) {
  require_nonzero(prm.alpha, "alpha");
  require_nonzero(prm.beta, "beta");
  require_nonzero(prm.lambda1, "lambda1");
  require_nonzero(prm.lambda2, "lambda2");
  const int m = f.m();
  Representation r = blank(shared_dd2(f), static_cast<std::size_t>(m * m), Family::DDN1);
  auto [z11, z12, z21, z22] = gens(r);
  auto idx = [m](int a, int b) { return static_cast<std::size_t>(a * m + b); };
  const Scalar q = f.q();
  const Scalar binv = prm.beta.inv();
  const Scalar ainv = prm.alpha.inv();
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const std::size_t i = idx(a, b);
      r.basis[i] = pair_label('e', a, b);
      if (a < m - 1) z11(i, idx(a + 1, b)) = f.q_pow(b);
      else z11(i, idx(0, b)) = f.q_pow(b) * prm.alpha;
      if (b > 0) z12(i, idx(a, b - 1)) = f.q_pow(b - a) * prm.lambda2;
      else z12(i, idx(a, m - 1)) = binv * prm.lambda2 * f.q_pow(-a);
      if (b < m - 1) z21(i, idx(a, b + 1)) = f.one();
      else z21(i, idx(a, 0)) = prm.beta;
      if (a > 0)
        z22(i, idx(a - 1, b)) = prm.lambda1 + q * prm.lambda2 - q * (f.one() - f.q_pow(-a)) * prm.lambda2;
      else
        z22(i, idx(m - 1, b)) = ainv * (prm.lambda1 + q * prm.lambda2);
    }
  }
  r.params = {{"alpha", prm.alpha}, {"beta", prm.beta}, {"lambda1", prm.lambda1}, {"lambda2", prm.lambda2}};
  return r;
}

Representation dd_simple_n2(const FieldContext& f, const DDN2Params& prm) {
  require_nonzero(prm.beta, "beta");
  require_nonzero(prm.lambda2, "lambda2");
  const int m = f.m();
  Representation r = blank(shared_dd2(f), static_cast<std::size_t>(m * m), Family::DDN2);
  auto [z11, z12, z21, z22] = gens(r);
  auto idx = [m](int a, int b) { return static_cast<std::size_t>(a * m + b); };
  const Scalar binv = prm.beta.inv();
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const std::size_t i = idx(a, b);
      r.basis[i] = pair_label('e', a, b);
      if (a > 0) z11(i, idx(a - 1, b)) = f.q_pow(b) * (f.q_pow(a) - f.one()) * prm.lambda2;
      if (b > 0) z12(i, idx(a, b - 1)) = f.q_pow(a + b) * prm.lambda2;
      else z12(i, idx(a, m - 1)) = binv * f.q_pow(a) * prm.lambda2;
      if (b < m - 1) z21(i, idx(a, b + 1)) = f.one();
      else z21(i, idx(a, 0)) = prm.beta;
      if (a < m - 1) z22(i, idx(a + 1, b)) = f.one();
      else if (!prm.gamma.is_zero()) z22(i, idx(0, b)) = prm.gamma;
    }
  }
  r.params = {{"beta", prm.beta}, {"gamma", prm.gamma.field() ? prm.gamma : f.zero()}, {"lambda2", prm.lambda2}};
  return r;
}

Representation dd_verma_quotient(const FieldContext& f, const DDVermaParams& prm) {
  require_nonzero(prm.lambda1, "lambda1");
  require_nonzero(prm.lambda2, "lambda2");
  if (prm.p < 1) throw Error(ErrorCode::BadParams, "p must be at least 1");
  const int m = f.m();
  const int len = prm.p * m;  // b ranges over [0, pm)
  Representation r = blank(shared_dd2(f), static_cast<std::size_t>(m * len), Family::DDVerma);
  auto [z11, z12, z21, z22] = gens(r);
  auto idx = [len](int a, int b) { return static_cast<std::size_t>(a * len + b); };
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < len; ++b) {
      const std::size_t i = idx(a, b);
      r.basis[i] = pair_label('f', a, b);
      if (b > 0) {
        // f(m, .) = lambda2 f(0, .)
        Scalar c = prm.lambda1 * f.q_pow(a) * (f.q_pow(b) - f.one());
        if (a < m - 1) z11(i, idx(a + 1, b - 1)) = c;
        else z11(i, idx(0, b - 1)) = c * prm.lambda2;
      }
      z12(i, i) = f.q_pow(a + b) * prm.lambda1;
      if (a < m - 1) z21(i, idx(a + 1, b)) = f.one();
      else z21(i, idx(0, b)) = prm.lambda2;
      if (b < len - 1) z22(i, idx(a, b + 1)) = f.one();
    }
  }
  r.params = {{"lambda1", prm.lambda1}, {"lambda2", prm.lambda2}};
  r.p = prm.p;
  return r;
}

// ---------------------------------------------------------------------------
// A_q(M_2) families

namespace {

// u11-eigenvalue of v u21^r
Scalar rea_mu(const FieldContext& f, const Scalar& l1, const Scalar& l2, int r) {
  return l1 + f.q_pow(-2) * (f.one() - f.q_pow(2 * r)) * l2;
}

// u12 coefficient on v u21^r, without the lambda3 term
Scalar rea_c(const FieldContext& f, const Scalar& l1, const Scalar& l2, int r) {
  return f.q_pow(-2) * (f.q_pow(2 * r) - f.one()) * l1 * l2 +
         (f.q_pow(2 * r) - f.q_pow(4 * r)) * f.q_pow(-4) * l2 * l2;
}

// lowest-weight string of length len: diagonal u11/u22, u21 raises, u12 lowers by c_r
Representation rea_string(const FieldContext& f, Family fam, int len, const Scalar& l1, const Scalar& l2,
                          char label) {
  Representation r = blank(shared_rea2(f), static_cast<std::size_t>(len), fam);
  auto [u11, u12, u21, u22] = gens(r);
  for (int k = 0; k < len; ++k) {
    const auto i = static_cast<std::size_t>(k);
    r.basis[i] = single_label(label, k);
    u11(i, i) = rea_mu(f, l1, l2, k);
    u22(i, i) = f.q_pow(2 * k) * l2;
    if (k > 0) u12(i, i - 1) = rea_c(f, l1, l2, k);
    if (k < len - 1) u21(i, i + 1) = f.one();
  }
  return r;
}

}  // namespace

Representation rea_n1(const FieldContext& f, const REAN1Params& prm) {
  require_nonzero(prm.beta, "beta");
  require_nonzero(prm.lambda2, "lambda2");
  const int n = f.rea_order();
  Representation r = rea_string(f, Family::REAN1, n, prm.lambda1, prm.lambda2, 'w');
  auto [u11, u12, u21, u22] = gens(r);
  const auto last = static_cast<std::size_t>(n - 1);
  for (std::size_t k = 1; k < static_cast<std::size_t>(n); ++k) u12(k, k - 1) += prm.lambda3;
  u12(0, last) += prm.beta.inv() * prm.lambda3;
  u21(last, 0) += prm.beta;
  r.params = {{"beta", prm.beta}, {"lambda1", prm.lambda1}, {"lambda2", prm.lambda2}, {"lambda3", prm.lambda3}};
  // v u12^n is a multiple of v; record the multiple
  Vec v(r.dim, f.zero());
  v[0] = f.one();
  for (int k = 0; k < n; ++k) v = row_times(v, u12);
  r.metadata["alpha_induced"] = v[0].to_string();
  return r;
}

Representation rea_n2(const FieldContext& f, const REAN2Params& prm) {
  require_nonzero(prm.alpha, "alpha");
  require_nonzero(prm.lambda2, "lambda2");
  const int n = f.rea_order();
  Representation r = blank(shared_rea2(f), static_cast<std::size_t>(n), Family::REAN2);
  auto [u11, u12, u21, u22] = gens(r);
  const Scalar qm2m1 = f.q_pow(-2) - f.one();
  auto mu2 = [&](int k) { return f.q_pow(-2 * k) * prm.lambda2; };
  auto mu1 = [&](int k) { return prm.lambda1 + f.q_pow(-2) * (f.one() - f.q_pow(-2 * k)) * prm.lambda2; };
  Scalar d = prm.lambda3;  // w_k u21 = d_k w_{k-1}
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    r.basis[i] = single_label('w', k);
    u22(i, i) = mu2(k);
    u11(i, i) = mu1(k);
    if (k < n - 1) u12(i, i + 1) = f.one();
    else u12(i, 0) = prm.alpha;
    if (k >= 1) {
      if (k >= 2) d = d - qm2m1 * (mu2(k - 1) * mu2(k - 1) - mu1(k - 1) * mu2(k - 1));
      u21(i, i - 1) = d;
    }
  }
  const Scalar c1 = prm.lambda3 + qm2m1 * (prm.lambda2 * prm.lambda2 - prm.lambda1 * prm.lambda2);
  u21(0, static_cast<std::size_t>(n - 1)) += prm.alpha.inv() * c1;
  r.params = {{"alpha", prm.alpha}, {"lambda1", prm.lambda1}, {"lambda2", prm.lambda2}, {"lambda3", prm.lambda3}};
  return r;
}

int rea_n3_length(const FieldContext& f, const Scalar& lambda1, const Scalar& lambda2) {
  const int n = f.rea_order();
  for (int s = 1; s <= n - 1; ++s)
    if (lambda1 == f.q_pow(2 * s - 2) * lambda2) return s;
  return n;
}

Representation rea_n3(const FieldContext& f, const REAN3Params& prm) {
  require_nonzero(prm.lambda2, "lambda2");
  const Scalar l1 = prm.lambda1.field() ? prm.lambda1 : f.zero();
  const int s = rea_n3_length(f, l1, prm.lambda2);
  Representation r = rea_string(f, Family::REAN3, s, l1, prm.lambda2, 'w');
  r.params = {{"lambda1", l1}, {"lambda2", prm.lambda2}};
  r.metadata["s"] = std::to_string(s);
  return r;
}

Representation rea_verma_quotient(const FieldContext& f, const REAVermaParams& prm) {
  require_nonzero(prm.lambda1, "lambda1");
  require_nonzero(prm.lambda2, "lambda2");
  if (prm.p < 1) throw Error(ErrorCode::BadParams, "p must be at least 1");
  Representation r =
      rea_string(f, Family::REAVerma, prm.p * f.rea_order(), prm.lambda1, prm.lambda2, 'f');
  r.params = {{"lambda1", prm.lambda1}, {"lambda2", prm.lambda2}};
  r.p = prm.p;
  return r;
}

Representation build_module(Family family, const FieldContext& f, const ParamList& ps, int p) {
  auto get = [&](const char* name) { return param(ps, name); };
  auto opt = [&](const char* name) {
    for (const auto& [k, v] : ps)
      if (k == name) return v;
    return f.zero();
  };
  switch (family) {
    case Family::DDN1:
      return dd_simple_n1(f, {get("alpha"), get("beta"), get("lambda1"), get("lambda2")});
    case Family::DDN2:
      return dd_simple_n2(f, {get("beta"), opt("gamma"), get("lambda2")});
    case Family::DDVerma:
      return dd_verma_quotient(f, {get("lambda1"), get("lambda2"), p});
    case Family::REAN1:
      return rea_n1(f, {get("beta"), opt("lambda1"), get("lambda2"), opt("lambda3")});
    case Family::REAN2:
      return rea_n2(f, {get("alpha"), opt("lambda1"), get("lambda2"), opt("lambda3")});
    case Family::REAN3:
      return rea_n3(f, {opt("lambda1"), get("lambda2")});
    case Family::REAVerma:
      return rea_verma_quotient(f, {get("lambda1"), get("lambda2"), p});
    case Family::Custom:
      break;
  }
  throw Error(ErrorCode::BadParams, "cannot build a custom family from parameters");
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.presentation->name() != b.presentation->name() || &a.field() != &b.field())
    throw Error(ErrorCode::DimensionMismatch, "direct sum of modules over different algebras");
  Representation r;
  r.presentation = a.presentation;
  r.dim = a.dim + b.dim;
  r.family = Family::Custom;
  for (std::size_t g = 0; g < a.action.size(); ++g) r.action.push_back(direct_sum(a.action[g], b.action[g]));
  for (const auto& l : a.basis) r.basis.push_back("1:" + l);
  for (const auto& l : b.basis) r.basis.push_back("2:" + l);
  return r;
}

// ---------------------------------------------------------------------------

Matrix word_matrix(const Representation& r, const Word& w) {
  Matrix m = Matrix::identity(r.dim, r.field());
  for (GenIndex g : w) m = m * r.action.at(g);
  return m;
}

Matrix poly_matrix(const Representation& r, const NCPoly& x) {
  Matrix m(r.dim, r.dim, r.field());
  for (const auto& [w, c] : x.terms()) m += word_matrix(r, w).scaled(c);
  return m;
}

std::vector<std::string> verify_relations(const Representation& r) {
  std::vector<std::string> bad;
  const Presentation& p = *r.presentation;
  for (const auto& rule : p.rules()) {
    if (word_matrix(r, rule.lhs) != poly_matrix(r, rule.rhs)) bad.push_back(p.format_rule(rule));
  }
  return bad;
}

Vec act(const Representation& r, const NCPoly& x, const Vec& v) {
  if (v.size() != r.dim) throw Error(ErrorCode::DimensionMismatch, "vector length does not match module dimension");
  Vec out(r.dim, r.field().zero());
  for (const auto& [w, c] : x.terms()) {
    Vec t = v;
    for (GenIndex g : w) t = row_times(t, r.action.at(g));
    for (std::size_t i = 0; i < r.dim; ++i)
      if (!t[i].is_zero()) out[i].add_product(c, t[i]);
  }
  return out;
}

std::vector<Matrix> intertwiners(const Representation& a, const Representation& b) {
  if (a.action.size() != b.action.size())
    throw Error(ErrorCode::DimensionMismatch, "modules over different algebras");
  const FieldContext& f = a.field();
  const std::size_t d1 = a.dim, d2 = b.dim;
  std::vector<SparseRow> eqs;
  for (std::size_t g = 0; g < a.action.size(); ++g) {
    const Matrix& A = a.action[g];
    const Matrix& B = b.action[g];
    // nonzero pattern of A rows and B columns
    std::vector<std::vector<std::size_t>> arow(d1), bcol(d2);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t k = 0; k < d1; ++k)
        if (!A(i, k).is_zero()) arow[i].push_back(k);
    for (std::size_t k = 0; k < d2; ++k)
      for (std::size_t j = 0; j < d2; ++j)
        if (!B(k, j).is_zero()) bcol[j].push_back(k);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d2; ++j) {
        // sum_k A[i][k] M[k][j] - sum_k M[i][k] B[k][j]
        std::map<std::size_t, Scalar> acc;
        for (std::size_t k : arow[i]) acc[k * d2 + j] += A(i, k);
        for (std::size_t k : bcol[j]) acc[i * d2 + k] -= B(k, j);
        SparseRow row;
        for (auto& [c, v] : acc)
          if (!v.is_zero()) row.emplace_back(c, v);
        if (!row.empty()) eqs.push_back(std::move(row));
      }
  }
  std::vector<Matrix> out;
  for (const auto& v : null_space(eqs, d1 * d2, f)) out.push_back(Matrix::from_flat(d1, d2, v, f));
  return out;
}

bool is_isomorphic(const Representation& a, const Representation& b, unsigned seed) {
  if (a.dim != b.dim || a.presentation->name() != b.presentation->name() || &a.field() != &b.field())
    return false;
  const auto homs = intertwiners(a, b);
  if (homs.empty()) return false;
  for (const auto& h : homs)
    if (is_invertible(h)) return true;
  if (homs.size() == 1) return false;
  // The non-invertible maps form a hypersurface in the hom space; random
  // combinations miss it with high probability.
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(-1000, 1000);
  const FieldContext& f = a.field();
  for (int t = 0; t < 16; ++t) {
    Matrix m(a.dim, b.dim, f);
    for (const auto& h : homs) m += h.scaled(f.from_int(coeff(rng)));
    if (is_invertible(m)) return true;
  }
  return false;
}

bool dd_iso_param_check(Family family, const ParamList& x, const ParamList& y, int pa, int pb,
                        const FieldContext& f) {
  const int m = f.m();
  auto exists_ab = [&](auto pred) {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (pred(a, b)) return true;
    return false;
  };
  auto opt = [&](const ParamList& ps, const char* name) {
    for (const auto& [k, v] : ps)
      if (k == name) return v;
    return f.zero();
  };
  switch (family) {
    case Family::DDN1:
      if (param(x, "alpha") != param(y, "alpha") || param(x, "beta") != param(y, "beta")) return false;
      return exists_ab([&](int a, int b) {
        return param(x, "lambda1") == f.q_pow(b) * param(y, "lambda1") &&
               param(x, "lambda2") == f.q_pow(b - a) * param(y, "lambda2");
      });
    case Family::DDN2:
      if (param(x, "beta") != param(y, "beta") || opt(x, "gamma") != opt(y, "gamma")) return false;
      return exists_ab(
          [&](int a, int b) { return param(x, "lambda2") == f.q_pow(a + b) * param(y, "lambda2"); });
    case Family::DDVerma:
      if (pa != pb || param(x, "lambda2") != param(y, "lambda2")) return false;
      return exists_ab(
          [&](int a, int b) { return param(x, "lambda1") == f.q_pow(a + b) * param(y, "lambda1"); });
    default:
      break;
  }
  throw Error(ErrorCode::BadParams, "no parameter criterion for this family");
}

}  // namespace qma
