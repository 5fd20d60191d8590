#include <doctest.h>

#include "qma/analysis.hpp"
#include "qma/error.hpp"

using namespace qma;

namespace {

const FieldContext& cyc(int m) { return make_field(Backend::CyclotomicRational, m); }

Vec unit(std::size_t dim, std::size_t i, const FieldContext& f) {
  Vec v(dim, f.zero());
  v.at(i) = f.one();
  return v;
}

Representation dd_q(int m, int p) {
  const auto& f = cyc(m);
  return dd_verma_quotient(f, {f.from_int(2), f.from_int(3), p});
}

Representation rea_q(int m, int p) {
  const auto& f = cyc(m);
  return rea_verma_quotient(f, {f.from_int(3), f.one(), p});
}

// image of M_{r} in the dd quotient: f(a, b) with b >= r m
Subspace dd_layer(const Representation& q, int m, int p, int r) {
  std::vector<std::size_t> idx;
  for (int a = 0; a < m; ++a)
    for (int b = r * m; b < p * m; ++b) idx.push_back(static_cast<std::size_t>(a * p * m + b));
  return Subspace::coordinate(idx, q.dim, q.field());
}

Subspace rea_layer(const Representation& q, int r) {
  const int n = q.field().rea_order();
  std::vector<std::size_t> idx;
  for (std::size_t k = static_cast<std::size_t>(r * n); k < q.dim; ++k) idx.push_back(k);
  return Subspace::coordinate(idx, q.dim, q.field());
}

}  // namespace

TEST_CASE("subspace basics") {
  const auto& f = cyc(3);
  Vec a = {f.one(), f.q(), f.zero()};
  Vec b = {f.from_int(2), f.zero(), f.one()};
  Vec c = {f.from_int(3), f.q(), f.one()};
  auto s = Subspace::span({a, b, c}, 3, f);
  CHECK(s.dim() == 2);
  CHECK(s.contains(a));
  CHECK(s.contains(c));
  CHECK_FALSE(s.contains(unit(3, 2, f)));
  CHECK(s == Subspace::span({c, b}, 3, f));
  CHECK(Subspace::span({}, 3, f).dim() == 0);
  CHECK_THROWS_AS(Subspace::span({Vec(2, f.zero())}, 3, f), Error);
}

TEST_CASE("generated algebra dimension") {
  const auto& f2 = cyc(2);
  const Scalar o = f2.one();
  CHECK(generated_algebra_dim(dd_simple_n1(f2, {o, o, o, o})) == 16);
  const auto& f5 = cyc(5);
  CHECK(generated_algebra_dim(rea_n3(f5, {f5.from_int(2), f5.from_int(2)})) == 1);
  CHECK(generated_algebra_dim(dd_q(2, 2)) < 64);
}

TEST_CASE("absolute simplicity examples") {
  const auto& f2 = cyc(2);
  CHECK(is_absolutely_simple(dd_q(2, 1)));
  CHECK_FALSE(is_absolutely_simple(dd_q(2, 2)));
  CHECK(is_absolutely_simple(dd_simple_n2(f2, {f2.one(), f2.zero(), f2.one()})));
  for (int m = 2; m <= 3; ++m) {
    const auto& f = cyc(m);
    CHECK(is_absolutely_simple(dd_simple_n1(f, {f.one(), f.from_int(2), f.from_int(3), f.q()})));
    CHECK(is_absolutely_simple(rea_q(m, 1)));
  }
}

TEST_CASE("invariant closures in verma quotients") {
  for (int m = 2; m <= 3; ++m) {
    const auto q2 = dd_q(m, 2);
    const auto& f = q2.field();
    CHECK(invariant_closure(q2, {unit(q2.dim, static_cast<std::size_t>(m), f)}) == dd_layer(q2, m, 2, 1));
    const auto q3 = dd_q(m, 3);
    const Subspace c1 = invariant_closure(q3, {unit(q3.dim, static_cast<std::size_t>(m), f)});
    const Subspace c2 = invariant_closure(q3, {unit(q3.dim, static_cast<std::size_t>(2 * m), f)});
    CHECK(c2 == dd_layer(q3, m, 3, 2));
    CHECK(c1.contains(c2));
    CHECK(c1.dim() > c2.dim());
  }
  // in a simple module every nonzero vector generates everything
  const auto& f = cyc(3);
  auto s = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  Vec v(s.dim, f.zero());
  v[4] = f.q();
  v[7] = f.from_int(-2);
  CHECK(invariant_closure(s, {v}).dim() == s.dim);
  CHECK_THROWS_AS(invariant_closure(s, {Vec(2, f.zero())}), Error);
}

TEST_CASE("submodule chain of the quotients") {
  for (int m = 2; m <= 3; ++m)
    for (int p = 2; p <= 3; ++p) {
      INFO("m = " << m << " p = " << p);
      const auto q = dd_q(m, p);
      std::vector<Subspace> expect;
      for (int r = 1; r < p; ++r) expect.push_back(dd_layer(q, m, p, r));
      for (std::size_t i = 0; i < q.dim; ++i) {
        const Subspace w = invariant_closure(q, {unit(q.dim, i, q.field())});
        bool ok = w.dim() == q.dim;
        for (const auto& e : expect) ok = ok || w == e;
        CHECK(ok);
      }
      for (const auto& e : expect) CHECK_FALSE(has_invariant_complement(q, e));

      const auto rq = rea_q(m, p);
      for (std::size_t i = 0; i < rq.dim; ++i) {
        const Subspace w = invariant_closure(rq, {unit(rq.dim, i, rq.field())});
        bool ok = w.dim() == rq.dim;
        for (int r = 1; r < p; ++r) ok = ok || w == rea_layer(rq, r);
        CHECK(ok);
      }
      for (int r = 1; r < p; ++r) CHECK_FALSE(has_invariant_complement(rq, rea_layer(rq, r)));
    }
}

TEST_CASE("closures of 0/1 vectors in the smallest non-simple quotient") {
  const auto q = dd_q(2, 2);
  const auto& f = q.field();
  const Subspace m1 = dd_layer(q, 2, 2, 1);
  for (unsigned mask = 1; mask < (1u << q.dim); ++mask) {
    Vec v(q.dim, f.zero());
    for (std::size_t i = 0; i < q.dim; ++i)
      if (mask & (1u << i)) v[i] = f.one();
    const Subspace w = invariant_closure(q, {v});
    CHECK((w.dim() == q.dim || w == m1));
  }
}

TEST_CASE("complements") {
  const auto& f = cyc(2);
  const auto q2 = dd_q(2, 2);
  CHECK_FALSE(has_invariant_complement(q2, dd_layer(q2, 2, 2, 1)));
  CHECK(has_invariant_complement(q2, Subspace(q2.dim, f)));
  auto a = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  auto b = dd_simple_n2(f, {f.one(), f.zero(), f.one()});
  auto s = direct_sum(a, b);
  CHECK(has_invariant_complement(s, Subspace::coordinate({0, 1, 2, 3}, s.dim, f)));
  CHECK_THROWS_AS(has_invariant_complement(q2, Subspace::coordinate({0}, q2.dim, f)), Error);
  try {
    has_invariant_complement(q2, Subspace::coordinate({0}, q2.dim, f));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvariant);
  }
}

TEST_CASE("commutant and radical") {
  const auto& f = cyc(2);
  auto a = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  auto ca = commutant(a);
  CHECK(ca.dim() == 1);
  CHECK(radical_of_commutant(ca, a).dim() == 0);

  auto aa = direct_sum(a, a);
  auto caa = commutant(aa);
  CHECK(caa.dim() == 4);
  CHECK(radical_of_commutant(caa, aa).dim() == 0);

  for (int m = 2; m <= 3; ++m)
    for (int p = 1; p <= 3; ++p) {
      const auto q = dd_q(m, p);
      const auto c = commutant(q);
      CHECK(c.dim() == static_cast<std::size_t>(p));
      const auto rad = radical_of_commutant(c, q);
      CHECK(rad.dim() == static_cast<std::size_t>(p - 1));
      // radical elements are nilpotent
      for (const auto& v : rad.basis()) {
        Matrix x = combine(c, v, q);
        Matrix pw = x;
        for (int k = 1; k < p; ++k) pw = pw * x;
        CHECK(pw.is_zero());
      }
      const auto rq = rea_q(m, p);
      const auto rc = commutant(rq);
      CHECK(rc.dim() == static_cast<std::size_t>(p));
      CHECK(radical_of_commutant(rc, rq).dim() == static_cast<std::size_t>(p - 1));
    }
}

TEST_CASE("commutant is a unital algebra") {
  const auto q = dd_q(3, 3);
  const auto c = commutant(q);
  std::vector<Vec> flat;
  for (const auto& b : c.basis) flat.push_back(b.flat());
  const auto span = Subspace::span(flat, q.dim * q.dim, q.field());
  CHECK(span.contains(Matrix::identity(q.dim, q.field()).flat()));
  for (const auto& x : c.basis)
    for (const auto& y : c.basis) CHECK(span.contains((x * y).flat()));
}

TEST_CASE("radical needs a large characteristic") {
  const auto& f = make_field(Backend::PrimeField, 3, 7);
  auto r = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  CHECK_THROWS_AS(radical_of_commutant(commutant(r), r), Error);
  auto small = rea_n1(make_field(Backend::PrimeField, 3, 7), {f.one(), f.one(), f.one(), f.one()});
  CHECK(radical_of_commutant(commutant(small), small).dim() == 0);
}

TEST_CASE("indecomposability certificates") {
  for (int m = 2; m <= 3; ++m) {
    const auto res = indecomposability_certificate(dd_q(m, 2));
    CHECK(res.kind == Certificate::Indecomposable);
    CHECK(res.commutant_dim == 2);
    CHECK(res.radical_dim == 1);
    CHECK(indecomposability_certificate(dd_q(m, 1)).kind == Certificate::Indecomposable);
  }
  const auto& f = cyc(2);
  auto a = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  auto b = dd_simple_n2(f, {f.one(), f.zero(), f.one()});
  for (const auto& s : {direct_sum(a, b), direct_sum(a, a)}) {
    const auto res = indecomposability_certificate(s);
    REQUIRE(res.kind == Certificate::Decomposable);
    REQUIRE(res.idempotent.has_value());
    const Matrix& e = *res.idempotent;
    CHECK(e * e == e);
    CHECK_FALSE(e.is_zero());
    CHECK_FALSE(e.is_identity());
  }
  CHECK(std::string(certificate_name(Certificate::Inconclusive)) == "inconclusive");
}

TEST_CASE("simplicity implies a scalar commutant and a certificate") {
  std::vector<Representation> reps;
  for (int m = 2; m <= 3; ++m) {
    const auto& f = cyc(m);
    const Scalar o = f.one(), two = f.from_int(2), three = f.from_int(3);
    reps.push_back(dd_simple_n1(f, {two, o, three, o}));
    reps.push_back(dd_simple_n2(f, {o, two, three}));
    reps.push_back(dd_verma_quotient(f, {two, three, 1}));
    reps.push_back(dd_verma_quotient(f, {two, three, 2}));
    reps.push_back(rea_n1(f, {two, three, o, o}));
    reps.push_back(rea_n2(f, {two, three, o, two}));
    reps.push_back(rea_n3(f, {three, o}));
    reps.push_back(rea_verma_quotient(f, {three, o, 2}));
  }
  for (const auto& r : reps) {
    if (!is_absolutely_simple(r)) continue;
    INFO(family_name(r.family) << " dim " << r.dim);
    CHECK(commutant(r).dim() == 1);
    CHECK(indecomposability_certificate(r).kind == Certificate::Indecomposable);
  }
}

TEST_CASE("uncomplemented submodules") {
  CHECK_FALSE(uncomplemented_submodule(dd_q(2, 1)).has_value());
  const auto w = uncomplemented_submodule(dd_q(2, 2));
  REQUIRE(w.has_value());
  CHECK(w->dim() == 4);
  const auto& f = cyc(2);
  auto a = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  CHECK_FALSE(uncomplemented_submodule(direct_sum(a, a)).has_value());
}
