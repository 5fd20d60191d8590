#include <doctest.h>

#include <random>

#include "qma/error.hpp"
#include "qma/repmod.hpp"
#include "qma/structure.hpp"

using namespace qma;

namespace {

const FieldContext& cyc(int m) { return make_field(Backend::CyclotomicRational, m); }

Vec unit(const Representation& r, std::size_t i) {
  Vec v(r.dim, r.field().zero());
  v.at(i) = r.field().one();
  return v;
}

Vec scaled_unit(const Representation& r, std::size_t i, const Scalar& c) {
  Vec v(r.dim, r.field().zero());
  v.at(i) = c;
  return v;
}

NCPoly gen(const Representation& r, const char* name) { return r.presentation->generator_poly(name); }

// c * q^k with c a small nonzero integer
Scalar draw_nonzero(std::mt19937& rng, const FieldContext& f) {
  std::uniform_int_distribution<int> c(1, 5), sign(0, 1), k(0, f.m() - 1);
  Scalar s = f.from_int(sign(rng) ? c(rng) : -c(rng)) * f.q_pow(k(rng));
  return s;
}

Scalar draw_any(std::mt19937& rng, const FieldContext& f) {
  std::uniform_int_distribution<int> z(0, 4);
  return z(rng) == 0 ? f.zero() : draw_nonzero(rng, f);
}

ParamList draw_params(Family fam, std::mt19937& rng, const FieldContext& f) {
  switch (fam) {
    case Family::DDN1:
      return {{"alpha", draw_nonzero(rng, f)}, {"beta", draw_nonzero(rng, f)},
              {"lambda1", draw_nonzero(rng, f)}, {"lambda2", draw_nonzero(rng, f)}};
    case Family::DDN2:
      return {{"beta", draw_nonzero(rng, f)}, {"gamma", draw_any(rng, f)}, {"lambda2", draw_nonzero(rng, f)}};
    case Family::REAN1:
      return {{"beta", draw_nonzero(rng, f)}, {"lambda1", draw_any(rng, f)},
              {"lambda2", draw_nonzero(rng, f)}, {"lambda3", draw_any(rng, f)}};
    case Family::REAN2:
      return {{"alpha", draw_nonzero(rng, f)}, {"lambda1", draw_any(rng, f)},
              {"lambda2", draw_nonzero(rng, f)}, {"lambda3", draw_any(rng, f)}};
    case Family::REAN3:
      return {{"lambda1", draw_any(rng, f)}, {"lambda2", draw_nonzero(rng, f)}};
    default:
      return {{"lambda1", draw_nonzero(rng, f)}, {"lambda2", draw_nonzero(rng, f)}};
  }
}

}  // namespace

TEST_CASE("dd n1 table entries") {
  const auto& f2 = cyc(2);
  const auto one = f2.one();
  auto r = dd_simple_n1(f2, {one, one, one, one});
  CHECK(r.dim == 4);
  CHECK(r.basis[1] == "e(0,1)");
  const auto z11 = gen(r, "Z11");
  // e(0,1) -> -e(1,1), e(1,0) -> e(0,0)
  CHECK(act(r, z11, unit(r, 1)) == scaled_unit(r, 3, -one));
  CHECK(act(r, z11, unit(r, 2)) == unit(r, 0));

  const auto& f3 = cyc(3);
  auto r3 = dd_simple_n1(f3, {f3.one(), f3.one(), f3.one(), f3.one()});
  CHECK(r3.basis[5] == "e(1,2)");
  CHECK(act(r3, gen(r3, "Z22"), unit(r3, 0)) == scaled_unit(r3, 6, f3.one() + f3.q()));
}

TEST_CASE("dd n2 table entries") {
  for (int m = 2; m <= 5; ++m) {
    const auto& f = cyc(m);
    auto r = dd_simple_n2(f, {f.from_int(2), f.zero(), f.from_int(3)});
    CHECK(r.dim == static_cast<std::size_t>(m * m));
    for (int b = 0; b < m; ++b) CHECK(act(r, gen(r, "Z11"), unit(r, static_cast<std::size_t>(b))) == Vec(r.dim, f.zero()));
  }
  const auto& f = cyc(3);
  auto r = dd_simple_n2(f, {f.one(), f.zero(), f.one()});
  CHECK(act(r, gen(r, "Z22"), unit(r, 6)) == Vec(9, f.zero()));
  CHECK(act(r, gen(r, "Z12"), unit(r, 3)) == scaled_unit(r, 5, f.q()));
}

TEST_CASE("dd verma table entries") {
  const auto& f = cyc(3);
  const Scalar l1 = f.from_int(2), l2 = f.from_int(5);
  auto r = dd_verma_quotient(f, {l1, l2, 2});
  CHECK(r.dim == 18);
  CHECK(r.basis[3] == "f(0,3)");
  const Vec zero(r.dim, f.zero());
  for (std::size_t a = 0; a < 3; ++a) CHECK(act(r, gen(r, "Z11"), unit(r, a * 6)) == zero);
  CHECK(act(r, gen(r, "Z12"), unit(r, 0)) == scaled_unit(r, 0, l1));
  CHECK(act(r, gen(r, "Z22"), unit(r, 5)) == zero);
  // the a-wrap of Z21 and Z11 carries lambda2
  CHECK(act(r, gen(r, "Z21"), unit(r, 12)) == scaled_unit(r, 0, l2));
  CHECK(act(r, gen(r, "Z11"), unit(r, 13)) ==
        scaled_unit(r, 0, l1 * f.q_pow(2) * (f.q() - f.one()) * l2));
}

TEST_CASE("rea n1 table entries") {
  const auto& f = cyc(6);
  auto r = rea_n1(f, {f.one(), f.zero(), f.one(), f.zero()});
  CHECK(r.dim == 3);
  CHECK(act(r, gen(r, "u12"), unit(r, 0)) == Vec(3, f.zero()));
  CHECK(act(r, gen(r, "u11"), unit(r, 0)) == Vec(3, f.zero()));
  const auto& f5 = cyc(5);
  const Scalar l2 = f5.from_int(7);
  auto r5 = rea_n1(f5, {f5.from_int(2), f5.from_int(3), l2, f5.one()});
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(act(r5, gen(r5, "u22"), unit(r5, k)) == scaled_unit(r5, k, f5.q_pow(2 * static_cast<long long>(k)) * l2));
  CHECK(act(r5, gen(r5, "u11"), unit(r5, 0)) == scaled_unit(r5, 0, f5.from_int(3)));
  // metadata holds the scalar by which u12^n acts on v
  const NCPoly u12n = power(gen(r5, "u12"), 5, *r5.presentation);
  const Vec image = act(r5, u12n, unit(r5, 0));
  CHECK(r5.metadata.at("alpha_induced") == image[0].to_string());
}

TEST_CASE("rea n2 table entries") {
  const auto& f = cyc(5);
  const Scalar al = f.from_int(2), l1 = f.from_int(3), l2 = f.from_int(-1), l3 = f.from_int(4);
  auto r = rea_n2(f, {al, l1, l2, l3});
  CHECK(r.dim == 5);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(act(r, gen(r, "u22"), unit(r, k)) == scaled_unit(r, k, f.q_pow(-2 * static_cast<long long>(k)) * l2));
  CHECK(act(r, gen(r, "u21"), unit(r, 1)) == scaled_unit(r, 0, l3));
  CHECK(act(r, gen(r, "u12"), unit(r, 4)) == scaled_unit(r, 0, al));
}

TEST_CASE("rea n3 truncation length") {
  const auto& f = cyc(5);
  const Scalar l2 = f.from_int(2);
  CHECK(rea_n3(f, {l2, l2}).dim == 1);
  CHECK(rea_n3(f, {f.q_pow(2) * l2, l2}).dim == 2);
  CHECK(rea_n3(f, {f.from_int(3) * l2, l2}).dim == 5);
  // c_s vanishes at the truncation point
  for (int m = 2; m <= 8; ++m) {
    const auto& g = cyc(m);
    const int n = g.rea_order();
    for (int s = 1; s <= n - 1; ++s) {
      const Scalar lam2 = g.from_int(3);
      const Scalar lam1 = g.q_pow(2 * s - 2) * lam2;
      const Scalar c = g.q_pow(-2) * (g.q_pow(2 * s) - g.one()) * lam1 * lam2 +
                       (g.q_pow(2 * s) - g.q_pow(4 * s)) * g.q_pow(-4) * lam2 * lam2;
      CHECK(c.is_zero());
      CHECK(rea_n3_length(g, lam1, lam2) == s);
    }
  }
}

TEST_CASE("rea verma table entries") {
  const auto& f = cyc(3);
  const Scalar l1 = f.from_int(2), l2 = f.from_int(3);
  auto r = rea_verma_quotient(f, {l1, l2, 2});
  CHECK(r.dim == 6);
  CHECK(r.basis[4] == "f(4)");
  CHECK(act(r, gen(r, "u12"), unit(r, 0)) == Vec(6, f.zero()));
  CHECK(act(r, gen(r, "u21"), unit(r, 5)) == Vec(6, f.zero()));
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(act(r, gen(r, "u22"), unit(r, k)) == scaled_unit(r, k, f.q_pow(2 * static_cast<long long>(k)) * l2));
}

TEST_CASE("zero parameters are rejected") {
  const auto& f = cyc(3);
  const Scalar o = f.one(), z = f.zero();
  CHECK_THROWS_AS(dd_simple_n1(f, {z, o, o, o}), Error);
  CHECK_THROWS_AS(dd_simple_n2(f, {o, o, z}), Error);
  CHECK_THROWS_AS(dd_verma_quotient(f, {o, z, 1}), Error);
  CHECK_THROWS_AS(rea_n1(f, {z, o, o, o}), Error);
  CHECK_THROWS_AS(rea_n2(f, {z, o, o, o}), Error);
  CHECK_THROWS_AS(rea_n3(f, {o, z}), Error);
  CHECK_THROWS_AS(rea_verma_quotient(f, {z, o, 1}), Error);
  try {
    dd_simple_n1(f, {o, o, z, o});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroParameter);
  }
}

TEST_CASE("constructors satisfy the relations") {
  std::mt19937 rng(4242);
  const Family fams[] = {Family::DDN1,  Family::DDN2,  Family::DDVerma, Family::REAN1,
                         Family::REAN2, Family::REAN3, Family::REAVerma};
  for (int m = 2; m <= 6; ++m) {
    const auto& f = cyc(m);
    for (Family fam : fams) {
      for (int draw = 0; draw < 4; ++draw) {
        const int p = 1 + draw % 2;
        const auto ps = draw_params(fam, rng, f);
        auto r = build_module(fam, f, ps, p);
        INFO("m = " << m << " family " << family_name(fam) << " draw " << draw);
        CHECK(verify_relations(r).empty());
      }
    }
  }
}

TEST_CASE("constructors satisfy the relations over a prime field") {
  std::mt19937 rng(77);
  const auto& f = make_field(Backend::PrimeField, 6, 7);
  const Family fams[] = {Family::DDN1,  Family::DDN2,  Family::DDVerma, Family::REAN1,
                         Family::REAN2, Family::REAN3, Family::REAVerma};
  for (Family fam : fams)
    for (int draw = 0; draw < 3; ++draw) {
      auto r = build_module(fam, f, draw_params(fam, rng, f), 2);
      CHECK(verify_relations(r).empty());
    }
}

TEST_CASE("a corrupted matrix breaks a relation") {
  const auto& f = cyc(3);
  auto r = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  r.action[0](0, 1) += f.one();
  CHECK_FALSE(verify_relations(r).empty());
}

TEST_CASE("eigenvalues of detq and Z12 Z21 on dd n1") {
  for (int m = 2; m <= 5; ++m) {
    const auto& f = cyc(m);
    const Scalar l1 = f.from_int(3), l2 = f.from_int(-2);
    auto r = dd_simple_n1(f, {f.from_int(2), f.from_int(5), l1, l2});
    const Presentation& P = *r.presentation;
    const NCPoly det = dd_detq(P);
    const NCPoly z12z21 = mul(gen(r, "Z12"), gen(r, "Z21"), P);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const auto i = static_cast<std::size_t>(a * m + b);
        CHECK(act(r, det, unit(r, i)) == scaled_unit(r, i, f.q_pow(b) * l1));
        CHECK(act(r, z12z21, unit(r, i)) == scaled_unit(r, i, f.q_pow(b - a) * l2));
      }
  }
}

TEST_CASE("central elements act by scalars") {
  for (int m = 2; m <= 5; ++m) {
    const auto& f = cyc(m);
    const Scalar al = f.from_int(2), be = f.from_int(5);
    auto r = dd_simple_n1(f, {al, be, f.from_int(3), f.from_int(7)});
    const Presentation& P = *r.presentation;
    CHECK(poly_matrix(r, power(gen(r, "Z21"), m, P)) == Matrix::identity(r.dim, f).scaled(be));
    const Matrix z11m = poly_matrix(r, power(gen(r, "Z11"), m, P));
    CHECK(z11m == Matrix::identity(r.dim, f).scaled(z11m(0, 0)));
    // REA tr_q acts by lambda1 + q^-2 lambda2
    std::mt19937 rng(static_cast<unsigned>(m));
    for (Family fam : {Family::REAN1, Family::REAN2, Family::REAN3, Family::REAVerma}) {
      auto ps = draw_params(fam, rng, f);
      auto rr = build_module(fam, f, ps, 2);
      Scalar l1 = f.zero();
      for (const auto& [k, v] : ps)
        if (k == "lambda1") l1 = v;
      const Scalar expect = l1 + f.q_pow(-2) * param(ps, "lambda2");
      CHECK(poly_matrix(rr, rea_trq(*rr.presentation)) == Matrix::identity(rr.dim, f).scaled(expect));
    }
  }
}

TEST_CASE("act basics") {
  const auto& f = cyc(3);
  auto r = dd_simple_n1(f, {f.one(), f.one(), f.from_int(4), f.one()});
  Vec v = unit(r, 4);
  v[2] = f.q();
  CHECK(act(r, r.presentation->one(), v) == v);
  CHECK(act(r, dd_detq(*r.presentation), unit(r, 0)) == scaled_unit(r, 0, f.from_int(4)));
  CHECK_THROWS_AS(act(r, r.presentation->one(), Vec(3, f.zero())), Error);
}

TEST_CASE("intertwiners") {
  const auto& f2 = cyc(2);
  const Scalar o = f2.one();
  auto r = dd_simple_n1(f2, {o, o, o, o});
  CHECK(intertwiners(r, r).size() == 1);
  CHECK(intertwiners(r, r)[0].is_identity());

  const auto& f = cyc(3);
  auto a = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  auto b = dd_simple_n1(f, {f.q(), f.one(), f.one(), f.one()});
  CHECK(intertwiners(a, b).empty());

  // conjugate by a fixed invertible matrix
  Matrix S = Matrix::identity(a.dim, f);
  Matrix Sinv = Matrix::identity(a.dim, f);
  for (std::size_t i = 0; i + 1 < a.dim; ++i) {
    S(i, i + 1) = f.from_int(static_cast<long>(i + 1));
  }
  // S is unipotent upper triangular; invert by solving S X = I column by column
  {
    Matrix N = S - Matrix::identity(a.dim, f);
    Matrix term = Matrix::identity(a.dim, f);
    Sinv = Matrix::identity(a.dim, f);
    for (std::size_t k = 1; k < a.dim; ++k) {
      term = term * N.scaled(-f.one());
      Sinv += term;
    }
  }
  REQUIRE((S * Sinv).is_identity());
  Representation c = a;
  for (auto& g : c.action) g = Sinv * g * S;
  CHECK(verify_relations(c).empty());
  const auto homs = intertwiners(a, c);
  REQUIRE(homs.size() == 1);
  const Matrix& h = homs[0];
  CHECK(h == S.scaled(h(0, 0)));
}

TEST_CASE("isomorphism examples") {
  const auto& f = cyc(3);
  const Scalar o = f.one(), q = f.q();
  auto a = dd_simple_n1(f, {o, o, o, o});
  auto b = dd_simple_n1(f, {o, o, q, q});
  CHECK(is_isomorphic(a, b));
  CHECK(is_isomorphic(a, a));
  auto n2 = dd_simple_n2(f, {o, f.zero(), o});
  CHECK_FALSE(is_isomorphic(a, n2));
  CHECK(dd_iso_param_check(Family::DDN1, a.params, b.params, 0, 0, f));
  auto c = dd_simple_n1(f, {q, o, o, o});
  CHECK_FALSE(dd_iso_param_check(Family::DDN1, a.params, c.params, 0, 0, f));
  auto v1 = dd_verma_quotient(f, {o, f.from_int(2), 2});
  auto v2 = dd_verma_quotient(f, {q, f.from_int(2), 2});
  CHECK(dd_iso_param_check(Family::DDVerma, v1.params, v2.params, 2, 2, f));
  CHECK(is_isomorphic(v1, v2));
}

TEST_CASE("parameter criterion agrees with intertwiners at m = 3") {
  const auto& f = cyc(3);
  const Scalar o = f.one(), q = f.q(), two = f.from_int(2);
  SUBCASE("n1") {
    std::vector<DDN1Params> ps = {{o, o, o, o}, {o, o, q, q}, {o, o, q, o}, {q, o, o, o},
                                  {o, two, o, o}, {o, o, q * q, q}, {o, o, two, o}};
    for (const auto& x : ps)
      for (const auto& y : ps) {
        auto a = dd_simple_n1(f, x), b = dd_simple_n1(f, y);
        CHECK(dd_iso_param_check(Family::DDN1, a.params, b.params, 0, 0, f) == is_isomorphic(a, b));
      }
  }
  SUBCASE("n2") {
    std::vector<DDN2Params> ps = {{o, f.zero(), o}, {o, f.zero(), q}, {o, o, o},
                                  {two, f.zero(), o}, {o, o, q * q}, {o, f.zero(), two}};
    for (const auto& x : ps)
      for (const auto& y : ps) {
        auto a = dd_simple_n2(f, x), b = dd_simple_n2(f, y);
        CHECK(dd_iso_param_check(Family::DDN2, a.params, b.params, 0, 0, f) == is_isomorphic(a, b));
      }
  }
  SUBCASE("verma") {
    std::vector<DDVermaParams> ps = {{o, o, 1}, {q, o, 1}, {o, two, 1}, {o, o, 2}, {q, o, 2}, {two, o, 2}};
    for (const auto& x : ps)
      for (const auto& y : ps) {
        auto a = dd_verma_quotient(f, x), b = dd_verma_quotient(f, y);
        CHECK(dd_iso_param_check(Family::DDVerma, a.params, b.params, x.p, y.p, f) == is_isomorphic(a, b));
      }
  }
}

TEST_CASE("null space of Z11 separates n1 from n2") {
  for (int m = 2; m <= 4; ++m) {
    const auto& f = cyc(m);
    auto a = dd_simple_n1(f, {f.one(), f.from_int(2), f.one(), f.one()});
    auto b = dd_simple_n2(f, {f.one(), f.zero(), f.one()});
    CHECK(rank(a.generator_matrix("Z11")) == a.dim);
    CHECK(b.dim - rank(b.generator_matrix("Z11")) == static_cast<std::size_t>(m));
  }
}

TEST_CASE("direct sums") {
  const auto& f = cyc(2);
  auto a = dd_simple_n1(f, {f.one(), f.one(), f.one(), f.one()});
  auto s = direct_sum(a, a);
  CHECK(s.dim == 8);
  CHECK(verify_relations(s).empty());
  CHECK(intertwiners(s, s).size() == 4);
}
