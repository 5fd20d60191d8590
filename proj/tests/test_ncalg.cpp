#include <doctest.h>

#include <random>
#include <set>

#include "qma/builtins.hpp"
#include "qma/error.hpp"

using namespace qma;

namespace {

const FieldContext& cyc(int m) { return make_field(Backend::CyclotomicRational, m); }

NCPoly raw(const char* text, const Presentation& p) { return parse_poly_raw(text, p); }

const RewriteRule& rule(const Presentation& p, const char* a, const char* b) {
  const RewriteRule* r = p.rule_for(p.generator(a), p.generator(b));
  REQUIRE(r != nullptr);
  return *r;
}

// random polynomial with words of length <= deg and small integer coefficients
NCPoly random_poly(const Presentation& p, std::mt19937& rng, unsigned deg) {
  NCPoly x;
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<GenIndex> letters(rng() % (deg + 1));
    for (auto& l : letters) l = static_cast<GenIndex>(rng() % p.num_generators());
    x.add_term(Word(std::move(letters)), p.field().from_int(static_cast<long long>(rng() % 7) - 3));
  }
  return x;
}

}  // namespace

TEST_CASE("dd2 rules") {
  const auto P = builtin_dd2(cyc(3));
  CHECK(P.generators() == std::vector<std::string>{"Z11", "Z12", "Z21", "Z22"});
  CHECK(rule(P, "Z21", "Z12").rhs == raw("q*Z12*Z21", P));
  CHECK(rule(P, "Z22", "Z11").rhs == raw("Z11*Z22 + (q - 1)*Z12*Z21", P));
  CHECK(rule(P, "Z12", "Z11").rhs == raw("Z11*Z12", P));
  CHECK(rule(P, "Z21", "Z11").rhs == raw("q*Z11*Z21", P));
  CHECK(rule(P, "Z22", "Z12").rhs == raw("q*Z12*Z22", P));
  CHECK(rule(P, "Z22", "Z21").rhs == raw("Z21*Z22", P));
  CHECK(P.rules().size() == 6);
  CHECK(P.non_normal_rules().empty());
}

TEST_CASE("rea2 rules") {
  const auto P = builtin_rea2(cyc(5));
  CHECK(rule(P, "u21", "u12").rhs ==
        raw("u12*u21 + (q^-2 - 1)*u22*u22 - (q^-2 - 1)*u11*u22", P));
  CHECK(rule(P, "u21", "u11").rhs == raw("u11*u21 + q^-2*(q^-2 - 1)*u21*u22", P));
  CHECK(rule(P, "u22", "u12").rhs == raw("q^2*u12*u22", P));
  CHECK(P.non_normal_rules().empty());
}

TEST_CASE("generator quotients") {
  const auto& f = cyc(3);
  const auto P = builtin_dd2(f);
  const auto A = quotient_kill_generator(P, P.generator("Z12"));
  CHECK(A.generators() == std::vector<std::string>{"Z11", "Z21", "Z22"});
  int nontrivial = 0;
  for (const auto& r : A.rules()) {
    NCPoly swapped = NCPoly::monomial(Word{r.lhs[1], r.lhs[0]}, f.one());
    if (r.rhs != swapped) {
      ++nontrivial;
      CHECK(A.format_rule(r) == "Z21*Z11 -> q Z11*Z21");
    }
  }
  CHECK(nontrivial == 1);

  const auto B = quotient_kill_generator(P, P.generator("Z21"));
  for (const auto& r : B.rules()) {
    NCPoly swapped = NCPoly::monomial(Word{r.lhs[1], r.lhs[0]}, f.one());
    if (r.rhs != swapped) CHECK(B.format_rule(r) == "Z22*Z12 -> q Z12*Z22");
  }

  const auto R = builtin_rea2(f);
  const auto C = quotient_kill_generator(R, R.generator("u22"));
  CHECK(C.num_generators() == 3);
  for (const auto& r : C.rules()) CHECK(r.rhs == NCPoly::monomial(Word{r.lhs[1], r.lhs[0]}, f.one()));

  CHECK_THROWS_AS(quotient_kill_generator(P, 9), Error);
}

TEST_CASE("quotient by det_q") {
  for (int m = 2; m <= 5; ++m) {
    const auto P = builtin_dd2(cyc(m));
    const auto Q = quotient_by_detq(P);
    CHECK(parse_poly("Z11*Z22", Q) == raw("Z12*Z21", Q));
    CHECK(parse_poly("Z11*Z22 - Z12*Z21", Q).is_zero());
    CHECK(parse_poly("Z22*Z11", Q) == raw("q*Z12*Z21", Q));
  }
  const auto R = builtin_rea2(cyc(3));
  CHECK_THROWS_AS(quotient_by_detq(R), Error);
}

TEST_CASE("parse_poly examples") {
  const auto P = builtin_dd2(cyc(4));
  const auto det = parse_poly("Z11*Z22 - Z12*Z21", P);
  CHECK(det.size() == 2);
  CHECK(P.format(det) == "Z11*Z22 - Z12*Z21");
  CHECK(parse_poly("Z11^0", P) == P.one());
  const auto R = builtin_rea2(cyc(4));
  CHECK(parse_poly("u11 + q^-2 * u22", R) == raw("u11 - u22", R));
  CHECK(parse_poly("2 Z11 Z12", P) == raw("2*Z11*Z12", P));
}

TEST_CASE("parse errors") {
  const auto P = builtin_dd2(cyc(3));
  try {
    parse_poly("Z11 + Z33", P);
    FAIL("expected UnknownGenerator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownGenerator);
    CHECK(e.position() == 6);
  }
  try {
    parse_poly("Z11 * (Z12", P);
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
  }
  CHECK_THROWS_AS(parse_poly("Z11^-1", P), Error);
  CHECK_THROWS_AS(parse_poly("Z11/Z12", P), Error);
}

TEST_CASE("normalize examples") {
  const auto P = builtin_dd2(cyc(3));
  CHECK(P.format(parse_poly("Z22*Z11", P)) == "Z11*Z22 + (q - 1) Z12*Z21");
  CHECK(parse_poly("Z22*Z11^2", P) == raw("Z11^2*Z22 + (q^2 - 1)*Z11*Z12*Z21", P));
  CHECK(normalize(NCPoly{}, P).is_zero());
  CHECK(mul(P.generator_poly("Z21"), P.generator_poly("Z12"), P) == raw("q*Z12*Z21", P));
  const auto R = builtin_rea2(cyc(3));
  CHECK(mul(R.generator_poly("u22"), R.generator_poly("u12"), R) == raw("q^2*u12*u22", R));
  const NCPoly x = raw("u22*u11*u21 + 3", R);
  CHECK(mul(x, R.one(), R) == normalize(x, R));
}

TEST_CASE("step cap") {
  const auto& f = cyc(3);
  // y*x -> y*x never terminates
  Presentation loop("loop", f, {"x", "y"},
                    {RewriteRule{Word{1, 0}, NCPoly::monomial(Word{1, 0}, f.one()), std::nullopt}}, 100);
  try {
    normalize(NCPoly::monomial(Word{1, 0}, f.one()), loop);
    FAIL("expected StepCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepCapExceeded);
  }
}

TEST_CASE("confluence of built-ins and a broken toy system") {
  for (int m = 2; m <= 6; ++m) {
    const auto& f = cyc(m);
    CHECK(check_confluence(builtin_dd2(f)).empty());
    CHECK(check_confluence(builtin_rea2(f)).empty());
    CHECK(check_confluence(builtin_dd(3, f)).empty());
    CHECK(check_confluence(builtin_qaffine(IntMatrix{{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}}, f)).empty());
  }
  const auto& f = cyc(3);
  Presentation toy("toy", f, {"x", "y", "z"},
                   {RewriteRule{Word{1, 0}, NCPoly::monomial(Word{0}, f.one()), std::nullopt},
                    RewriteRule{Word{2, 1}, NCPoly::monomial(Word{1}, f.one()), std::nullopt}});
  auto amb = check_confluence(toy);
  REQUIRE(amb.size() == 1);
  CHECK(toy.format_word(amb[0].overlap) == "z*y*x");
  CHECK(toy.format(amb[0].via_left) == "x");
  CHECK(toy.format(amb[0].via_right) == "z*x");
}

TEST_CASE("associativity through rewriting") {
  std::mt19937 rng(2024);
  for (int m : {2, 3, 5}) {
    const auto& f = cyc(m);
    for (const auto& P : {builtin_dd2(f), builtin_rea2(f)}) {
      for (int t = 0; t < 200; ++t) {
        NCPoly x = random_poly(P, rng, 4), y = random_poly(P, rng, 4), z = random_poly(P, rng, 2);
        CHECK(mul(mul(x, y, P), z, P) == mul(x, mul(y, z, P), P));
        NCPoly xy = mul(x, y, P);
        CHECK(normalize(xy, P) == xy);
        // homogeneous relations preserve the top degree of a free product
        NCPoly fp = NCPoly::free_product(x, y);
        if (!xy.is_zero()) CHECK(xy.max_degree() <= fp.max_degree());
      }
    }
  }
}

TEST_CASE("degree preservation on monomials") {
  std::mt19937 rng(99);
  const auto& f = cyc(4);
  for (const auto& P : {builtin_dd2(f), builtin_rea2(f), builtin_dd(3, f)}) {
    for (int t = 0; t < 100; ++t) {
      std::vector<GenIndex> letters(1 + rng() % 6);
      for (auto& l : letters) l = static_cast<GenIndex>(rng() % P.num_generators());
      const std::size_t len = letters.size();
      NCPoly x = normalize(NCPoly::monomial(Word(std::move(letters)), f.one()), P);
      for (const auto& [w, c] : x.terms()) CHECK(w.size() == len);
    }
  }
}

TEST_CASE("dd2 normal words with small exponents are fixed points at m = 2") {
  const auto& f = cyc(2);
  const auto P = builtin_dd2(f);
  std::set<Word> seen;
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned c = 0; c < 2; ++c)
        for (unsigned d = 0; d < 2; ++d) {
          std::vector<GenIndex> letters;
          letters.insert(letters.end(), a, 0);
          letters.insert(letters.end(), b, 1);
          letters.insert(letters.end(), c, 2);
          letters.insert(letters.end(), d, 3);
          Word w(std::move(letters));
          NCPoly x = normalize(NCPoly::monomial(w, f.one()), P);
          REQUIRE(x.size() == 1);
          CHECK(x.terms().begin()->first == w);
          seen.insert(w);
        }
  CHECK(seen.size() == 16);
}

TEST_CASE("dd(n) generator naming and rule count") {
  const auto& f = cyc(3);
  const auto P = builtin_dd(3, f);
  CHECK(P.num_generators() == 9);
  CHECK(P.generator_name(5) == "Z23");
  CHECK(P.rules().size() == 36);
  CHECK(builtin_presentation("dd3", f).name() == "dd3");
  CHECK_THROWS_AS(builtin_presentation("dd", f), Error);
  CHECK_THROWS_AS(builtin_qaffine(IntMatrix{{0, 1}, {1, 0}}, f), Error);
}
