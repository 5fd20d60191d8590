#include "qma/structure.hpp"

#include "qma/error.hpp"

namespace qma {

namespace {

// Free (unnormalized) product of generators given by name, with a scalar.
NCPoly word_of(const Presentation& p, std::initializer_list<std::pair<const char*, unsigned>> parts,
               const Scalar& c) {
  std::vector<GenIndex> letters;
  for (const auto& [name, e] : parts) {
    GenIndex g = p.generator(name);
    letters.insert(letters.end(), e, g);
  }
  return NCPoly::monomial(Word(std::move(letters)), c);
}

NCPoly gen_product(const NCPoly& a, GenIndex g, bool g_on_right, const Presentation& p) {
  NCPoly x = NCPoly::monomial(Word{g}, p.field().one());
  return g_on_right ? mul(a, x, p) : mul(x, a, p);
}

}  // namespace

NCPoly dd_detq(const Presentation& p) {
  const Scalar one = p.field().one();
  return normalize(word_of(p, {{"Z11", 1}, {"Z22", 1}}, one) - word_of(p, {{"Z12", 1}, {"Z21", 1}}, one),
                   p);
}

NCPoly rea_detq(const Presentation& p) {
  const FieldContext& f = p.field();
  return normalize(word_of(p, {{"u11", 1}, {"u22", 1}}, f.one()) -
                       word_of(p, {{"u12", 1}, {"u21", 1}}, f.q_pow(2)),
                   p);
}

NCPoly rea_trq(const Presentation& p) {
  const FieldContext& f = p.field();
  return normalize(word_of(p, {{"u11", 1}}, f.one()) + word_of(p, {{"u22", 1}}, f.q_pow(-2)), p);
}

NCPoly central_power(const Presentation& p, std::string_view gen, unsigned e) {
  std::vector<GenIndex> letters(e, p.generator(gen));
  return normalize(NCPoly::monomial(Word(std::move(letters)), p.field().one()), p);
}

bool is_central(const NCPoly& z, const Presentation& p) {
  const Scalar one = p.field().one();
  for (std::size_t g = 0; g < p.num_generators(); ++g) {
    NCPoly x = NCPoly::monomial(Word{static_cast<GenIndex>(g)}, one);
    if (!commutator(z, x, p).is_zero()) return false;
  }
  return true;
}

QNormalProfile q_normal_profile(const NCPoly& z, const Presentation& p) {
  const FieldContext& f = p.field();
  QNormalProfile profile(p.num_generators(), 0);
  for (std::size_t i = 0; i < p.num_generators(); ++i) {
    const auto g = static_cast<GenIndex>(i);
    const NCPoly zg = gen_product(z, g, true, p);
    const NCPoly gz = gen_product(z, g, false, p);
    int found = -1;
    for (int e = 0; e < f.m() && found < 0; ++e)
      if (zg == gz.scaled(f.q_pow(e))) found = e;
    if (found < 0)
      throw Error(ErrorCode::NotQNormal,
                  "no exponent e with z*" + p.generator_name(g) + " = q^e " + p.generator_name(g) + "*z");
    profile[i] = found;
  }
  return profile;
}

int identity_count(IdentityFamily f) { return f == IdentityFamily::DD ? 2 : 4; }

std::pair<NCPoly, NCPoly> power_identity_sides(IdentityFamily fam, int index, unsigned r,
                                               const Presentation& p) {
  if (r < 1) throw Error(ErrorCode::BadParams, "identity exponent must be at least 1");
  if (index < 1 || index > identity_count(fam))
    throw Error(ErrorCode::BadParams, "identity index out of range");
  const FieldContext& f = p.field();
  const Scalar one = f.one();
  const long long rr = r;
  NCPoly lhs, rhs;
  if (fam == IdentityFamily::DD) {
    if (index == 1) {
      // Z22 Z11^r = Z11^r Z22 + (1 - q^-r) Z21 Z12 Z11^(r-1)
      lhs = word_of(p, {{"Z22", 1}, {"Z11", r}}, one);
      rhs = word_of(p, {{"Z11", r}, {"Z22", 1}}, one) +
            word_of(p, {{"Z21", 1}, {"Z12", 1}, {"Z11", r - 1}}, one - f.q_pow(-rr));
    } else {
      // Z11 Z22^r = Z22^r Z11 + (1 - q^r) Z12 Z21 Z22^(r-1)
      lhs = word_of(p, {{"Z11", 1}, {"Z22", r}}, one);
      rhs = word_of(p, {{"Z22", r}, {"Z11", 1}}, one) +
            word_of(p, {{"Z12", 1}, {"Z21", 1}, {"Z22", r - 1}}, one - f.q_pow(rr));
    }
    return {std::move(lhs), std::move(rhs)};
  }
  const Scalar qm2 = f.q_pow(-2);
  const Scalar q2r = f.q_pow(2 * rr);
  switch (index) {
    case 1:
      // u12^r u11 = u11 u12^r + q^-2 (q^2r - 1) u12^r u22
      lhs = word_of(p, {{"u12", r}, {"u11", 1}}, one);
      rhs = word_of(p, {{"u11", 1}, {"u12", r}}, one) +
            word_of(p, {{"u12", r}, {"u22", 1}}, qm2 * (q2r - one));
      break;
    case 2:
      // u21^r u11 = u11 u21^r + q^-2 (1 - q^2r) u22 u21^r
      lhs = word_of(p, {{"u21", r}, {"u11", 1}}, one);
      rhs = word_of(p, {{"u11", 1}, {"u21", r}}, one) +
            word_of(p, {{"u22", 1}, {"u21", r}}, qm2 * (one - q2r));
      break;
    case 3:
      // u21^r u12 = u12 u21^r + q^-2 (q^2r - 1) u11 u22 u21^(r-1)
      //           + (1 - q^2r) q^-2 u22^2 u21^(r-1)
      lhs = word_of(p, {{"u21", r}, {"u12", 1}}, one);
      rhs = word_of(p, {{"u12", 1}, {"u21", r}}, one) +
            word_of(p, {{"u11", 1}, {"u22", 1}, {"u21", r - 1}}, qm2 * (q2r - one)) +
            word_of(p, {{"u22", 2}, {"u21", r - 1}}, (one - q2r) * qm2);
      break;
    default: {
      // u21 u12^r = u12^r u21 + (1 - q^-2r) u11 u22 u12^(r-1)
      //           + q^-4 (1 - q^4r + q^(4r-2) - q^(2r-2)) u12^(r-1) u22^2
      const Scalar c = f.q_pow(-4) * (one - f.q_pow(4 * rr) + f.q_pow(4 * rr - 2) - f.q_pow(2 * rr - 2));
      lhs = word_of(p, {{"u21", 1}, {"u12", r}}, one);
      rhs = word_of(p, {{"u12", r}, {"u21", 1}}, one) +
            word_of(p, {{"u11", 1}, {"u22", 1}, {"u12", r - 1}}, one - f.q_pow(-2 * rr)) +
            word_of(p, {{"u12", r - 1}, {"u22", 2}}, c);
      break;
    }
  }
  return {std::move(lhs), std::move(rhs)};
}

bool verify_power_identity(IdentityFamily f, int index, unsigned r, const Presentation& p) {
  auto [lhs, rhs] = power_identity_sides(f, index, r, p);
  return normalize(lhs - rhs, p).is_zero();
}

IntMatrix quasipolynomial_matrix(const Presentation& p) {
  const std::size_t n = p.num_generators();
  const FieldContext& f = p.field();
  for (const auto& rule : p.rules())
    if (rule.lhs[0] <= rule.lhs[1])
      throw Error(ErrorCode::NotOreTower, "rule " + p.format_rule(rule) + " is not a descending swap");
  IntMatrix h(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const auto gj = static_cast<GenIndex>(j);
      const auto gi = static_cast<GenIndex>(i);
      const RewriteRule* rule = p.rule_for(gj, gi);
      if (rule == nullptr)
        throw Error(ErrorCode::NotOreTower,
                    "no rule for " + p.generator_name(gj) + "*" + p.generator_name(gi));
      long c = 0;
      if (rule->swap_exponent) {
        c = *rule->swap_exponent;
      } else {
        const Scalar coeff = rule->rhs.coefficient(Word{gi, gj});
        int found = -1;
        for (int e = 0; e < f.m() && found < 0; ++e)
          if (coeff == f.q_pow(e)) found = e;
        if (found < 0)
          throw Error(ErrorCode::NotOreTower,
                      "swap coefficient of " + p.format_rule(*rule) + " is not a power of q");
        // representative closest to zero, ties toward the positive side
        c = found <= f.m() / 2 ? found : found - f.m();
      }
      h(j, i) = c;
      h(i, j) = -c;
    }
  }
  return h;
}

}  // namespace qma
