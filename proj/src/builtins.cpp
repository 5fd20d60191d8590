#include "qma/builtins.hpp"

#include <charconv>
#include <string>

#include "qma/error.hpp"

namespace qma {

namespace {

std::string dd_name(int i, int j, int n) {
  if (n <= 9) return "Z" + std::to_string(i) + std::to_string(j);
  return "Z" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

Presentation builtin_dd(int n, const FieldContext& field) {
  if (n < 1) throw Error(ErrorCode::BadParams, "dd(n) needs n >= 1");
  if (n > 255) throw Error(ErrorCode::BadParams, "dd(n) supports n <= 255");
  std::vector<std::string> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) gens.push_back(dd_name(i, j, n));
  auto id = [n](int i, int j) { return static_cast<GenIndex>((i - 1) * n + (j - 1)); };
  const Scalar one = field.one();
  const Scalar q = field.q();
  std::vector<RewriteRule> rules;
  // lhs Z_ij Z_st with (i, j) > (s, t) lexicographically
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int s = 1; s <= i; ++s) {
        for (int t = 1; t <= n; ++t) {
          if (s == i && t >= j) continue;
          RewriteRule r;
          r.lhs = Word{id(i, j), id(s, t)};
          const Word swapped{id(s, t), id(i, j)};
          if (s == i) {
            r.rhs = NCPoly::monomial(swapped, one);
            r.swap_exponent = 0;
          } else if (j <= t) {
            r.rhs = NCPoly::monomial(swapped, q);
            r.swap_exponent = 1;
          } else {
            r.rhs = NCPoly::monomial(swapped, one);
            r.rhs.add_term(Word{id(s, j), id(i, t)}, q - one);
            r.swap_exponent = 0;
          }
          rules.push_back(std::move(r));
        }
      }
    }
  }
  Presentation p("dd" + std::to_string(n), field, std::move(gens), std::move(rules));
  return p.with_normalized_rules();
}

Presentation builtin_dd2(const FieldContext& field) { return builtin_dd(2, field); }

Presentation builtin_rea2(const FieldContext& field) {
  // Relations written as rewrites of each descending pair toward
  // u11 < u12 < u21 < u22, then normalized against each other.
  struct Raw {
    const char* lhs_a;
    const char* lhs_b;
    const char* rhs;
    int exponent;
  };
  static constexpr Raw raw[] = {
      {"u12", "u11", "u11*u12 - (q^-2 - 1)*u12*u22", 0},
      {"u21", "u11", "u11*u21 + (q^-2 - 1)*u22*u21", 0},
      {"u22", "u11", "u11*u22", 0},
      {"u21", "u12", "u12*u21 + (q^-2 - 1)*u22*(u22 - u11)", 0},
      {"u22", "u12", "q^2*u12*u22", 2},
      {"u22", "u21", "q^-2*u21*u22", -2},
  };
  std::vector<std::string> gens{"u11", "u12", "u21", "u22"};
  Presentation bare("rea2", field, gens, {});
  std::vector<RewriteRule> rules;
  for (const auto& r : raw) {
    rules.push_back(RewriteRule{Word{bare.generator(r.lhs_a), bare.generator(r.lhs_b)},
                                parse_poly_raw(r.rhs, bare), r.exponent});
  }
  Presentation p("rea2", field, std::move(gens), std::move(rules));
  return p.with_normalized_rules();
}

Presentation builtin_qaffine(const IntMatrix& h, const FieldContext& field) {
  if (!h.is_square() || !h.is_antisymmetric())
    throw Error(ErrorCode::BadParams, "qaffine needs a square antisymmetric exponent matrix");
  const std::size_t n = h.rows();
  if (n == 0) throw Error(ErrorCode::BadParams, "qaffine needs at least one generator");
  std::vector<std::string> gens;
  for (std::size_t i = 1; i <= n; ++i) gens.push_back("x" + std::to_string(i));
  std::vector<RewriteRule> rules;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const mpz_class& e = h(j, i);
      if (!e.fits_sint_p()) throw Error(ErrorCode::BadParams, "exponent out of range");
      const int exp = static_cast<int>(e.get_si());
      rules.push_back(RewriteRule{
          Word{static_cast<GenIndex>(j), static_cast<GenIndex>(i)},
          NCPoly::monomial(Word{static_cast<GenIndex>(i), static_cast<GenIndex>(j)}, field.q_pow(exp)),
          exp});
    }
  }
  return Presentation("qaffine", field, std::move(gens), std::move(rules));
}

Presentation builtin_presentation(std::string_view name, const FieldContext& field) {
  if (name == "dd2") return builtin_dd2(field);
  if (name == "rea2") return builtin_rea2(field);
  if (name.size() > 2 && name.substr(0, 2) == "dd") {
    int n = 0;
    auto tail = name.substr(2);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
    if (ec == std::errc() && ptr == tail.data() + tail.size()) return builtin_dd(n, field);
  }
  throw Error(ErrorCode::BadParams, "unknown built-in presentation '" + std::string(name) + "'");
}

Presentation quotient_kill_generator(const Presentation& p, GenIndex g) {
  const std::size_t n = p.num_generators();
  if (g >= n) throw Error(ErrorCode::UnknownGenerator, "generator index out of range");
  std::vector<std::string> gens;
  std::vector<int> remap(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == g) continue;
    remap[i] = static_cast<int>(gens.size());
    gens.push_back(p.generators()[i]);
  }
  auto map_word = [&](const Word& w) {
    std::vector<GenIndex> out;
    out.reserve(w.size());
    for (GenIndex x : w) out.push_back(static_cast<GenIndex>(remap[x]));
    return Word(std::move(out));
  };
  std::vector<RewriteRule> rules;
  for (const auto& r : p.rules()) {
    if (r.lhs.contains(g)) continue;
    RewriteRule nr;
    nr.lhs = map_word(r.lhs);
    nr.swap_exponent = r.swap_exponent;
    for (const auto& [w, c] : r.rhs.terms())
      if (!w.contains(g)) nr.rhs.add_term(map_word(w), c);
    rules.push_back(std::move(nr));
  }
  Presentation out(p.name() + "/" + p.generator_name(g), p.field(), std::move(gens), std::move(rules),
                   p.step_cap());
  return out.with_normalized_rules();
}

Presentation quotient_by_detq(const Presentation& dd2) {
  auto z11 = dd2.find_generator("Z11");
  auto z12 = dd2.find_generator("Z12");
  auto z21 = dd2.find_generator("Z21");
  auto z22 = dd2.find_generator("Z22");
  if (!z11 || !z12 || !z21 || !z22 || dd2.num_generators() != 4 || dd2.rule_for(*z11, *z22))
    throw Error(ErrorCode::BadParams, "quotient_by_detq expects the dd2 presentation");
  std::vector<RewriteRule> rules = dd2.rules();
  rules.push_back(RewriteRule{Word{*z11, *z22},
                              NCPoly::monomial(Word{*z12, *z21}, dd2.field().one()), std::nullopt});
  Presentation out(dd2.name() + "/detq", dd2.field(), dd2.generators(), std::move(rules),
                   dd2.step_cap());
  return out.with_normalized_rules();
}

}  // namespace qma
