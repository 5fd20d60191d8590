#include "qma/presentation.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "qma/error.hpp"

namespace qma {

Presentation::Presentation(std::string name, const FieldContext& field,
                           std::vector<std::string> generators, std::vector<RewriteRule> rules,
                           std::size_t step_cap)
    : name_(std::move(name)),
      field_(&field),
      generators_(std::move(generators)),
      rules_(std::move(rules)),
      step_cap_(step_cap) {
  if (generators_.size() > 0xFFFF) throw Error(ErrorCode::BadPresentation, "too many generators");
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.empty()) throw Error(ErrorCode::BadPresentation, "empty generator name");
    if (!seen.insert(g).second) throw Error(ErrorCode::BadPresentation, "duplicate generator " + g);
  }
  const std::size_t n = generators_.size();
  table_.assign(n * n, -1);
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Word& lhs = rules_[i].lhs;
    if (lhs.size() != 2) throw Error(ErrorCode::BadPresentation, "rule lhs must have length 2");
    for (GenIndex g : lhs)
      if (g >= n) throw Error(ErrorCode::BadPresentation, "rule uses an unknown generator index");
    for (const auto& [w, c] : rules_[i].rhs.terms()) {
      for (GenIndex g : w)
        if (g >= n) throw Error(ErrorCode::BadPresentation, "rule rhs uses an unknown generator");
      if (c.field() != field_) throw Error(ErrorCode::BadPresentation, "rule coefficient from another field");
    }
    int& slot = table_[lhs[0] * n + lhs[1]];
    if (slot != -1)
      throw Error(ErrorCode::BadPresentation, "two rules share lhs " + format_word(lhs));
    slot = static_cast<int>(i);
  }
}

std::optional<GenIndex> Presentation::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == name) return static_cast<GenIndex>(i);
  return std::nullopt;
}

GenIndex Presentation::generator(std::string_view name) const {
  auto g = find_generator(name);
  if (!g) throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + std::string(name) + "'");
  return *g;
}

NCPoly Presentation::generator_poly(std::string_view name) const {
  return NCPoly::monomial(Word{generator(name)}, field_->one());
}

const RewriteRule* Presentation::rule_for(GenIndex a, GenIndex b) const noexcept {
  const std::size_t n = generators_.size();
  int idx = table_[static_cast<std::size_t>(a) * n + b];
  return idx < 0 ? nullptr : &rules_[static_cast<std::size_t>(idx)];
}

Presentation Presentation::with_step_cap(std::size_t cap) const {
  Presentation p = *this;
  p.step_cap_ = cap;
  return p;
}

Presentation Presentation::renamed(std::string name) const {
  Presentation p = *this;
  p.name_ = std::move(name);
  return p;
}

bool Presentation::is_normal(const Word& w) const noexcept {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (rule_for(w[i], w[i + 1]) != nullptr) return false;
  return true;
}

bool Presentation::is_normal(const NCPoly& x) const {
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [&](const auto& t) { return is_normal(t.first); });
}

Presentation Presentation::with_normalized_rules() const {
  std::vector<RewriteRule> rules = rules_;
  for (auto& r : rules) r.rhs = normalize(r.rhs, *this);
  return Presentation(name_, *field_, generators_, std::move(rules), step_cap_);
}

std::vector<std::size_t> Presentation::non_normal_rules() const {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < rules_.size(); ++i)
    if (!is_normal(rules_[i].rhs)) bad.push_back(i);
  return bad;
}

std::string Presentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += generators_.at(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

namespace {

// Splits a scalar into (negative?, magnitude) for display when it is a single
// signed term; multi-term scalars are never negated.
std::pair<bool, Scalar> sign_split(const Scalar& c) {
  if (c.is_monomial() && c.field()->backend() == Backend::CyclotomicRational) {
    auto coeffs = c.coefficients();
    for (const auto& v : coeffs)
      if (v != 0) return v < 0 ? std::pair{true, -c} : std::pair{false, c};
  }
  return {false, c};
}

}  // namespace

std::string Presentation::format(const NCPoly& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    auto [neg, mag] = sign_split(c);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const bool multi = !mag.is_monomial();
    if (w.empty()) {
      out += multi && x.size() > 1 ? "(" + mag.to_string() + ")" : mag.to_string();
      continue;
    }
    if (!mag.is_one()) out += (multi ? "(" + mag.to_string() + ")" : mag.to_string()) + " ";
    out += format_word(w);
  }
  return out;
}

std::string Presentation::format_rule(const RewriteRule& r) const {
  return format_word(r.lhs) + " -> " + format(r.rhs);
}

// ---------------------------------------------------------------------------

NCPoly normalize(const NCPoly& x, const Presentation& p) {
  std::map<Word, Scalar> pending(x.terms().begin(), x.terms().end());
  NCPoly result;
  std::size_t steps = 0;
  const std::size_t cap = p.step_cap();
  while (!pending.empty()) {
    auto it = std::prev(pending.end());
    Word w = it->first;
    Scalar c = std::move(it->second);
    pending.erase(it);
    const RewriteRule* rule = nullptr;
    std::size_t pos = 0;
    for (; pos + 1 < w.size(); ++pos) {
      rule = p.rule_for(w[pos], w[pos + 1]);
      if (rule) break;
    }
    if (rule == nullptr) {
      result.add_term(w, c);
      continue;
    }
    if (++steps > cap)
      throw Error(ErrorCode::StepCapExceeded,
                  "normalization exceeded " + std::to_string(cap) + " rewrite steps");
    for (const auto& [rw, rc] : rule->rhs.terms()) {
      Scalar coeff = c * rc;
      if (coeff.is_zero()) continue;
      Word nw = w.splice(pos, 2, rw);
      auto [slot, inserted] = pending.try_emplace(std::move(nw), coeff);
      if (!inserted) {
        slot->second += coeff;
        if (slot->second.is_zero()) pending.erase(slot);
      }
    }
  }
  return result;
}

NCPoly mul(const NCPoly& x, const NCPoly& y, const Presentation& p) {
  return normalize(NCPoly::free_product(x, y), p);
}

NCPoly power(const NCPoly& x, unsigned e, const Presentation& p) {
  NCPoly r = p.one();
  for (unsigned i = 0; i < e; ++i) r = mul(r, x, p);
  return r;
}

NCPoly commutator(const NCPoly& x, const NCPoly& y, const Presentation& p) {
  return normalize(NCPoly::free_product(x, y) - NCPoly::free_product(y, x), p);
}

std::vector<Ambiguity> check_confluence(const Presentation& p) {
  std::vector<Ambiguity> out;
  const Scalar one = p.field().one();
  for (const auto& r1 : p.rules()) {
    for (const auto& r2 : p.rules()) {
      if (r1.lhs[1] != r2.lhs[0]) continue;
      Word overlap{r1.lhs[0], r1.lhs[1], r2.lhs[1]};
      NCPoly left = normalize(
          NCPoly::free_product(r1.rhs, NCPoly::monomial(Word{r2.lhs[1]}, one)), p);
      NCPoly right = normalize(
          NCPoly::free_product(NCPoly::monomial(Word{r1.lhs[0]}, one), r2.rhs), p);
      if (left != right) out.push_back({overlap, std::move(left), std::move(right)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

using detail::Tok;

class PolyParser {
 public:
  PolyParser(std::string_view text, const Presentation& p) : lex_(text), p_(p) {}

  NCPoly parse() {
    NCPoly v = expr();
    if (lex_.peek().kind != Tok::End) lex_.fail("trailing input");
    return v;
  }

 private:
  NCPoly expr() {
    NCPoly acc;
    bool neg = false;
    if (lex_.accept(Tok::Minus)) neg = true;
    else lex_.accept(Tok::Plus);
    NCPoly t = term();
    acc += neg ? -t : t;
    for (;;) {
      if (lex_.accept(Tok::Plus)) acc += term();
      else if (lex_.accept(Tok::Minus)) acc -= term();
      else break;
    }
    return acc;
  }

  bool starts_factor() const {
    auto k = lex_.peek().kind;
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen;
  }

  NCPoly term() {
    NCPoly acc = factor();
    for (;;) {
      if (lex_.accept(Tok::Star)) {
        acc = NCPoly::free_product(acc, factor());
      } else if (lex_.peek().kind == Tok::Slash) {
        std::size_t pos = lex_.take().pos;
        NCPoly d = factor();
        if (!d.is_constant())
          throw Error(ErrorCode::SyntaxError, "can only divide by a scalar", pos);
        Scalar c = d.coefficient(Word{});
        if (c.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero", pos);
        acc = acc.scaled(c.inv());
      } else if (starts_factor()) {
        acc = NCPoly::free_product(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  NCPoly factor() {
    NCPoly base = primary();
    if (!lex_.accept(Tok::Caret)) return base;
    std::size_t pos = lex_.peek().pos;
    long long e = detail::parse_exponent(lex_, base.is_constant());
    if (base.is_constant()) {
      Scalar c = base.coefficient(Word{});
      if (e < 0 && c.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero to a negative power", pos);
      if (c.is_zero()) return e == 0 ? p_.one() : NCPoly{};
      return NCPoly::constant(c.pow(e));
    }
    NCPoly r = p_.one();
    for (long long i = 0; i < e; ++i) r = NCPoly::free_product(r, base);
    return r;
  }

  NCPoly primary() {
    const auto& t = lex_.peek();
    const FieldContext& f = p_.field();
    if (t.kind == Tok::Number) {
      auto tok = lex_.take();
      return NCPoly::constant(f.from_rational(mpq_class(mpz_class(tok.text))));
    }
    if (t.kind == Tok::Ident) {
      auto tok = lex_.take();
      if (auto g = p_.find_generator(tok.text)) return NCPoly::monomial(Word{*g}, f.one());
      if (tok.text == "q") return NCPoly::constant(f.q());
      throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + tok.text + "'", tok.pos);
    }
    if (lex_.accept(Tok::LParen)) {
      NCPoly v = expr();
      lex_.expect(Tok::RParen, "')'");
      return v;
    }
    lex_.fail("expected number, generator, q or '('");
  }

  detail::Lexer lex_;
  const Presentation& p_;
};

}  // namespace

NCPoly parse_poly_raw(std::string_view text, const Presentation& p) {
  return PolyParser(text, p).parse();
}

NCPoly parse_poly(std::string_view text, const Presentation& p) {
  return normalize(parse_poly_raw(text, p), p);
}

}  // namespace qma
