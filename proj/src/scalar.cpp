#include "qma/scalar.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

#include "lexer.hpp"
#include "qma/error.hpp"

namespace qma {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 base, u64 e, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Exact division of integer polynomials by a monic divisor.
std::vector<mpz_class> divide_monic(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<mpz_class> quot(num.size() - dn);
  for (std::size_t k = num.size(); k-- > dn;) {
    mpz_class c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return quot;
}

std::vector<int> divisors(int m) {
  std::vector<int> d;
  for (int i = 1; i <= m; ++i)
    if (m % i == 0) d.push_back(i);
  return d;
}

struct FieldKey {
  Backend backend;
  int m;
  u64 p;
  bool operator<(const FieldKey& o) const {
    return std::tie(backend, m, p) < std::tie(o.backend, o.m, o.p);
  }
};

std::string rational_text(const mpq_class& v) { return v.get_str(); }

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    a %= n;
    if (a == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<mpz_class> cyclotomic_polynomial(int m) {
  if (m < 1) throw Error(ErrorCode::BadOrder, "cyclotomic index must be positive");
  std::vector<mpz_class> poly(static_cast<std::size_t>(m) + 1);
  poly[0] = -1;
  poly[static_cast<std::size_t>(m)] = 1;
  for (int d : divisors(m)) {
    if (d == m) continue;
    poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

const FieldContext& make_field(Backend backend, int m, std::optional<u64> p) {
  if (m < 2) throw Error(ErrorCode::BadOrder, "root of unity order m must be at least 2");
  FieldKey key{backend, m, backend == Backend::PrimeField ? p.value_or(0) : 0};
  if (backend == Backend::PrimeField) {
    if (!p) throw Error(ErrorCode::BadPrime, "prime field requires p");
    if (*p >= (u64{1} << 62) || !is_prime_u64(*p))
      throw Error(ErrorCode::BadPrime, std::to_string(*p) + " is not a supported prime");
    if ((*p - 1) % static_cast<u64>(m) != 0)
      throw Error(ErrorCode::BadPrime,
                  "m=" + std::to_string(m) + " does not divide p-1=" + std::to_string(*p - 1));
  }

  static std::mutex mu;
  static std::map<FieldKey, std::unique_ptr<FieldContext>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(key);
  if (it != registry.end()) return *it->second;

  std::unique_ptr<FieldContext> ctx(new FieldContext());
  ctx->backend_ = backend;
  ctx->m_ = m;
  if (backend == Backend::PrimeField) {
    const u64 prime = *p;
    ctx->p_ = prime;
    ctx->degree_ = 1;
    const auto factors = prime_factors(prime - 1);
    u64 g = 2;
    if (prime == 2) g = 1;
    for (;; ++g) {
      if (prime == 2) break;
      bool primitive = std::all_of(factors.begin(), factors.end(),
                                   [&](u64 l) { return powmod(g, (prime - 1) / l, prime) != 1; });
      if (primitive) break;
    }
    ctx->q_residue_ = powmod(g, (prime - 1) / static_cast<u64>(m), prime);
  } else {
    ctx->phi_ = cyclotomic_polynomial(m);
    const int deg = static_cast<int>(ctx->phi_.size()) - 1;
    ctx->degree_ = deg;
    const int count = std::max(m, 2 * deg) + 1;
    std::vector<mpz_class> cur(static_cast<std::size_t>(deg));
    cur[0] = 1;
    if (deg == 1) cur[0] = 1;
    ctx->xpow_.push_back(cur);
    for (int k = 1; k < count; ++k) {
      // multiply by x, reduce the overflow coefficient with the monic Phi_m
      mpz_class top = cur[static_cast<std::size_t>(deg) - 1];
      for (int i = deg - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i) - 1];
      cur[0] = 0;
      if (top != 0)
        for (int i = 0; i < deg; ++i) cur[static_cast<std::size_t>(i)] -= top * ctx->phi_[static_cast<std::size_t>(i)];
      ctx->xpow_.push_back(cur);
    }
  }
  auto& ref = *ctx;
  registry.emplace(key, std::move(ctx));
  return ref;
}

// ---------------------------------------------------------------------------
// FieldContext helpers

Scalar FieldContext::zero() const { return Scalar(this); }

Scalar FieldContext::one() const { return from_int(1); }

Scalar FieldContext::q() const { return q_pow(1); }

Scalar FieldContext::q_pow(long long e) const {
  long long r = e % m_;
  if (r < 0) r += m_;
  Scalar s(this);
  if (backend_ == Backend::PrimeField) {
    s.residue_ = powmod(q_residue_, static_cast<u64>(r), p_);
    return s;
  }
  const auto& v = xpow_[static_cast<std::size_t>(r)];
  s.coeffs_.assign(v.begin(), v.end());
  s.trim();
  return s;
}

Scalar FieldContext::from_int(long long v) const { return from_rational(mpq_class(static_cast<long>(v))); }

Scalar FieldContext::from_rational(const mpq_class& v) const {
  Scalar s(this);
  if (backend_ == Backend::PrimeField) {
    auto reduce = [&](const mpz_class& z) {
      mpz_class r = z % mpz_class(std::to_string(p_));
      if (r < 0) r += mpz_class(std::to_string(p_));
      return static_cast<u64>(std::stoull(r.get_str()));
    };
    u64 num = reduce(v.get_num());
    u64 den = reduce(v.get_den());
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes mod p");
    s.residue_ = mulmod(num, powmod(den, p_ - 2, p_), p_);
    return s;
  }
  if (v != 0) {
    s.coeffs_.push_back(v);
    s.coeffs_.back().canonicalize();
  }
  return s;
}

std::string FieldContext::describe() const {
  if (backend_ == Backend::PrimeField)
    return "prime m=" + std::to_string(m_) + " p=" + std::to_string(p_);
  return "cyclotomic m=" + std::to_string(m_);
}

// ---------------------------------------------------------------------------
// Scalar

void Scalar::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const FieldContext* Scalar::unify(const Scalar& o) const {
  if (field_ == nullptr) return o.field_;
  if (o.field_ != nullptr && o.field_ != field_)
    throw Error(ErrorCode::BadParams, "scalars from different fields");
  return field_;
}

bool Scalar::is_zero() const noexcept {
  if (field_ == nullptr) return true;
  if (field_->backend_ == Backend::PrimeField) return residue_ == 0;
  return coeffs_.empty();
}

bool Scalar::is_one() const {
  if (field_ == nullptr) return false;
  if (field_->backend_ == Backend::PrimeField) return residue_ == 1;
  return coeffs_.size() == 1 && coeffs_[0] == 1;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  const FieldContext* f = unify(o);
  if (o.is_zero()) return *this;
  if (field_ == nullptr) return *this = o;
  field_ = f;
  if (f->backend_ == Backend::PrimeField) {
    residue_ += o.residue_;
    if (residue_ >= f->p_) residue_ -= f->p_;
    return *this;
  }
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (r.is_zero()) return r;
  if (field_->backend_ == Backend::PrimeField) {
    r.residue_ = field_->p_ - residue_;
    return r;
  }
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  const FieldContext* f = unify(o);
  if (is_zero() || o.is_zero()) {
    Scalar z(f);
    return *this = z;
  }
  if (f->backend_ == Backend::PrimeField) {
    residue_ = mulmod(residue_, o.residue_, f->p_);
    return *this;
  }
  const std::size_t deg = static_cast<std::size_t>(f->degree_);
  if (coeffs_.size() == 1 && o.coeffs_.size() == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  std::vector<mpq_class> prod(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  if (prod.size() > deg) {
    for (std::size_t k = deg; k < prod.size(); ++k) {
      if (prod[k] == 0) continue;
      const auto& red = f->xpow_[k];
      for (std::size_t i = 0; i < deg; ++i)
        if (red[i] != 0) prod[i] += prod[k] * red[i];
    }
    prod.resize(deg);
  }
  coeffs_ = std::move(prod);
  trim();
  return *this;
}

void Scalar::add_product(const Scalar& b, const Scalar& c) {
  if (b.is_zero() || c.is_zero()) return;
  const FieldContext* f = b.unify(c);
  if (field_ == nullptr) field_ = f;
  if (f->backend_ == Backend::PrimeField && field_ == f) {
    residue_ += mulmod(b.residue_, c.residue_, f->p_);
    if (residue_ >= f->p_) residue_ -= f->p_;
    return;
  }
  *this += b * c;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const FieldContext* f = field_;
  Scalar r(f);
  if (f->backend_ == Backend::PrimeField) {
    r.residue_ = powmod(residue_, f->p_ - 2, f->p_);
    return r;
  }
  if (coeffs_.size() == 1) {
    r.coeffs_.push_back(1 / coeffs_[0]);
    return r;
  }
  // Solve (a * s) mod Phi = 1 as a linear system in the coefficients of s.
  const std::size_t n = static_cast<std::size_t>(f->degree_);
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    Scalar col = *this * f->q_pow(static_cast<long long>(j));
    for (std::size_t i = 0; i < col.coeffs_.size(); ++i) a[i][j] = col.coeffs_[i];
  }
  a[0][n] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::DivisionByZero, "singular cyclotomic element");
    std::swap(a[piv], a[c]);
    mpq_class inv_p = 1 / a[c][c];
    for (std::size_t k = c; k <= n; ++k) a[c][k] *= inv_p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class factor = a[i][c];
      for (std::size_t k = c; k <= n; ++k) a[i][k] -= factor * a[c][k];
    }
  }
  r.coeffs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.coeffs_[i] = a[i][n];
  r.trim();
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return *this *= o.inv();
}

Scalar Scalar::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  const FieldContext* f = field_;
  if (f == nullptr) {
    if (e == 0) throw Error(ErrorCode::BadParams, "0^0 without a field");
    return *this;
  }
  Scalar result = f->one();
  Scalar base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if (field_ != o.field_) return false;
  if (field_->backend_ == Backend::PrimeField) return residue_ == o.residue_;
  return coeffs_ == o.coeffs_;
}

bool Scalar::is_monomial() const {
  if (is_zero() || field_->backend_ == Backend::PrimeField) return true;
  return std::count_if(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c != 0; }) == 1;
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  if (field_->backend_ == Backend::PrimeField) return std::to_string(residue_);
  std::string out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpq_class& c = coeffs_[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const mpq_class mag = neg ? mpq_class(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string power;
    if (k == 1) power = "q";
    else if (k > 1) power = "q^" + std::to_string(k);
    if (power.empty()) {
      out += rational_text(mag);
    } else if (mag == 1) {
      out += power;
    } else if (mag.get_den() == 1) {
      out += rational_text(mag) + "*" + power;
    } else {
      out += "(" + rational_text(mag) + ")*" + power;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class ScalarParser {
 public:
  ScalarParser(std::string_view text, const FieldContext& f) : lex_(text), f_(f) {}

  Scalar parse() {
    Scalar v = expr();
    if (lex_.peek().kind != detail::Tok::End) lex_.fail("trailing input");
    return v;
  }

 private:
  Scalar expr() {
    Scalar acc = f_.zero();
    bool neg = false;
    if (lex_.accept(detail::Tok::Minus)) neg = true;
    else lex_.accept(detail::Tok::Plus);
    Scalar t = term();
    acc += neg ? -t : t;
    for (;;) {
      if (lex_.accept(detail::Tok::Plus)) acc += term();
      else if (lex_.accept(detail::Tok::Minus)) acc -= term();
      else break;
    }
    return acc;
  }

  bool starts_factor() const {
    auto k = lex_.peek().kind;
    return k == detail::Tok::Number || k == detail::Tok::Ident || k == detail::Tok::LParen;
  }

  Scalar term() {
    Scalar acc = factor();
    for (;;) {
      if (lex_.accept(detail::Tok::Star)) {
        acc *= factor();
      } else if (lex_.peek().kind == detail::Tok::Slash) {
        std::size_t pos = lex_.peek().pos;
        lex_.take();
        Scalar d = factor();
        if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero", pos);
        acc /= d;
      } else if (starts_factor()) {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Scalar factor() {
    Scalar base = primary();
    if (lex_.accept(detail::Tok::Caret)) {
      std::size_t pos = lex_.peek().pos;
      long long e = detail::parse_exponent(lex_, true);
      if (e < 0 && base.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero to a negative power", pos);
      return base.pow(e);
    }
    return base;
  }

  Scalar primary() {
    const detail::Token& t = lex_.peek();
    if (t.kind == detail::Tok::Number) {
      auto tok = lex_.take();
      return f_.from_rational(mpq_class(mpz_class(tok.text)));
    }
    if (t.kind == detail::Tok::Ident) {
      if (t.text != "q") lex_.fail("unknown symbol '" + t.text + "' in scalar");
      lex_.take();
      return f_.q();
    }
    if (lex_.accept(detail::Tok::LParen)) {
      Scalar v = expr();
      lex_.expect(detail::Tok::RParen, "')'");
      return v;
    }
    lex_.fail("expected number, q or '('");
  }

  detail::Lexer lex_;
  const FieldContext& f_;
};

}  // namespace

Scalar parse_scalar(std::string_view text, const FieldContext& field) {
  return ScalarParser(text, field).parse();
}

}  // namespace qma
