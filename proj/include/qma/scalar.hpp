#pragma once

// Exact arithmetic in a field K holding a distinguished primitive m-th root
// of unity q. Two backends share one value type:
//   * CyclotomicRational: Q[x]/(Phi_m), q = class of x, rational coefficients.
//   * PrimeField:         Z/p with m | p - 1, q = g^((p-1)/m), g least
//                         primitive root of p.
// Field contexts are interned for the lifetime of the process, so a Scalar
// can hold a plain pointer to its context.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qma {

enum class Backend { CyclotomicRational, PrimeField };

class Scalar;

class FieldContext {
 public:
  Backend backend() const noexcept { return backend_; }
  int m() const noexcept { return m_; }
  /// 0 for the cyclotomic backend.
  std::uint64_t prime() const noexcept { return p_; }
  std::uint64_t characteristic() const noexcept { return p_; }
  /// phi(m) for the cyclotomic backend, 1 for a prime field.
  int degree() const noexcept { return degree_; }
  /// Coefficients of Phi_m, constant term first (cyclotomic only).
  const std::vector<mpz_class>& cyclotomic_polynomial() const noexcept { return phi_; }
  std::uint64_t q_residue() const noexcept { return q_residue_; }

  /// Order of q^2: m for odd m, m/2 for even m.
  int rea_order() const noexcept { return m_ % 2 == 1 ? m_ : m_ / 2; }

  Scalar zero() const;
  Scalar one() const;
  Scalar q() const;
  Scalar q_pow(long long e) const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& v) const;

  std::string describe() const;
  bool operator==(const FieldContext& other) const noexcept { return this == &other; }

 private:
  friend class Scalar;
  friend const FieldContext& make_field(Backend, int, std::optional<std::uint64_t>);
  FieldContext() = default;

  Backend backend_ = Backend::CyclotomicRational;
  int m_ = 0;
  std::uint64_t p_ = 0;
  int degree_ = 1;
  std::uint64_t q_residue_ = 0;
  std::vector<mpz_class> phi_;
  // x^k mod Phi_m for k in [0, max(m, 2*degree)).
  std::vector<std::vector<mpz_class>> xpow_;
};

/// Returns the interned context. Throws BadOrder (m < 2) or BadPrime.
const FieldContext& make_field(Backend backend, int m,
                               std::optional<std::uint64_t> p = std::nullopt);

/// The m-th cyclotomic polynomial, constant coefficient first.
std::vector<mpz_class> cyclotomic_polynomial(int m);

bool is_prime_u64(std::uint64_t n);

class Scalar {
 public:
  /// Zero not yet attached to a field; adopts the field of the other operand.
  Scalar() = default;

  const FieldContext* field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const;

  Scalar inv() const;
  Scalar pow(long long e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;

  /// a += b * c without a temporary for the common case.
  void add_product(const Scalar& b, const Scalar& c);

  /// Cyclotomic coefficients (constant first, trailing zeros trimmed).
  std::span<const mpq_class> coefficients() const noexcept { return coeffs_; }
  std::uint64_t residue() const noexcept { return residue_; }

  /// Laurent-free display form: "q - 1", "(3/2)*q + 1", "-q^2"; residues
  /// print as decimal integers.
  std::string to_string() const;
  /// True when to_string() is a single signed term ("2", "-q", "(1/2)*q^3").
  bool is_monomial() const;

 private:
  friend class FieldContext;
  explicit Scalar(const FieldContext* f) : field_(f) {}
  const FieldContext* unify(const Scalar& o) const;
  void trim();

  const FieldContext* field_ = nullptr;
  std::uint64_t residue_ = 0;
  std::vector<mpq_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses the Laurent-in-q syntax: integers, rationals via '/', 'q', '^'
/// with signed integer exponents, '*' or juxtaposition, parentheses.
/// Throws SyntaxError (with offset) or DivisionByZero.
Scalar parse_scalar(std::string_view text, const FieldContext& field);

}  // namespace qma
