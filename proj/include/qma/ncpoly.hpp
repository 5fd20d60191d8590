#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include "qma/scalar.hpp"

namespace qma {

/// Position of a generator in its presentation's total order.
using GenIndex = std::uint16_t;

/// A word in the generators; the empty word is the unit. Words are ordered
/// by length first, then lexicographically by generator index.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<GenIndex> letters) : letters_(letters) {}
  explicit Word(std::vector<GenIndex> letters) : letters_(std::move(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  GenIndex operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const std::vector<GenIndex>& letters() const noexcept { return letters_; }

  bool contains(GenIndex g) const;
  Word concat(const Word& other) const;
  /// Replaces letters [pos, pos + len) by `middle`.
  Word splice(std::size_t pos, std::size_t len, const Word& middle) const;

  std::strong_ordering operator<=>(const Word& o) const;
  bool operator==(const Word& o) const = default;

 private:
  std::vector<GenIndex> letters_;
};

/// Finitely supported map from words to scalars; never stores a zero
/// coefficient.
class NCPoly {
 public:
  using Terms = std::map<Word, Scalar>;

  NCPoly() = default;
  static NCPoly constant(const Scalar& c);
  static NCPoly monomial(const Word& w, const Scalar& c);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Length of the longest word; 0 for the zero polynomial.
  std::size_t max_degree() const noexcept;
  /// True for zero or a multiple of the empty word.
  bool is_constant() const noexcept;
  Scalar coefficient(const Word& w) const;

  void add_term(const Word& w, const Scalar& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  NCPoly operator-() const;
  NCPoly scaled(const Scalar& c) const;
  bool operator==(const NCPoly& o) const = default;

  /// Product in the free algebra (plain concatenation, no rewriting).
  static NCPoly free_product(const NCPoly& a, const NCPoly& b);

 private:
  Terms terms_;
};

}  // namespace qma
