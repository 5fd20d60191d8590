#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qma/ncpoly.hpp"
#include "qma/scalar.hpp"

namespace qma {

inline constexpr std::size_t kDefaultStepCap = 1'000'000;

/// lhs -> rhs with |lhs| = 2. For Ore-type rules (lhs = X_j X_i, j > i) the
/// rhs is c * X_i X_j + correction; `swap_exponent` records c = q^e when the
/// rule was built from a known exponent.
struct RewriteRule {
  Word lhs;
  NCPoly rhs;
  std::optional<int> swap_exponent;
};

/// Two reductions of an overlap word that end in different normal forms.
struct Ambiguity {
  Word overlap;
  NCPoly via_left;
  NCPoly via_right;
};

/// Ordered generators plus oriented rewrite rules over a field. Immutable
/// once constructed; safe to share between threads.
class Presentation {
 public:
  Presentation(std::string name, const FieldContext& field, std::vector<std::string> generators,
               std::vector<RewriteRule> rules, std::size_t step_cap = kDefaultStepCap);

  const std::string& name() const noexcept { return name_; }
  const FieldContext& field() const noexcept { return *field_; }
  std::size_t num_generators() const noexcept { return generators_.size(); }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::string& generator_name(GenIndex g) const { return generators_.at(g); }
  std::optional<GenIndex> find_generator(std::string_view name) const;
  /// Like find_generator but throws UnknownGenerator.
  GenIndex generator(std::string_view name) const;
  NCPoly generator_poly(std::string_view name) const;

  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  const RewriteRule* rule_for(GenIndex a, GenIndex b) const noexcept;

  std::size_t step_cap() const noexcept { return step_cap_; }
  Presentation with_step_cap(std::size_t cap) const;
  Presentation renamed(std::string name) const;

  bool is_normal(const Word& w) const noexcept;
  bool is_normal(const NCPoly& x) const;

  /// Returns the presentation with every rule rhs rewritten to normal form.
  Presentation with_normalized_rules() const;
  /// Indices of rules whose rhs is not in normal form.
  std::vector<std::size_t> non_normal_rules() const;

  NCPoly one() const { return NCPoly::constant(field_->one()); }
  NCPoly scalar(const Scalar& c) const { return NCPoly::constant(c); }

  std::string format_word(const Word& w) const;
  std::string format(const NCPoly& x) const;
  std::string format_rule(const RewriteRule& r) const;

 private:
  std::string name_;
  const FieldContext* field_;
  std::vector<std::string> generators_;
  std::vector<RewriteRule> rules_;
  std::vector<int> table_;  // rule index per (a, b), -1 if none
  std::size_t step_cap_;
};

/// Rewrites to normal form: the leftmost reducible subword of the largest
/// remaining word is replaced first. Throws StepCapExceeded.
NCPoly normalize(const NCPoly& x, const Presentation& p);

/// Normalized product.
NCPoly mul(const NCPoly& x, const NCPoly& y, const Presentation& p);

/// Normalized x^e, e >= 0.
NCPoly power(const NCPoly& x, unsigned e, const Presentation& p);

/// Commutator x*y - y*x in normal form.
NCPoly commutator(const NCPoly& x, const NCPoly& y, const Presentation& p);

/// Every overlap of two rule left-hand sides (a length-3 word) reduced both
/// ways; returns those that disagree. Empty means locally confluent.
std::vector<Ambiguity> check_confluence(const Presentation& p);

/// Parses and normalizes an expression over the presentation's generators.
NCPoly parse_poly(std::string_view text, const Presentation& p);
/// Parses without rewriting (free-algebra value).
NCPoly parse_poly_raw(std::string_view text, const Presentation& p);

}  // namespace qma
