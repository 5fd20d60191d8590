#pragma once

// Structure of finite-dimensional modules: absolute simplicity through the
// span of word matrices, invariant subspaces and complements, the commutant
// and its radical.

#include <optional>
#include <vector>

#include "qma/repmod.hpp"

namespace qma {

/// Subspace of K^n stored as its reduced row echelon basis, so two subspaces
/// are equal iff their bases are.
class Subspace {
 public:
  Subspace(std::size_t ambient, const FieldContext& f) : ambient_(ambient), field_(&f) {}
  static Subspace span(const std::vector<Vec>& vectors, std::size_t ambient, const FieldContext& f);
  /// span{e_i : i in indices}
  static Subspace coordinate(const std::vector<std::size_t>& indices, std::size_t ambient, const FieldContext& f);

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }
  /// Pivot column of each basis row.
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const FieldContext& field() const noexcept { return *field_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  std::size_t ambient_;
  const FieldContext* field_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Dimension of the algebra spanned by all word matrices (identity included).
std::size_t generated_algebra_dim(const Representation& r);

/// generated_algebra_dim == dim^2.
bool is_absolutely_simple(const Representation& r);

/// Smallest invariant subspace containing the vectors. Throws DimensionMismatch.
Subspace invariant_closure(const Representation& r, const std::vector<Vec>& vectors);

/// Whether W has an invariant complement, decided as the linear feasibility
/// of a module map pi : R -> W restricting to the identity on W.
/// Throws NotInvariant if W is not invariant.
bool has_invariant_complement(const Representation& r, const Subspace& w);

struct CommutantAlgebra {
  std::vector<Matrix> basis;
  std::size_t dim() const noexcept { return basis.size(); }
};

CommutantAlgebra commutant(const Representation& r);

/// Radical as a subspace of coefficient vectors over the commutant basis,
/// the null space of the trace form. Throws BadCharacteristic unless the
/// characteristic is 0 or exceeds the module dimension.
Subspace radical_of_commutant(const CommutantAlgebra& c, const Representation& r);

/// Linear combination of commutant basis elements.
Matrix combine(const CommutantAlgebra& c, const Vec& coeffs, const Representation& r);

enum class Certificate { Indecomposable, Decomposable, Inconclusive };

struct IndecomposabilityResult {
  Certificate kind = Certificate::Inconclusive;
  std::size_t commutant_dim = 0;
  std::size_t radical_dim = 0;
  std::optional<Matrix> idempotent;  // set when Decomposable
};

const char* certificate_name(Certificate c);

/// Indecomposable when the commutant modulo its radical is one-dimensional;
/// Decomposable when a nontrivial idempotent turns up among rescaled basis
/// elements; Inconclusive otherwise.
IndecomposabilityResult indecomposability_certificate(const Representation& r);

/// A proper nonzero invariant subspace without a complement, searched among
/// closures of the standard basis vectors, or nullopt if none is found.
std::optional<Subspace> uncomplemented_submodule(const Representation& r);

}  // namespace qma
