#pragma once

// Built-in presentations and their factor algebras.

#include <string_view>

#include "qma/lattice.hpp"
#include "qma/presentation.hpp"

namespace qma {

/// Quantum matrices Mat_n(q): generators Z_ij in lexicographic order of (i, j).
Presentation builtin_dd(int n, const FieldContext& field);
/// Mat_2(q), named "dd2": Z11 < Z12 < Z21 < Z22.
Presentation builtin_dd2(const FieldContext& field);
/// Reflection equation algebra A_q(M_2): u11 < u12 < u21 < u22.
Presentation builtin_rea2(const FieldContext& field);
/// Quantum affine space x_i x_j = q^{h_ij} x_j x_i for antisymmetric H.
Presentation builtin_qaffine(const IntMatrix& h, const FieldContext& field);

/// Resolves "dd2", "rea2", "dd<n>". Throws BadParams for anything else.
Presentation builtin_presentation(std::string_view name, const FieldContext& field);

/// Factor by the ideal generated by one generator: the generator is removed,
/// rules mentioning it on the left are dropped, and rule right-hand sides are
/// evaluated at g = 0 and renormalized.
Presentation quotient_kill_generator(const Presentation& p, GenIndex g);

/// dd2 factored by det_q = Z11 Z22 - Z12 Z21, realized by the extra rule
/// Z11 Z22 -> Z12 Z21.
Presentation quotient_by_detq(const Presentation& dd2);

}  // namespace qma
