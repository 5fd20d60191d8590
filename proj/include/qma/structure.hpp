#pragma once

// Distinguished elements, centrality and q-normality checks, the power
// identities of the two rank-2 algebras, and derivation erasing.

#include <string>
#include <utility>
#include <vector>

#include "qma/lattice.hpp"
#include "qma/presentation.hpp"

namespace qma {

/// Z11 Z22 - Z12 Z21 in a presentation with generators Z11, Z12, Z21, Z22.
NCPoly dd_detq(const Presentation& p);
/// u11 u22 - q^2 u12 u21.
NCPoly rea_detq(const Presentation& p);
/// u11 + q^-2 u22.
NCPoly rea_trq(const Presentation& p);
/// Normalized g^e.
NCPoly central_power(const Presentation& p, std::string_view gen, unsigned e);

/// True iff z commutes with every generator.
bool is_central(const NCPoly& z, const Presentation& p);

/// Exponents e_g in [0, m) with z g = q^{e_g} g z, one per generator.
using QNormalProfile = std::vector<int>;

/// Throws NotQNormal naming the first generator for which no exponent works.
QNormalProfile q_normal_profile(const NCPoly& z, const Presentation& p);

enum class IdentityFamily { DD, REA };

/// Number of identities in a family: 2 for DD, 4 for REA.
int identity_count(IdentityFamily f);

/// Unnormalized (lhs, rhs) of identity `index` (1-based) at exponent r >= 1.
/// Generators are looked up by name, so p must be dd2 or rea2 (or share
/// their generator names).
std::pair<NCPoly, NCPoly> power_identity_sides(IdentityFamily f, int index, unsigned r,
                                               const Presentation& p);

/// normalize(lhs - rhs) == 0.
bool verify_power_identity(IdentityFamily f, int index, unsigned r, const Presentation& p);

/// Antisymmetric exponent matrix of the associated quantum affine space:
/// h_ji = c for each rule X_j X_i -> q^c X_i X_j + (erased correction).
/// Throws NotOreTower.
IntMatrix quasipolynomial_matrix(const Presentation& p);

}  // namespace qma
