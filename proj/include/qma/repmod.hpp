#pragma once

// Finite-dimensional right modules given by one matrix per generator, the
// module families of the rank-2 algebras, relation checking, intertwiners
// and isomorphism tests.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qma/linalg.hpp"
#include "qma/presentation.hpp"

namespace qma {

enum class Family { DDN1, DDN2, DDVerma, REAN1, REAN2, REAN3, REAVerma, Custom };

/// "dd-n1", "dd-n2", "dd-verma", "rea-n1", "rea-n2", "rea-n3", "rea-verma", "custom".
const char* family_name(Family f);
/// Throws BadFormat for an unknown name.
Family parse_family(std::string_view name);
bool is_dd_family(Family f);

/// Named scalar parameters in a fixed order (alpha, beta, gamma, lambda1,
/// lambda2, lambda3); absent ones are simply missing.
using ParamList = std::vector<std::pair<std::string, Scalar>>;

struct DDN1Params {
  Scalar alpha, beta, lambda1, lambda2;
};
struct DDN2Params {
  Scalar beta, gamma, lambda2;
};
struct DDVermaParams {
  Scalar lambda1, lambda2;
  int p = 1;
};
struct REAN1Params {
  Scalar beta, lambda1, lambda2, lambda3;
};
struct REAN2Params {
  Scalar alpha, lambda1, lambda2, lambda3;
};
/// lambda1, lambda2 play the roles of lambda1', lambda2'.
struct REAN3Params {
  Scalar lambda1, lambda2;
};
struct REAVermaParams {
  Scalar lambda1, lambda2;
  int p = 1;
};

/// Right module: vectors are rows and a word g1 g2 ... gk acts by
/// action[g1] * action[g2] * ... * action[gk].
struct Representation {
  std::shared_ptr<const Presentation> presentation;
  std::size_t dim = 0;
  std::vector<Matrix> action;
  std::vector<std::string> basis;
  Family family = Family::Custom;
  ParamList params;
  int p = 0;  // Verma truncation level, 0 when not applicable
  std::map<std::string, std::string> metadata;

  const FieldContext& field() const { return presentation->field(); }
  const Matrix& generator_matrix(std::string_view name) const;
};

/// Shared built-in presentations, cached per field.
std::shared_ptr<const Presentation> shared_dd2(const FieldContext& f);
std::shared_ptr<const Presentation> shared_rea2(const FieldContext& f);

Representation dd_simple_n1(const FieldContext& f, const DDN1Params& p);
Representation dd_simple_n2(const FieldContext& f, const DDN2Params& p);
Representation dd_verma_quotient(const FieldContext& f, const DDVermaParams& p);
Representation rea_n1(const FieldContext& f, const REAN1Params& p);
Representation rea_n2(const FieldContext& f, const REAN2Params& p);
Representation rea_n3(const FieldContext& f, const REAN3Params& p);
Representation rea_verma_quotient(const FieldContext& f, const REAVermaParams& p);

/// Dimension of the rea-n3 module: the least s in [1, n-1] with
/// lambda1 = q^(2s-2) lambda2, else n.
int rea_n3_length(const FieldContext& f, const Scalar& lambda1, const Scalar& lambda2);

/// Dispatches on family; looks up parameters by name (BadParams if one is
/// missing). `p` is used only by the Verma families.
Representation build_module(Family family, const FieldContext& f, const ParamList& params, int p);

/// Block direct sum; both must share a presentation.
Representation direct_sum(const Representation& a, const Representation& b);

/// Matrix of a word / of a polynomial.
Matrix word_matrix(const Representation& r, const Word& w);
Matrix poly_matrix(const Representation& r, const NCPoly& x);

/// Rules whose two sides act differently, formatted "lhs -> rhs".
std::vector<std::string> verify_relations(const Representation& r);

/// v * x under the right-module convention. Throws DimensionMismatch.
Vec act(const Representation& r, const NCPoly& x, const Vec& v);

/// Basis of {M : A1_g M = M A2_g for all g}, each M of size dim1 x dim2.
std::vector<Matrix> intertwiners(const Representation& a, const Representation& b);

/// True iff some intertwiner is invertible. Tries the basis and then
/// fixed-seed random integer combinations.
bool is_isomorphic(const Representation& a, const Representation& b, unsigned seed = 1);

/// Finite isomorphism criterion for the dd families, searching a, b in [0, m).
/// N1: alpha, beta equal, lambda1 = q^b lambda1', lambda2 = q^(b-a) lambda2'.
/// N2: beta, gamma equal, lambda2 = q^(a+b) lambda2'.
/// Verma: same p, lambda2 equal, lambda1 = q^(a+b) lambda1'.
bool dd_iso_param_check(Family family, const ParamList& a, const ParamList& b, int pa, int pb,
                        const FieldContext& f);

/// Looks up a named parameter; throws BadParams if absent.
const Scalar& param(const ParamList& params, std::string_view name);

}  // namespace qma
