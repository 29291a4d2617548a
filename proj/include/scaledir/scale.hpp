#pragma once

#include <vector>

#include "scaledir/matrix.hpp"

namespace scaledir {

// Coefficients c[0..n] of det(tI - M), low order first, c[n] = 1.  Computed
// by the Berkowitz recurrence: division-free, so valid in characteristic p
// where trace-based methods break down.
std::vector<FieldElement> char_poly(const MatrixK& m);

// S with s(M) = q^S, the product of |lambda| over eigenvalues of absolute
// value > 1 (counted with multiplicity).  Evaluated without factoring: for a
// monic polynomial over an ultrametric field, max_i |c_i| equals that
// product.  The elementary symmetric function of degree #{|lambda|>1} has a
// unique maximal term (every other same-degree product swaps in a root of
// absolute value <= 1), so the ultrametric sum attains it exactly, and every
// other coefficient is bounded by it.  Requires det(M) != 0.
long scale_exponent(const MatrixK& m);

// -v(det M): the Haar-module exponent of the linear map.  May be negative.
long module_exponent(const MatrixK& m);

// Equivalent to scale_exponent(m) > 0.
bool moves_to_infinity(const MatrixK& m);

// The matrix of x |-> g x g^-1 on the m^2-dimensional matrix space
// (row-major basis E_ij).
MatrixK ad_matrix(const MatrixK& g);

// Scale exponent of the inner automorphism x |-> g x g^-1.
long inner_scale_exponent(const MatrixK& g);

}  // namespace scaledir
