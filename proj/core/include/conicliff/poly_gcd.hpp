// Exact multivariate gcd via content-and-primitive-part recursion
// (primitive pseudo-remainder sequences), and the squarefree test built on it.
#pragma once

#include "conicliff/poly.hpp"

namespace conicliff {

// Monic-normalized gcd (leading graded-lex coefficient 1). gcd(0,0) = 0.
HomogeneousPoly poly_gcd(const HomogeneousPoly& f, const HomogeneousPoly& g);

// True iff gcd(f, df/dx_i for all i) is a nonzero constant. Throws on the
// zero polynomial. Over F_p the answer is reliable for deg f < p.
bool squarefree_check(const HomogeneousPoly& f);

}  // namespace conicliff
