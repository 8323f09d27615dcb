#pragma once

#include "cmsba/symcore/multipoly.hpp"

namespace cmsba {

// Greatest common divisor over Q[vars], normalized monic (gcd(0, 0) = 0).
// Content/primitive-part recursion on the lowest-index variable with a
// subresultant pseudo-remainder sequence in that variable.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

// gcd of the coefficients of p viewed as a polynomial in s.
MultiPoly content_in(const MultiPoly& p, Symbol s);

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, in the variable s.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Symbol s);

}  // namespace cmsba
