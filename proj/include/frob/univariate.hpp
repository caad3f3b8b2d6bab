#pragma once

// Dense univariate polynomials over F_{p^k}, coefficients low to high.

#include <vector>

#include "frob/ff.hpp"

namespace frob::uni {

using Poly = std::vector<Elem>;

void trim(Poly& a);
/// Degree, or -1 for the zero polynomial.
int degree(const Poly& a);
Poly add(const FieldCtx& f, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& f, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& f, const Poly& a, const Poly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const FieldCtx& f, const Poly& a, const Poly& b);
Poly derivative(const FieldCtx& f, const Poly& a);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const FieldCtx& f, Poly a, Poly b);
Poly monic(const FieldCtx& f, const Poly& a);
Elem eval(const FieldCtx& f, const Poly& a, Elem x);
/// Roots in the field with multiplicity, found by exhaustive search and deflation.
std::vector<Elem> roots(const FieldCtx& f, const Poly& a);

}  // namespace frob::uni
