#pragma once

// Exact evaluation of the parametrizing polynomials for elliptic curves with
// a rational 7-isogeny, heights, and (twist) minimality defects.
//
// A point t = a/b on the parameter line gives the integral model
//   y^2 = x^3 + A(a,b) x + B(a,b),
// with A = C*A0 and B = C*B0 for the homogeneous forms below, and
// C(a,b) = a^2 + ab + 7b^2 the common factor gcd(A, B).

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "isogeny7/util.hpp"

namespace isogeny7 {

struct GroomedPair {
  i64 a = 0;
  i64 b = 0;
  friend bool operator==(const GroomedPair&, const GroomedPair&) = default;
};

// gcd(a,b) = 1, b > 0, and (a,b) != (-7,1).
bool is_groomed(i64 a, i64 b);

struct WeierstrassPair {
  mpz_class A;
  mpz_class B;
  friend bool operator==(const WeierstrassPair&, const WeierstrassPair&) = default;
};

struct PrimeValuation {
  int ord_A = 0;
  int ord_B = 0;
  int v_twist = 0;  // floor(min(ord_A/2, ord_B/3))
  int v_min = 0;    // floor(min(ord_A/4, ord_B/6))
};

struct DefectReport {
  mpz_class mindefect;   // largest d with d^4 | A, d^6 | B
  mpz_class twistdefect; // largest e with e^2 | A, e^3 | B
  std::map<i64, PrimeValuation> per_prime;
};

// C(a,b) = a^2 + ab + 7b^2
i64 eval_C(i64 a, i64 b);
mpz_class eval_C_mpz(const mpz_class& a, const mpz_class& b);

// A0 = -3(a^2 - 231ab + 735b^2), B0 = 2(a^4 + 518a^3 b - 11025a^2 b^2
//                                        + 6174ab^3 - 64827b^4)
i128 eval_A0(i64 a, i64 b);
i128 eval_B0(i64 a, i64 b);

// (C*A0, C*B0), exact.
WeierstrassPair eval_AB(i64 a, i64 b);

// Coefficients of the 7-isogenous curve: C*A0', C*B0' with
// A0' = -3(a^2 + 9ab + 15b^2), B0' = 2(a^4 + 14a^3 b + 63a^2 b^2
//                                       + 126ab^3 + 189b^4).
WeierstrassPair eval_isogenous_AB(i64 a, i64 b);

// Atkin-Lehner map t -> -7t/(t+7) on parameter pairs: (a,b) -> (-7a, a+7b)
// in lowest terms with positive second entry. Throws std::domain_error when
// a + 7b = 0 (the image would be the cusp).
GroomedPair apply_w7(i64 a, i64 b);

// H(A,B) = max(|4A^3|, 27B^2)
mpz_class height_H(const WeierstrassPair& w);

// Valuation-by-valuation defect computation. Exact whenever every prime of
// the defect is <= 10^6 or the residual cofactor is a perfect prime power;
// inputs produced by eval_AB always satisfy this. Throws std::domain_error
// on (0,0) or when the factorization cannot be completed.
DefectReport twist_defect(const WeierstrassPair& w);

// (A/e^2, |B|/e^3) with e the twist minimality defect; throws
// std::domain_error when A*B = 0 (j = 0 or 1728, which never occurs on the
// 7-isogeny locus).
WeierstrassPair twist_minimal_model(const WeierstrassPair& w);

// H(A,B) / twistdefect^6, exact.
mpz_class twist_height(const WeierstrassPair& w);

// H(A,B) / mindefect^12, exact.
mpz_class height(const WeierstrassPair& w);

// j = 6912 A^3 / (4A^3 + 27B^2) in lowest terms.
mpq_class j_invariant(const WeierstrassPair& w);

// Twist minimal models for the two special j-invariants; excluded from the
// census (no curve with j = 0 or 1728 admits a 7-isogeny).
WeierstrassPair special_model_j0();     // y^2 = x^3 + 1, twist height 27
WeierstrassPair special_model_j1728(); // y^2 = x^3 + x, twist height 4

// Double-precision H(A(x,y), B(x,y)) for the area computations.
double eval_H_double(double x, double y);

}  // namespace isogeny7
