#include "isogeny7/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isogeny7 {

bool is_groomed(i64 a, i64 b) {
  if (b <= 0) return false;
  if (std::gcd(a, b) != 1) return false;
  return !(a == -7 && b == 1);
}

i64 eval_C(i64 a, i64 b) { return a * a + a * b + 7 * b * b; }

mpz_class eval_C_mpz(const mpz_class& a, const mpz_class& b) {
  return a * a + a * b + 7 * b * b;
}

i128 eval_A0(i64 a, i64 b) {
  i128 aa = i128(a) * a, ab = i128(a) * b, bb = i128(b) * b;
  return -3 * (aa - 231 * ab + 735 * bb);
}

i128 eval_B0(i64 a, i64 b) {
  i128 aa = i128(a) * a, ab = i128(a) * b, bb = i128(b) * b;
  i128 a4 = aa * aa, a3b = aa * ab, a2b2 = aa * bb, ab3 = ab * bb, b4 = bb * bb;
  return 2 * (a4 + 518 * a3b - 11025 * a2b2 + 6174 * ab3 - 64827 * b4);
}

WeierstrassPair eval_AB(i64 a, i64 b) {
  mpz_class C = mpz_from_i128(eval_C(a, b));
  return {C * mpz_from_i128(eval_A0(a, b)), C * mpz_from_i128(eval_B0(a, b))};
}

WeierstrassPair eval_isogenous_AB(i64 a, i64 b) {
  i128 aa = i128(a) * a, ab = i128(a) * b, bb = i128(b) * b;
  i128 a0 = -3 * (aa + 9 * ab + 15 * bb);
  i128 a4 = aa * aa, a3b = aa * ab, a2b2 = aa * bb, ab3 = ab * bb, b4 = bb * bb;
  i128 b0 = 2 * (a4 + 14 * a3b + 63 * a2b2 + 126 * ab3 + 189 * b4);
  mpz_class C = mpz_from_i128(eval_C(a, b));
  return {C * mpz_from_i128(a0), C * mpz_from_i128(b0)};
}

GroomedPair apply_w7(i64 a, i64 b) {
  i64 num = -7 * a;
  i64 den = a + 7 * b;
  if (den == 0) throw std::domain_error("w7 image is the cusp (a + 7b = 0)");
  i64 g = std::gcd(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  } else {
    den = 1;  // a = b = 0 never happens for valid input; (0,b) -> 0/7b
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

mpz_class height_H(const WeierstrassPair& w) {
  mpz_class a3 = 4 * w.A * w.A * w.A;
  mpz_class b2 = 27 * w.B * w.B;
  a3 = abs(a3);
  return std::max(a3, b2);
}

namespace {

int mpz_ord(const mpz_class& n, i64 p) {
  if (n == 0) return 1 << 20;  // treated as infinite
  int v = 0;
  mpz_class q = n, r;
  while (true) {
    mpz_class quo;
    if (!mpz_divisible_ui_p(q.get_mpz_t(), u64(p))) break;
    mpz_divexact_ui(quo.get_mpz_t(), q.get_mpz_t(), u64(p));
    q = quo;
    ++v;
  }
  return v;
}

void account_prime(DefectReport& rep, const WeierstrassPair& w, i64 p) {
  if (rep.per_prime.count(p)) return;
  int va = mpz_ord(w.A, p);
  int vb = mpz_ord(w.B, p);
  PrimeValuation pv;
  pv.ord_A = va;
  pv.ord_B = vb;
  pv.v_twist = std::min(va / 2, vb / 3);
  pv.v_min = std::min(va / 4, vb / 6);
  if (pv.v_twist > 0 || pv.v_min > 0) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), u64(p), pv.v_twist);
    rep.twistdefect *= pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), u64(p), pv.v_min);
    rep.mindefect *= pw;
  }
  rep.per_prime[p] = pv;
}

}  // namespace

DefectReport twist_defect(const WeierstrassPair& w) {
  if (w.A == 0 && w.B == 0)
    throw std::domain_error("defect of (0,0) is undefined");
  DefectReport rep;
  rep.mindefect = 1;
  rep.twistdefect = 1;

  // Defect primes l satisfy l^2 | A and l^3 | B, hence l^3 | gcd(A^2, B).
  mpz_class g;
  if (w.A == 0) {
    g = abs(w.B);
  } else if (w.B == 0) {
    g = w.A * w.A;
  } else {
    mpz_class a2 = w.A * w.A;
    mpz_gcd(g.get_mpz_t(), a2.get_mpz_t(), w.B.get_mpz_t());
  }

  for (i64 p : {i64(2), i64(3), i64(7)}) {
    account_prime(rep, w, p);
    while (mpz_divisible_ui_p(g.get_mpz_t(), u64(p)))
      mpz_divexact_ui(g.get_mpz_t(), g.get_mpz_t(), u64(p));
  }
  // A defect prime l > 7 has l^3 | g, so the scan can stop at cbrt(g).
  mpz_class cbrt_g = 1;
  mpz_root(cbrt_g.get_mpz_t(), g.get_mpz_t(), 3);
  for (i64 p = 5; p <= 1000000 && g > 1 && cbrt_g >= p; p += 2) {
    if (p == 7) continue;
    if (!mpz_divisible_ui_p(g.get_mpz_t(), u64(p))) continue;
    int vg = 0;
    while (mpz_divisible_ui_p(g.get_mpz_t(), u64(p))) {
      mpz_divexact_ui(g.get_mpz_t(), g.get_mpz_t(), u64(p));
      ++vg;
    }
    if (vg >= 3) account_prime(rep, w, p);
    mpz_root(cbrt_g.get_mpz_t(), g.get_mpz_t(), 3);
  }
  if (cbrt_g <= 1000000) g = 1;  // no defect prime can remain
  if (g > 1) {
    // Any remaining defect prime l has l > 10^6 and l^3 | g. Peel perfect
    // powers; give up honestly if the cofactor is not a prime power.
    while (g > 1) {
      bool advanced = false;
      for (unsigned long k = 12; k >= 3; --k) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), g.get_mpz_t(), k) != 0 &&
            mpz_probab_prime_p(root.get_mpz_t(), 32) > 0) {
          if (root.fits_slong_p()) {
            account_prime(rep, w, root.get_si());
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), root.get_mpz_t(), k);
            g /= pw;
            advanced = true;
            break;
          }
        }
      }
      if (!advanced) {
        // Cube-full cofactor with >= 2 huge prime factors cannot occur for
        // coefficients coming from the parametrization.
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), g.get_mpz_t(), 3) != 0) {
          throw std::domain_error(
              "twist_defect: unfactored cube-full cofactor");
        }
        break;  // no cube divides the cofactor, so it carries no defect
      }
    }
  }
  return rep;
}

WeierstrassPair twist_minimal_model(const WeierstrassPair& w) {
  if (w.A == 0 || w.B == 0)
    throw std::domain_error("twist reduction requires A*B != 0");
  DefectReport rep = twist_defect(w);
  mpz_class e2 = rep.twistdefect * rep.twistdefect;
  mpz_class e3 = e2 * rep.twistdefect;
  WeierstrassPair out;
  out.A = w.A / e2;
  out.B = abs(w.B) / e3;
  return out;
}

mpz_class twist_height(const WeierstrassPair& w) {
  if (w.A == 0 || w.B == 0)
    throw std::domain_error("twist height requires A*B != 0");
  DefectReport rep = twist_defect(w);
  mpz_class e6;
  mpz_pow_ui(e6.get_mpz_t(), rep.twistdefect.get_mpz_t(), 6);
  return height_H(w) / e6;
}

mpz_class height(const WeierstrassPair& w) {
  if (w.A == 0 && w.B == 0) throw std::domain_error("height of (0,0)");
  DefectReport rep = twist_defect(w);
  mpz_class d12;
  mpz_pow_ui(d12.get_mpz_t(), rep.mindefect.get_mpz_t(), 12);
  return height_H(w) / d12;
}

mpq_class j_invariant(const WeierstrassPair& w) {
  mpz_class a3 = w.A * w.A * w.A;
  mpz_class disc = 4 * a3 + 27 * w.B * w.B;
  if (disc == 0) throw std::domain_error("singular model");
  mpq_class j(6912 * a3, disc);
  j.canonicalize();
  return j;
}

WeierstrassPair special_model_j0() { return {mpz_class(0), mpz_class(1)}; }
WeierstrassPair special_model_j1728() { return {mpz_class(1), mpz_class(0)}; }

double eval_H_double(double x, double y) {
  double c = x * x + x * y + 7 * y * y;
  double a0 = -3 * (x * x - 231 * x * y + 735 * y * y);
  double x2 = x * x, y2 = y * y;
  double b0 = 2 * (x2 * x2 + 518 * x2 * x * y - 11025 * x2 * y2 +
                   6174 * x * y2 * y - 64827 * y2 * y2);
  double A = c * a0, B = c * b0;
  return std::max(std::fabs(4 * A * A * A), 27 * B * B);
}

}  // namespace isogeny7
