#pragma once

// Multiplicative arithmetic functions attached to the parametrization:
// the congruence count T(e) = #{t mod e^3 : e^2 | f(t), e^3 | g(t)},
// its companion T~(e) = phi(e^3) T(e), the Euler-product constant Q with
// rigorous directed-rounding bounds, and shared prime/divisor utilities.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "isogeny7/util.hpp"

namespace isogeny7 {

// Closed form, multiplicative: T(3)=18, T(9)=27, T(3^v)=0 for v>=3;
// T(7)=50, T(49)=2402, T(7^v)=823544 for v>=3; T(l^v)=1+(l|3) otherwise.
u64 T(u64 e);

// Direct scan over t in Z/e^3. Cost grows as e^3; rejects e > 1000.
u64 T_brute(u64 e);

// phi(e^3) * T(e)
mpz_class T_tilde(u64 e);

// Simple monolithic sieve; memory O(limit). Used as the independent oracle
// for the segmented sieve.
std::vector<u64> primes_below_simple(u64 limit);

// Segmented sieve driver over [lo, hi], ascending order.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

// All primes p <= limit with p = 1 mod 3, ascending (segmented sieve).
std::vector<u64> primes_1mod3(u64 limit);

struct QInterval {
  double lower = 0;
  double upper = 0;
  u64 prime_bound = 0;
  bool certified_upper = false;  // the tail inequality assumes Y >= 8e9
  std::string lower_digits;      // directed decimal renderings
  std::string upper_digits;
};

// Q = (273/16) prod_{7 < p <= Y, p = 1 mod 3} (1 + 2/(p+1)^2), bounded below
// by the partial product and above via the explicit prime-counting tail
// inequality. All floating arithmetic is 128-bit MPFR with outward rounding.
// Rejects Y < 11.
QInterval Q_bounds(u64 Y, int threads = 1);

// Exact local Euler factor of Q at p, as a rational (closed tail sums).
// Matches 13/6 at p = 3 and 63/8 at p = 7.
mpq_class Q_local(u64 p);

// divisor utilities (trial division; inputs here are small)
int mobius(u64 n);
u64 euler_phi(u64 n);
int omega(u64 n);
u64 num_divisors(u64 n);
std::vector<std::pair<u64, int>> factorize(u64 n);

}  // namespace isogeny7
